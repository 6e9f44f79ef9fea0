#include "flatlat/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <set>
#include <thread>

#include "flatlat/antitone.hpp"
#include "flatlat/error.hpp"
#include "flatlat/flat.hpp"
#include "flatlat/tensor.hpp"

namespace flatlat {

namespace {

using Code = std::vector<std::uint8_t>;

std::vector<ElementSet> down_sets_of(const std::vector<ElementSet>& up) {
  const std::size_t n = up.size();
  std::vector<ElementSet> down(n, ElementSet(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (auto y = up[x].find_first(); y != ElementSet::npos; y = up[x].find_next(y)) down[y].set(x);
  }
  return down;
}

bool has_all_joins(const std::vector<ElementSet>& up) {
  const std::size_t n = up.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      const ElementSet bounds = up[x] & up[y];
      bool found = false;
      for (auto u = bounds.find_first(); u != ElementSet::npos && !found; u = bounds.find_next(u)) {
        found = up[u] == bounds;
      }
      if (!found) return false;
    }
  }
  return true;
}

// Adds a new bottom (index 0) and top (index m + 1) around a poset of size m.
std::vector<ElementSet> bounded(const std::vector<ElementSet>& inner) {
  const std::size_t m = inner.size();
  const std::size_t n = m + 2;
  std::vector<ElementSet> up(n, ElementSet(n));
  up[0].set();
  for (std::size_t x = 0; x < m; ++x) {
    up[x + 1].set(x + 1);
    up[x + 1].set(n - 1);
    for (auto y = inner[x].find_first(); y != ElementSet::npos; y = inner[x].find_next(y)) up[x + 1].set(y + 1);
  }
  up[n - 1].set(n - 1);
  return up;
}

std::vector<CanonicalForm> sorted_forms(const std::set<Code>& codes, std::size_t n) {
  std::vector<CanonicalForm> out;
  for (const auto& code : codes) out.push_back({n, code});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CanonicalForm> trivial_classes(unsigned n) {
  std::vector<ElementSet> up(n, ElementSet(n));
  for (unsigned x = 0; x < n; ++x) {
    for (unsigned y = x; y < n; ++y) up[x].set(y);
  }
  return {CanonicalForm{n, canonical_order_code(up)}};
}

}  // namespace

Code canonical_order_code(const std::vector<ElementSet>& up) {
  const std::size_t n = up.size();
  const std::vector<ElementSet> down = down_sets_of(up);
  std::optional<Code> best;
  Code code;
  std::vector<std::size_t> order;
  ElementSet placed(n);

  // Chunk k lists, for each already placed element, whether it lies below
  // the k-th element. Only candidates with the least chunk can start the
  // least code, so ties are the only branches explored.
  std::function<void()> extend = [&]() {
    if (order.size() == n) {
      if (!best || code < *best) best = code;
      return;
    }
    std::vector<std::pair<Code, std::size_t>> options;
    for (std::size_t x = 0; x < n; ++x) {
      if (placed.test(x)) continue;
      ElementSet strictly_below = down[x];
      strictly_below.reset(x);
      if (!strictly_below.is_subset_of(placed)) continue;
      Code chunk(order.size());
      for (std::size_t i = 0; i < order.size(); ++i) chunk[i] = up[order[i]].test(x) ? 1 : 0;
      options.emplace_back(std::move(chunk), x);
    }
    const Code least = std::min_element(options.begin(), options.end())->first;
    for (const auto& [chunk, x] : options) {
      if (chunk != least) continue;
      const std::size_t mark = code.size();
      code.insert(code.end(), chunk.begin(), chunk.end());
      const bool hopeless =
          best && std::lexicographical_compare(best->begin(), best->begin() + static_cast<std::ptrdiff_t>(code.size()),
                                               code.begin(), code.end());
      if (!hopeless) {
        order.push_back(x);
        placed.set(x);
        extend();
        placed.reset(x);
        order.pop_back();
      }
      code.resize(mark);
    }
  };
  extend();
  return best.value_or(Code{});
}

CanonicalForm canonical_form(const FiniteJoinSemilattice& s, const SizeGuard& guard) {
  check_guard(s.size(), guard.max_canonical_size, "canonical form size");
  std::vector<ElementSet> up;
  for (Index x = 0; x < s.size(); ++x) up.push_back(s.up_set(x));
  return {s.size(), canonical_order_code(up)};
}

bool is_isomorphic(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b) {
  if (a.size() != b.size()) return false;
  const SizeGuard guard;
  if (a.size() <= guard.max_canonical_size) return canonical_form(a, guard) == canonical_form(b, guard);
  return find_isomorphism(a, b).has_value();
}

FiniteJoinSemilattice lattice_from_canonical(const CanonicalForm& form) {
  const std::size_t n = form.size;
  std::vector<std::string> names(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (k == 0) {
      names[k] = "0";
    } else if (k + 1 == n) {
      names[k] = "1";
    } else {
      names[k] = std::string(1, static_cast<char>('a' + (k - 1) % 26));
      if (k > 26) names[k] += std::to_string((k - 1) / 26);
    }
  }
  std::vector<std::pair<std::string, std::string>> relation;
  std::size_t pos = 0;
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i < k; ++i) {
      if (form.encoding.at(pos++)) relation.emplace_back(names[i], names[k]);
    }
  }
  SizeGuard guard;
  guard.max_size = std::max(guard.max_size, n);
  return from_covers(names, relation, guard);
}

std::vector<CanonicalForm> lattice_classes_by_growth(unsigned n) {
  if (n <= 2) return n == 0 ? std::vector<CanonicalForm>{} : trivial_classes(n);
  const unsigned m = n - 2;
  // Unlabeled posets of the current size, each stored by its up-sets.
  std::vector<std::vector<ElementSet>> level{{}};
  for (unsigned k = 0; k < m; ++k) {
    std::set<Code> seen;
    std::vector<std::vector<ElementSet>> next;
    for (const auto& poset : level) {
      const std::vector<ElementSet> down = down_sets_of(poset);
      for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        ElementSet below(k, mask);
        bool down_closed = true;
        for (auto x = below.find_first(); x != ElementSet::npos && down_closed; x = below.find_next(x)) {
          down_closed = down[x].is_subset_of(below);
        }
        if (!down_closed) continue;
        std::vector<ElementSet> grown = poset;
        for (auto& row : grown) row.resize(k + 1);
        grown.emplace_back(k + 1);
        grown[k].set(k);
        for (auto x = below.find_first(); x != ElementSet::npos; x = below.find_next(x)) grown[x].set(k);
        if (seen.insert(canonical_order_code(grown)).second) next.push_back(std::move(grown));
      }
    }
    level = std::move(next);
  }
  std::set<Code> lattices;
  for (const auto& poset : level) {
    const std::vector<ElementSet> up = bounded(poset);
    if (has_all_joins(up)) lattices.insert(canonical_order_code(up));
  }
  return sorted_forms(lattices, n);
}

std::vector<CanonicalForm> lattice_classes_by_relations(unsigned n) {
  if (n <= 2) return n == 0 ? std::vector<CanonicalForm>{} : trivial_classes(n);
  const unsigned m = n - 2;
  std::vector<std::pair<unsigned, unsigned>> slots;
  for (unsigned i = 0; i < m; ++i) {
    for (unsigned j = i + 1; j < m; ++j) slots.emplace_back(i, j);
  }
  std::set<Code> lattices;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<ElementSet> inner(m, ElementSet(m));
    for (unsigned i = 0; i < m; ++i) inner[i].set(i);
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if (mask & (std::uint64_t{1} << k)) inner[slots[k].first].set(slots[k].second);
    }
    bool transitive = true;
    for (unsigned i = 0; i < m && transitive; ++i) {
      for (auto j = inner[i].find_first(); j != ElementSet::npos && transitive; j = inner[i].find_next(j)) {
        transitive = inner[j].is_subset_of(inner[i]);
      }
    }
    if (!transitive) continue;
    const std::vector<ElementSet> up = bounded(inner);
    if (has_all_joins(up)) lattices.insert(canonical_order_code(up));
  }
  return sorted_forms(lattices, n);
}

std::vector<FiniteJoinSemilattice> enumerate_lattices(unsigned n, const SizeGuard& guard) {
  check_guard(n, guard.max_catalog_size, "catalog size");
  const auto grown = lattice_classes_by_growth(n);
  const auto scanned = lattice_classes_by_relations(n);
  if (grown != scanned) {
    throw Error(ErrorCode::InternalDisagreement, "lattice enumeration passes disagree at size " + std::to_string(n) +
                                                     ": " + std::to_string(grown.size()) + " vs " +
                                                     std::to_string(scanned.size()));
  }
  std::vector<FiniteJoinSemilattice> out;
  for (const auto& form : grown) out.push_back(lattice_from_canonical(form));
  return out;
}

namespace {

bool check_epsilon_bijection(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& s, const SizeGuard& guard) {
  const TensorSemilattice t = tensor_product(a, s, guard);
  const std::vector<AntitoneHom> homs = enumerate_antitone_homs(a, s, guard);
  if (homs.size() != t.size()) return false;
  std::vector<Index> image;
  std::vector<bool> hit(t.size(), false);
  for (const AntitoneHom& xi : homs) {
    const BiIdeal h = epsilon(xi);
    const auto found = t.find(h.cells());
    if (!found || hit[*found]) return false;
    hit[*found] = true;
    image.push_back(*found);
    if (!(epsilon_inv(h, std::make_shared<const IdealLattice>(xi.cod_ideals())) == xi)) return false;
  }
  for (std::size_t k = 0; k < homs.size(); ++k) {
    for (std::size_t l = 0; l < homs.size(); ++l) {
      const bool pointwise = pointwise_leq(homs[k], homs[l]);
      const bool inclusion = t.element(image[k]).is_subset_of(t.element(image[l]));
      if (pointwise != inclusion) return false;
    }
  }
  return true;
}

StructureCheck check_structure(const std::string& id, const FiniteJoinSemilattice& s,
                               const std::vector<FiniteJoinSemilattice>& small, const SizeGuard& guard,
                               std::vector<std::string>& failures) {
  const auto start = std::chrono::steady_clock::now();
  StructureCheck c;
  c.id = id;
  c.size = s.size();
  for (const auto& [lo, hi] : s.covers()) c.covers.emplace_back(s.name(lo), s.name(hi));
  auto fail = [&](const std::string& what) { failures.push_back(id + ": " + what); };
  try {
    const FlatnessReport report = flatness(s, guard);
    c.distributive = report.distributive;
    c.witness_i_injective = report.witness_i_injective;
    c.witness_i_prime_injective = report.witness_i_prime_injective;
    c.diagrams_commute = check_diagrams(s, guard);
    c.power_law = true;
    for (unsigned k = 1; k <= 3; ++k) {
      const auto expected = static_cast<std::size_t>(std::pow(static_cast<double>(s.size()), k));
      if (tensor_product(powerset(k), s, guard).size() != expected) c.power_law = false;
    }
    c.epsilon_bijection = true;
    for (const auto& a : small) {
      if (!check_epsilon_bijection(a, s, guard)) c.epsilon_bijection = false;
    }
    c.brute_force_flat = brute_force_flat(s, 4, guard);

    if (c.distributive != (c.witness_i_injective && c.witness_i_prime_injective)) {
      fail("distributivity disagrees with witness injectivity");
    }
    if (c.distributive != c.brute_force_flat) fail("distributivity disagrees with the embedding sweep");
    if (!c.diagrams_commute) fail("diagrams do not commute");
    if (!c.power_law) fail("|Pow(k) ⊗ S| differs from |S|^k");
    if (!c.epsilon_bijection) fail("epsilon is not an order-preserving bijection");
  } catch (const Error& e) {
    fail(std::string(to_string(e.code())) + ": " + e.what());
  }
  c.milliseconds = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return c;
}

}  // namespace

VerificationReport verify_theorem(unsigned max_n, unsigned jobs, const SizeGuard& guard) {
  check_guard(max_n, guard.max_verify_size, "verification size");
  VerificationReport report;
  report.max_n = max_n;

  // Left factors for the ε bijection check.
  std::vector<FiniteJoinSemilattice> small;
  for (unsigned n = 1; n <= 3; ++n) {
    for (auto& l : enumerate_lattices(n, guard)) small.push_back(std::move(l));
  }

  std::vector<std::pair<std::string, FiniteJoinSemilattice>> work;
  for (unsigned n = 1; n <= max_n; ++n) {
    const auto level = enumerate_lattices(n, guard);
    report.class_counts.push_back(level.size());
    for (std::size_t k = 0; k < level.size(); ++k) {
      work.emplace_back("n" + std::to_string(n) + "#" + std::to_string(k), level[k]);
    }
  }

  std::vector<StructureCheck> checks(work.size());
  std::vector<std::vector<std::string>> failures(work.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < work.size(); k = next++) {
      checks[k] = check_structure(work[k].first, work[k].second, small, guard, failures[k]);
    }
  };
  const unsigned threads = std::max(1u, jobs);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  report.structures = std::move(checks);
  report.structures_checked = report.structures.size();
  for (auto& f : failures) {
    report.equivalence_failures.insert(report.equivalence_failures.end(), f.begin(), f.end());
  }
  return report;
}

}  // namespace flatlat
