#include "flatlat/flat.hpp"

#include <algorithm>

#include "flatlat/catalog.hpp"
#include "flatlat/error.hpp"
#include "flatlat/ideals.hpp"

namespace flatlat {

namespace {

std::uint64_t pack(const Triple& t) {
  return (std::uint64_t{t[0]} << 42) | (std::uint64_t{t[1]} << 21) | std::uint64_t{t[2]};
}

Triple componentwise_join(const FiniteJoinSemilattice& l, const Triple& u, const Triple& v) {
  return {l.join(u[0], v[0]), l.join(u[1], v[1]), l.join(u[2], v[2])};
}

bool componentwise_leq(const FiniteJoinSemilattice& l, const Triple& u, const Triple& v) {
  return l.leq(u[0], v[0]) && l.leq(u[1], v[1]) && l.leq(u[2], v[2]);
}

Index required(const std::optional<Index>& found, const char* what) {
  if (!found) throw Error(ErrorCode::InternalDisagreement, what);
  return *found;
}

Index label(const FiniteJoinSemilattice& s, std::string_view name) {
  return required(s.find(name), "fixed label missing");
}

// The three tensor products and maps shared by the flatness computations.
struct Witnesses {
  CanonicalIso alpha;
  CanonicalIso alpha_prime;
  CanonicalIso beta;
  JoinMorphism f;        // i ⊗ id_S
  JoinMorphism f_prime;  // i' ⊗ id_S
};

Witnesses build_witnesses(const FiniteJoinSemilattice& s, const SizeGuard& guard) {
  auto alpha = canonical_iso(CanonicalKind::Alpha, s, guard);
  auto alpha_prime = canonical_iso(CanonicalKind::AlphaPrime, s, guard);
  auto beta = canonical_iso(CanonicalKind::Beta, s, guard);
  const FixedEmbeddings fixed = fixed_embeddings();
  const JoinMorphism id = JoinMorphism::identity(s);
  JoinMorphism f = tensor_morphism(fixed.i, id, alpha.tensor, beta.tensor);
  JoinMorphism f_prime = tensor_morphism(fixed.i_prime, id, alpha_prime.tensor, beta.tensor);
  return Witnesses{std::move(alpha), std::move(alpha_prime), std::move(beta), std::move(f), std::move(f_prime)};
}

Counterexample extract_counterexample(const FiniteJoinSemilattice& s, const Witnesses& w) {
  Pattern pattern = Pattern::M3;
  auto copy = find_sublattice_copy(s, Pattern::M3);
  if (!copy) {
    pattern = Pattern::N5;
    copy = find_sublattice_copy(s, Pattern::N5);
  }
  if (!copy) throw Error(ErrorCode::IsDistributive, "semilattice contains no copy of M3 or N5");

  // The copy in S must also be a copy in Id S under s ↦ (s].
  const IdealLattice ideals(s);
  Quintuple in_ideals{};
  for (std::size_t k = 0; k < 5; ++k) in_ideals[k] = ideals.principal((*copy)[k]);
  if (!is_sublattice_copy(ideals.lattice(), pattern, in_ideals)) {
    throw Error(ErrorCode::InternalDisagreement, "principal ideals do not reproduce the forbidden copy");
  }

  const auto [o, x, y, z, i] = *copy;
  (void)o;
  const bool diamond = pattern == Pattern::M3;
  const Triple u{x, y, z};
  const Triple v = diamond ? Triple{i, i, i} : Triple{z, y, z};
  const CanonicalIso& iso = diamond ? w.alpha : w.alpha_prime;
  const JoinMorphism& f = diamond ? w.f : w.f_prime;

  const Index u_box = required(iso.box.find(u), "u is not a member of the box");
  const Index v_box = required(iso.box.find(v), "v is not a member of the box");
  const Index u_tensor = iso.inverse[u_box];
  const Index v_tensor = iso.inverse[v_box];
  if (u_tensor == v_tensor || f(u_tensor) != f(v_tensor)) {
    throw Error(ErrorCode::InternalDisagreement, "counterexample does not collapse");
  }
  return Counterexample{pattern,
                        *copy,
                        diamond ? "i" : "i'",
                        u,
                        v,
                        iso.tensor,
                        u_tensor,
                        v_tensor,
                        f(u_tensor),
                        w.beta.tensor.describe(f(u_tensor))};
}

}  // namespace

const char* to_string(BoxKind kind) {
  switch (kind) {
    case BoxKind::M3: return "M3";
    case BoxKind::N5: return "N5";
    case BoxKind::Cube: return "Cube";
  }
  return "?";
}

bool in_box(BoxKind kind, const FiniteJoinSemilattice& l, const Triple& t) {
  const auto [x, y, z] = t;
  switch (kind) {
    case BoxKind::M3: {
      const Index m = l.meet(x, y);
      return l.meet(x, z) == m && l.meet(y, z) == m;
    }
    case BoxKind::N5: return l.leq(l.meet(y, z), x) && l.leq(x, z);
    case BoxKind::Cube: return true;
  }
  return false;
}

std::optional<Index> TripleBox::find(const Triple& t) const {
  const auto it = lookup_.find(pack(t));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

TripleBox box(BoxKind kind, const FiniteJoinSemilattice& l, const SizeGuard& guard) {
  const std::size_t n = l.size();
  check_guard(n * n * n, guard.max_box_triples, "triple scan size");
  TripleBox result(kind, l);
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      for (Index z = 0; z < n; ++z) {
        const Triple t{x, y, z};
        if (in_box(kind, l, t)) {
          result.lookup_.emplace(pack(t), static_cast<Index>(result.members_.size()));
          result.members_.push_back(t);
        }
      }
    }
  }
  const std::size_t m = result.members_.size();
  check_guard(m, guard.max_tensor_elements, "box size");

  auto least_member_above = [&](const Triple& c) -> Index {
    if (auto direct = result.find(c)) return *direct;
    Triple candidate{l.top(), l.top(), l.top()};
    for (const Triple& t : result.members_) {
      if (componentwise_leq(l, c, t)) {
        candidate = {l.meet(candidate[0], t[0]), l.meet(candidate[1], t[1]), l.meet(candidate[2], t[2])};
      }
    }
    return required(result.find(candidate), "box is not closed under meets");
  };

  std::vector<std::string> names(m);
  std::vector<Index> table(m * m);
  for (Index k = 0; k < m; ++k) {
    const Triple& t = result.members_[k];
    names[k] = "<" + l.name(t[0]) + "," + l.name(t[1]) + "," + l.name(t[2]) + ">";
    for (Index j = k; j < m; ++j) {
      table[k * m + j] = table[j * m + k] =
          least_member_above(componentwise_join(l, t, result.members_[j]));
    }
  }
  result.lattice_ = FiniteJoinSemilattice::from_table(std::move(names), std::move(table), guard.max_tensor_elements);
  return result;
}

CanonicalIso canonical_iso(CanonicalKind kind, const FiniteJoinSemilattice& s, const SizeGuard& guard) {
  FiniteJoinSemilattice left = kind == CanonicalKind::Alpha        ? diamond_m3()
                               : kind == CanonicalKind::AlphaPrime ? pentagon_n5()
                                                                   : powerset(3);
  const BoxKind box_kind = kind == CanonicalKind::Alpha        ? BoxKind::M3
                           : kind == CanonicalKind::AlphaPrime ? BoxKind::N5
                                                               : BoxKind::Cube;

  // Join-irreducibles of the left factor, in the order of the triple slots.
  std::array<Index, 3> slots{};
  if (kind == CanonicalKind::Alpha) {
    slots = {label(left, "p"), label(left, "q"), label(left, "r")};
  } else if (kind == CanonicalKind::AlphaPrime) {
    slots = {label(left, "a"), label(left, "b"), label(left, "c")};
  } else {
    slots = {1, 2, 4};  // {0}, {1}, {2}
  }
  // Image of j ⊗ x for a join-irreducible j.
  auto generator_image = [&](Index j, Index x) -> Triple {
    if (kind == CanonicalKind::AlphaPrime && j == slots[0]) return {x, 0, x};
    Triple t{0, 0, 0};
    for (std::size_t k = 0; k < 3; ++k) {
      if (slots[k] == j) t[k] = x;
    }
    return t;
  };

  TensorSemilattice tensor = tensor_product(left, s, guard);
  TripleBox target = box(box_kind, s, guard);
  const FiniteJoinSemilattice& box_lattice = target.lattice();
  const std::vector<Index> irreducibles = join_irreducibles(left);

  std::vector<Index> map(tensor.size());
  for (Index e = 0; e < tensor.size(); ++e) {
    Index acc = 0;
    for (Index j : irreducibles) {
      for (Index x = 1; x < s.size(); ++x) {
        if (!tensor.element(e).test(tensor.grid().cell(j, x))) continue;
        acc = box_lattice.join(acc, required(target.find(generator_image(j, x)), "generator image outside the box"));
      }
    }
    // Section formula: slot k holds the largest x with ⟨j_k, x⟩ in the bi-ideal.
    Triple sections{0, 0, 0};
    for (std::size_t k = 0; k < 3; ++k) {
      for (Index x = 0; x < s.size(); ++x) {
        if (tensor.element(e).test(tensor.grid().cell(slots[k], x))) sections[k] = s.join(sections[k], x);
      }
    }
    if (target.member(acc) != sections) {
      throw Error(ErrorCode::InternalDisagreement, "generator extension disagrees with the section formula");
    }
    map[e] = acc;
  }

  JoinMorphism morphism(tensor.lattice(), box_lattice, map);
  if (tensor.size() != target.size() || !morphism.is_injective()) {
    throw Error(ErrorCode::NotBijective, "canonical map is not a bijection");
  }
  std::vector<Index> inverse(target.size());
  for (Index e = 0; e < map.size(); ++e) inverse[map[e]] = e;
  return CanonicalIso{kind, std::move(tensor), std::move(target), std::move(morphism), std::move(inverse)};
}

JoinMorphism projection_map(ProjectionKind kind, const TripleBox& source, const TripleBox& cube) {
  const BoxKind expected = kind == ProjectionKind::G ? BoxKind::M3 : BoxKind::N5;
  if (source.kind() != expected || cube.kind() != BoxKind::Cube || !(source.base() == cube.base())) {
    throw Error(ErrorCode::NotAHom, "projection map applied to the wrong boxes");
  }
  const FiniteJoinSemilattice& l = source.base();
  std::vector<Index> map(source.size());
  for (Index k = 0; k < source.size(); ++k) {
    const auto [x, y, z] = source.member(k);
    const Triple image = kind == ProjectionKind::G ? Triple{l.join(y, z), l.join(x, z), l.join(x, y)}
                                                   : Triple{z, y, l.join(x, y)};
    map[k] = required(cube.find(image), "projection image outside the cube");
  }
  return JoinMorphism(source.lattice(), cube.lattice(), std::move(map));
}

JoinMorphism projection_map(ProjectionKind kind, const FiniteJoinSemilattice& s, const SizeGuard& guard) {
  return projection_map(kind, box(kind == ProjectionKind::G ? BoxKind::M3 : BoxKind::N5, s, guard),
                        box(BoxKind::Cube, s, guard));
}

FixedEmbeddings fixed_embeddings() {
  const FiniteJoinSemilattice m3 = diamond_m3();
  const FiniteJoinSemilattice n5 = pentagon_n5();
  const FiniteJoinSemilattice pow3 = powerset(3);
  // Subsets of {0,1,2} as bitmasks.
  constexpr Index s02 = 0b101, s12 = 0b110, s01 = 0b011, s0 = 0b001, all = 0b111;

  std::vector<Index> i(m3.size());
  i[label(m3, "0")] = 0;
  i[label(m3, "p")] = s12;
  i[label(m3, "q")] = s02;
  i[label(m3, "r")] = s01;
  i[label(m3, "1")] = all;

  std::vector<Index> i_prime(n5.size());
  i_prime[label(n5, "0")] = 0;
  i_prime[label(n5, "a")] = s02;
  i_prime[label(n5, "b")] = s12;
  i_prime[label(n5, "c")] = s0;
  i_prime[label(n5, "1")] = all;

  FixedEmbeddings result{JoinMorphism(m3, pow3, std::move(i)), JoinMorphism(n5, pow3, std::move(i_prime))};
  if (!result.i.is_injective() || !result.i_prime.is_injective()) {
    throw Error(ErrorCode::InternalDisagreement, "fixed maps are not embeddings");
  }
  return result;
}

bool check_diagrams(const FiniteJoinSemilattice& s, const SizeGuard& guard) {
  const Witnesses w = build_witnesses(s, guard);
  const JoinMorphism g = projection_map(ProjectionKind::G, w.alpha.box, w.beta.box);
  const JoinMorphism g_prime = projection_map(ProjectionKind::GPrime, w.alpha_prime.box, w.beta.box);
  const JoinMorphism top = compose(w.beta.map, w.f);
  const JoinMorphism bottom = compose(g, w.alpha.map);
  const JoinMorphism top_prime = compose(w.beta.map, w.f_prime);
  const JoinMorphism bottom_prime = compose(g_prime, w.alpha_prime.map);
  return std::ranges::equal(top.values(), bottom.values()) &&
         std::ranges::equal(top_prime.values(), bottom_prime.values());
}

Counterexample counterexample(const FiniteJoinSemilattice& s, const SizeGuard& guard) {
  if (!find_sublattice_copy(s, Pattern::M3) && !find_sublattice_copy(s, Pattern::N5)) {
    throw Error(ErrorCode::IsDistributive, "semilattice contains no copy of M3 or N5");
  }
  return extract_counterexample(s, build_witnesses(s, guard));
}

FlatnessReport flatness(const FiniteJoinSemilattice& s, const SizeGuard& guard) {
  const DistributivityVerdict verdict = is_distributive(s);
  const Witnesses w = build_witnesses(s, guard);
  FlatnessReport report{s, verdict.distributive, w.f.is_injective(), w.f_prime.is_injective(), verdict.distributive,
                        std::nullopt};
  if (report.distributive != (report.witness_i_injective && report.witness_i_prime_injective)) {
    throw Error(ErrorCode::InternalDisagreement, "distributivity and witness injectivity disagree");
  }
  if (!report.verdict) report.counterexample = extract_counterexample(s, w);
  return report;
}

bool brute_force_flat(const FiniteJoinSemilattice& s, unsigned bound, const SizeGuard& guard) {
  std::vector<FiniteJoinSemilattice> lattices;
  for (unsigned n = 1; n <= bound; ++n) {
    auto level = enumerate_lattices(n, guard);
    lattices.insert(lattices.end(), level.begin(), level.end());
  }
  std::vector<TensorSemilattice> products;
  products.reserve(lattices.size());
  for (const auto& a : lattices) products.push_back(tensor_product(a, s, guard));

  const JoinMorphism id = JoinMorphism::identity(s);
  for (std::size_t ka = 0; ka < lattices.size(); ++ka) {
    for (std::size_t kb = 0; kb < lattices.size(); ++kb) {
      if (lattices[ka].size() > lattices[kb].size()) continue;
      for (const JoinMorphism& f : all_embeddings(lattices[ka], lattices[kb])) {
        if (!tensor_morphism(f, id, products[ka], products[kb]).is_injective()) return false;
      }
    }
  }
  const Witnesses w = build_witnesses(s, guard);
  return w.f.is_injective() && w.f_prime.is_injective();
}

}  // namespace flatlat
