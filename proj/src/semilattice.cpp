#include "flatlat/semilattice.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "flatlat/error.hpp"

namespace flatlat {

namespace {

constexpr std::size_t kMeetTableLimit = 256;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidTable, what); }

}  // namespace

FiniteJoinSemilattice FiniteJoinSemilattice::from_table(std::vector<std::string> names,
                                                        std::vector<Index> join,
                                                        std::size_t size_limit) {
  const std::size_t n = names.size();
  if (n == 0) invalid("semilattice must have at least one element");
  check_guard(n, size_limit, "semilattice size");
  if (join.size() != n * n) invalid("join table has wrong dimensions");
  {
    std::unordered_set<std::string> seen;
    for (const auto& label : names) {
      if (!seen.insert(label).second) throw Error(ErrorCode::DuplicateLabel, "duplicate label '" + label + "'");
    }
  }
  auto at = [&](std::size_t x, std::size_t y) { return join[x * n + y]; };
  for (Index v : join) {
    if (v >= n) invalid("join table entry out of range");
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (at(x, x) != x) invalid("join is not idempotent at " + names[x]);
    if (at(0, x) != x) invalid("element 0 is not the least element");
    for (std::size_t y = x + 1; y < n; ++y) {
      if (at(x, y) != at(y, x)) invalid("join is not commutative at " + names[x] + ", " + names[y]);
    }
  }

  auto impl = std::make_shared<Impl>();
  impl->down.assign(n, ElementSet(n));
  impl->up.assign(n, ElementSet(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (at(x, y) == y) {
        impl->up[x].set(y);
        impl->down[y].set(x);
      }
    }
  }
  // ≤ must be transitive, and join(x, y) must be the least upper bound. With
  // idempotence and commutativity this is equivalent to associativity.
  for (std::size_t x = 0; x < n; ++x) {
    for (auto y = impl->up[x].find_first(); y != ElementSet::npos; y = impl->up[x].find_next(y)) {
      if (!impl->up[y].is_subset_of(impl->up[x])) invalid("derived order is not transitive");
    }
    for (std::size_t y = x + 1; y < n; ++y) {
      const Index j = at(x, y);
      if ((impl->up[x] & impl->up[y]) != impl->up[j]) {
        invalid("join is not associative (no least upper bound for " + names[x] + ", " + names[y] + ")");
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (impl->up[x].count() == 1) impl->top = static_cast<Index>(x);
  }

  impl->lower_covers.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (auto y = impl->up[x].find_first(); y != ElementSet::npos; y = impl->up[x].find_next(y)) {
      if (y != x && (impl->up[x] & impl->down[y]).count() == 2) {
        impl->covers.emplace_back(static_cast<Index>(x), static_cast<Index>(y));
        impl->lower_covers[y].push_back(static_cast<Index>(x));
      }
    }
  }
  std::sort(impl->covers.begin(), impl->covers.end());
  for (auto& lc : impl->lower_covers) std::sort(lc.begin(), lc.end());

  impl->names = std::move(names);
  impl->join = std::move(join);
  FiniteJoinSemilattice result(impl);
  if (n <= kMeetTableLimit) {
    impl->meet.resize(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x; y < n; ++y) {
        const Index m = result.compute_meet(static_cast<Index>(x), static_cast<Index>(y));
        impl->meet[x * n + y] = m;
        impl->meet[y * n + x] = m;
      }
    }
  }
  return result;
}

Index FiniteJoinSemilattice::compute_meet(Index x, Index y) const {
  const ElementSet common = impl_->down[x] & impl_->down[y];
  Index m = 0;
  for (auto z = common.find_first(); z != ElementSet::npos; z = common.find_next(z)) {
    m = join(m, static_cast<Index>(z));
  }
  return m;
}

Index FiniteJoinSemilattice::meet(Index x, Index y) const {
  if (!impl_->meet.empty()) return impl_->meet[x * size() + y];
  return compute_meet(x, y);
}

Index FiniteJoinSemilattice::join_all(std::span<const Index> xs) const {
  Index acc = 0;
  for (Index x : xs) acc = join(acc, x);
  return acc;
}

std::optional<Index> FiniteJoinSemilattice::find(std::string_view label) const {
  const auto& ns = impl_->names;
  auto it = std::find(ns.begin(), ns.end(), label);
  if (it == ns.end()) return std::nullopt;
  return static_cast<Index>(it - ns.begin());
}

bool operator==(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b) {
  if (a.impl_ == b.impl_) return true;
  return a.impl_->names == b.impl_->names && a.impl_->join == b.impl_->join;
}

FiniteJoinSemilattice from_covers(const std::vector<std::string>& names,
                                  const std::vector<std::pair<std::string, std::string>>& covers,
                                  const SizeGuard& guard) {
  const std::size_t n = names.size();
  if (n == 0) throw Error(ErrorCode::NoLeastElement, "no elements declared");
  check_guard(n, guard.max_size, "semilattice size");

  std::unordered_map<std::string, std::size_t> index_of;
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_of.emplace(names[i], i).second) {
      throw Error(ErrorCode::DuplicateLabel, "duplicate label '" + names[i] + "'");
    }
  }
  auto lookup = [&](const std::string& label) {
    auto it = index_of.find(label);
    if (it == index_of.end()) throw Error(ErrorCode::UnknownLabel, "undeclared label '" + label + "'");
    return it->second;
  };

  std::vector<ElementSet> up(n, ElementSet(n));
  for (std::size_t i = 0; i < n; ++i) up[i].set(i);
  for (const auto& [lo, hi] : covers) up[lookup(lo)].set(lookup(hi));
  // Warshall on bit rows.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (up[i].test(k)) up[i] |= up[k];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (up[i].test(j) && up[j].test(i)) {
        throw Error(ErrorCode::CycleDetected, "cycle through '" + names[i] + "' and '" + names[j] + "'");
      }
    }
  }

  std::optional<std::size_t> least;
  for (std::size_t i = 0; i < n; ++i) {
    if (up[i].all()) least = i;
  }
  if (!least) throw Error(ErrorCode::NoLeastElement, "no least element");

  std::vector<std::size_t> join(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      const ElementSet bounds = up[x] & up[y];
      std::optional<std::size_t> lub;
      for (auto u = bounds.find_first(); u != ElementSet::npos; u = bounds.find_next(u)) {
        if (up[u] == bounds) {
          lub = u;
          break;
        }
      }
      if (!lub) {
        throw Error(ErrorCode::JoinMissing,
                    "elements '" + names[x] + "' and '" + names[y] + "' have no least upper bound");
      }
      join[x * n + y] = join[y * n + x] = *lub;
    }
  }

  // New order: least element first, then declaration order.
  std::vector<std::size_t> order{*least};
  for (std::size_t i = 0; i < n; ++i) {
    if (i != *least) order.push_back(i);
  }
  std::vector<Index> position(n);
  for (std::size_t k = 0; k < n; ++k) position[order[k]] = static_cast<Index>(k);

  std::vector<std::string> relabeled(n);
  std::vector<Index> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    relabeled[a] = names[order[a]];
    for (std::size_t b = 0; b < n; ++b) {
      table[a * n + b] = position[join[order[a] * n + order[b]]];
    }
  }
  return FiniteJoinSemilattice::from_table(std::move(relabeled), std::move(table), guard.max_size);
}

FiniteJoinSemilattice diamond_m3() {
  return from_covers({"0", "p", "q", "r", "1"},
                     {{"0", "p"}, {"0", "q"}, {"0", "r"}, {"p", "1"}, {"q", "1"}, {"r", "1"}});
}

FiniteJoinSemilattice pentagon_n5() {
  return from_covers({"0", "a", "b", "c", "1"},
                     {{"0", "b"}, {"0", "c"}, {"c", "a"}, {"a", "1"}, {"b", "1"}});
}

FiniteJoinSemilattice powerset(unsigned n, const SizeGuard& guard) {
  if (n >= 31) check_guard(std::size_t{1} << 31, guard.max_size, "powerset size");
  const std::size_t size = std::size_t{1} << n;
  check_guard(size, guard.max_size, "powerset size");
  std::vector<std::string> names(size);
  std::vector<Index> table(size * size);
  for (std::size_t mask = 0; mask < size; ++mask) {
    std::string label = "{";
    for (unsigned bit = 0; bit < n; ++bit) {
      if (mask & (std::size_t{1} << bit)) {
        if (label.size() > 1) label += ',';
        label += std::to_string(bit);
      }
    }
    names[mask] = label + "}";
    for (std::size_t other = 0; other < size; ++other) table[mask * size + other] = static_cast<Index>(mask | other);
  }
  return FiniteJoinSemilattice::from_table(std::move(names), std::move(table), guard.max_size);
}

FiniteJoinSemilattice chain(unsigned n, const SizeGuard& guard) {
  if (n == 0) throw Error(ErrorCode::UnknownBuiltin, "Chain(n) needs n >= 1");
  check_guard(n, guard.max_size, "chain size");
  std::vector<std::string> names(n);
  std::vector<Index> table(std::size_t{n} * n);
  for (Index x = 0; x < n; ++x) {
    names[x] = std::to_string(x);
    for (Index y = 0; y < n; ++y) table[x * n + y] = std::max(x, y);
  }
  return FiniteJoinSemilattice::from_table(std::move(names), std::move(table), guard.max_size);
}

FiniteJoinSemilattice builtin(std::string_view name, const SizeGuard& guard) {
  if (name == "M3") return diamond_m3();
  if (name == "N5") return pentagon_n5();
  auto parametrized = [&](std::string_view prefix) -> std::optional<unsigned> {
    if (!name.starts_with(prefix) || !name.ends_with(")")) return std::nullopt;
    const std::string_view digits = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
    return value;
  };
  if (auto n = parametrized("Pow(")) return powerset(*n, guard);
  if (auto n = parametrized("Chain(")) return chain(*n, guard);
  throw Error(ErrorCode::UnknownBuiltin, "unknown builtin '" + std::string(name) + "'");
}

std::vector<Index> join_irreducibles(const FiniteJoinSemilattice& s) {
  std::vector<Index> result;
  for (Index x = 1; x < s.size(); ++x) {
    Index below = 0;
    const ElementSet& down = s.down_set(x);
    for (auto y = down.find_first(); y != ElementSet::npos; y = down.find_next(y)) {
      if (y != x) below = s.join(below, static_cast<Index>(y));
    }
    if (below != x) result.push_back(x);
  }
  return result;
}

}  // namespace flatlat
