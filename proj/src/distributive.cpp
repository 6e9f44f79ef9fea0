#include "flatlat/distributive.hpp"

#include "flatlat/error.hpp"

namespace flatlat {

const char* to_string(Pattern p) { return p == Pattern::M3 ? "M3" : "N5"; }

namespace {

bool incomparable(const FiniteJoinSemilattice& l, Index x, Index y) { return !l.leq(x, y) && !l.leq(y, x); }

}  // namespace

bool is_sublattice_copy(const FiniteJoinSemilattice& l, Pattern pattern, const Quintuple& q) {
  const auto [o, x, y, z, i] = q;
  for (Index e : q) {
    if (e >= l.size()) return false;
  }
  if (pattern == Pattern::M3) {
    const std::array<Index, 3> atoms{x, y, z};
    for (std::size_t k = 0; k < 3; ++k) {
      if (!l.less(o, atoms[k]) || !l.less(atoms[k], i)) return false;
      for (std::size_t m = k + 1; m < 3; ++m) {
        if (l.join(atoms[k], atoms[m]) != i || l.meet(atoms[k], atoms[m]) != o) return false;
        if (atoms[k] == atoms[m]) return false;
      }
    }
    return true;
  }
  return l.less(o, x) && l.less(x, z) && l.less(z, i) && l.less(o, y) && l.less(y, i) && l.join(x, y) == i &&
         l.join(z, y) == i && l.meet(x, y) == o && l.meet(z, y) == o;
}

std::optional<Quintuple> find_sublattice_copy(const FiniteJoinSemilattice& l, Pattern pattern) {
  const auto n = static_cast<Index>(l.size());
  std::optional<Quintuple> best;
  auto offer = [&](const Quintuple& q) {
    if (!best || q < *best) best = q;
  };
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      if (x == y || !incomparable(l, x, y)) continue;
      const Index o = l.meet(x, y);
      const Index i = l.join(x, y);
      for (Index z = 0; z < n; ++z) {
        if (pattern == Pattern::M3) {
          if (z == x || z == y) continue;
          if (l.meet(x, z) == o && l.meet(y, z) == o && l.join(x, z) == i && l.join(y, z) == i &&
              incomparable(l, x, z) && incomparable(l, y, z)) {
            offer({o, x, y, z, i});
          }
        } else {
          if (!l.less(x, z) || !incomparable(l, y, z)) continue;
          if (l.meet(z, y) == o && l.join(z, y) == i) offer({o, x, y, z, i});
        }
      }
    }
  }
  return best;
}

std::optional<RefinementFailure> first_refinement_failure(const FiniteJoinSemilattice& s) {
  const auto n = static_cast<Index>(s.size());
  for (Index a = 0; a < n; ++a) {
    for (Index b0 = 0; b0 < n; ++b0) {
      for (Index b1 = 0; b1 < n; ++b1) {
        if (!s.leq(a, s.join(b0, b1))) continue;
        bool refined = false;
        const ElementSet& below0 = s.down_set(b0);
        const ElementSet& below1 = s.down_set(b1);
        for (auto a0 = below0.find_first(); a0 != ElementSet::npos && !refined; a0 = below0.find_next(a0)) {
          for (auto a1 = below1.find_first(); a1 != ElementSet::npos; a1 = below1.find_next(a1)) {
            if (s.join(static_cast<Index>(a0), static_cast<Index>(a1)) == a) {
              refined = true;
              break;
            }
          }
        }
        if (!refined) return RefinementFailure{a, b0, b1};
      }
    }
  }
  return std::nullopt;
}

bool ideal_lattice_is_distributive(const IdealLattice& ideals) {
  const FiniteJoinSemilattice& l = ideals.lattice();
  const auto m = static_cast<Index>(ideals.size());
  for (Index x = 0; x < m; ++x) {
    for (Index y = 0; y < m; ++y) {
      for (Index z = y + 1; z < m; ++z) {
        const Index lhs = ideals.intersection(x, l.join(y, z));
        const Index rhs = l.join(ideals.intersection(x, y), ideals.intersection(x, z));
        if (lhs != rhs) return false;
      }
    }
  }
  return true;
}

DistributivityVerdict is_distributive(const FiniteJoinSemilattice& s) {
  const IdealLattice ideals(s);
  DistributivityVerdict verdict;
  verdict.failing_triple = first_refinement_failure(s);
  const bool by_refinement = !verdict.failing_triple.has_value();
  const bool by_ideal_law = ideal_lattice_is_distributive(ideals);

  if (auto copy = find_sublattice_copy(ideals.lattice(), Pattern::M3)) {
    verdict.forbidden_copy = ForbiddenCopy{Pattern::M3, *copy};
  } else if (auto pentagon = find_sublattice_copy(ideals.lattice(), Pattern::N5)) {
    verdict.forbidden_copy = ForbiddenCopy{Pattern::N5, *pentagon};
  }
  const bool by_forbidden = !verdict.forbidden_copy.has_value();

  if (by_refinement != by_ideal_law || by_ideal_law != by_forbidden) {
    throw Error(ErrorCode::InternalDisagreement,
                std::string("distributivity tests disagree: refinement=") + (by_refinement ? "yes" : "no") +
                    " ideal-law=" + (by_ideal_law ? "yes" : "no") +
                    " no-M3/N5=" + (by_forbidden ? "yes" : "no"));
  }
  verdict.distributive = by_refinement;
  return verdict;
}

}  // namespace flatlat
