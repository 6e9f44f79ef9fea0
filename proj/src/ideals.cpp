#include "flatlat/ideals.hpp"

#include <algorithm>
#include <deque>

#include "flatlat/error.hpp"

namespace flatlat {

bool cardinality_lex_less(const ElementSet& a, const ElementSet& b) {
  const auto ca = a.count();
  const auto cb = b.count();
  if (ca != cb) return ca < cb;
  auto x = a.find_first();
  auto y = b.find_first();
  while (x != ElementSet::npos && y != ElementSet::npos) {
    if (x != y) return x < y;
    x = a.find_next(x);
    y = b.find_next(y);
  }
  return false;
}

ElementSet ideal_closure(const FiniteJoinSemilattice& s, ElementSet seed) {
  seed.set(0);
  for (;;) {
    ElementSet next = seed;
    for (auto x = seed.find_first(); x != ElementSet::npos; x = seed.find_next(x)) {
      next |= s.down_set(static_cast<Index>(x));
      for (auto y = seed.find_next(x); y != ElementSet::npos; y = seed.find_next(y)) {
        next.set(s.join(static_cast<Index>(x), static_cast<Index>(y)));
      }
    }
    if (next == seed) return seed;
    seed = std::move(next);
  }
}

namespace {

std::vector<ElementSet> enumerate_ideals(const FiniteJoinSemilattice& s) {
  const std::size_t n = s.size();
  std::vector<ElementSet> found{ideal_closure(s, ElementSet(n))};
  std::unordered_map<ElementSet, Index> seen{{found.front(), 0}};
  for (std::size_t k = 0; k < found.size(); ++k) {
    for (Index x = 0; x < n; ++x) {
      if (found[k].test(x)) continue;
      ElementSet grown = found[k];
      grown.set(x);
      grown = ideal_closure(s, std::move(grown));
      if (seen.emplace(grown, static_cast<Index>(found.size())).second) found.push_back(std::move(grown));
    }
  }
  std::sort(found.begin(), found.end(), cardinality_lex_less);
  return found;
}

std::unordered_map<ElementSet, Index> index_sets(const std::vector<ElementSet>& sets) {
  std::unordered_map<ElementSet, Index> lookup;
  for (Index k = 0; k < sets.size(); ++k) lookup.emplace(sets[k], k);
  return lookup;
}

std::vector<Index> generators(const FiniteJoinSemilattice& s, const std::vector<ElementSet>& ideals) {
  std::vector<Index> out;
  out.reserve(ideals.size());
  for (const auto& ideal : ideals) {
    Index top = 0;
    for (auto x = ideal.find_first(); x != ElementSet::npos; x = ideal.find_next(x)) {
      top = s.join(top, static_cast<Index>(x));
    }
    if (!ideal.test(top) || s.down_set(top) != ideal) {
      throw Error(ErrorCode::InternalDisagreement, "ideal of a finite semilattice is not principal");
    }
    out.push_back(top);
  }
  return out;
}

FiniteJoinSemilattice ideals_as_semilattice(const FiniteJoinSemilattice& s, const std::vector<ElementSet>& ideals,
                                            const std::unordered_map<ElementSet, Index>& lookup,
                                            const std::vector<Index>& generator) {
  const std::size_t m = ideals.size();
  std::vector<std::string> names(m);
  std::vector<Index> table(m * m);
  for (Index k = 0; k < m; ++k) {
    names[k] = "(" + s.name(generator[k]) + "]";
    for (Index l = k; l < m; ++l) {
      const ElementSet joined = ideal_closure(s, ideals[k] | ideals[l]);
      const auto it = lookup.find(joined);
      if (it == lookup.end()) throw Error(ErrorCode::InternalDisagreement, "ideal join left the ideal lattice");
      table[k * m + l] = table[l * m + k] = it->second;
    }
  }
  return FiniteJoinSemilattice::from_table(std::move(names), std::move(table), m);
}

JoinMorphism principal_morphism(const FiniteJoinSemilattice& s, const FiniteJoinSemilattice& lattice,
                                const std::unordered_map<ElementSet, Index>& lookup) {
  std::vector<Index> map(s.size());
  std::vector<bool> hit(lattice.size(), false);
  for (Index x = 0; x < s.size(); ++x) {
    const auto it = lookup.find(s.down_set(x));
    if (it == lookup.end()) throw Error(ErrorCode::InternalDisagreement, "principal ideal missing");
    map[x] = it->second;
    hit[it->second] = true;
  }
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
    throw Error(ErrorCode::InternalDisagreement, "principal map is not onto Id S");
  }
  return JoinMorphism(s, lattice, std::move(map));
}

}  // namespace

IdealLattice::IdealLattice(const FiniteJoinSemilattice& base)
    : base_(base),
      ideals_(enumerate_ideals(base)),
      lookup_(index_sets(ideals_)),
      generator_(generators(base, ideals_)),
      lattice_(ideals_as_semilattice(base, ideals_, lookup_, generator_)),
      principal_(principal_morphism(base, lattice_, lookup_)) {
  if (!principal_.is_injective()) throw Error(ErrorCode::InternalDisagreement, "principal map is not injective");
}

std::optional<Index> IdealLattice::find(const ElementSet& members) const {
  const auto it = lookup_.find(members);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Index IdealLattice::intersection(Index k, Index l) const {
  const auto found = find(ideals_[k] & ideals_[l]);
  if (!found) throw Error(ErrorCode::InternalDisagreement, "intersection of ideals is not an ideal");
  return *found;
}

}  // namespace flatlat
