#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "flatlat/morphism.hpp"
#include "flatlat/semilattice.hpp"

namespace flatlat {

/// Orders bitsets by cardinality, then by their ascending member lists.
bool cardinality_lex_less(const ElementSet& a, const ElementSet& b);

/// Least ideal (nonempty, hereditary, join-closed) containing `seed`.
ElementSet ideal_closure(const FiniteJoinSemilattice& s, ElementSet seed);

/// The lattice Id S of all ideals of a finite semilattice, under inclusion.
///
/// Ideals are enumerated as the closed sets of `ideal_closure`, sorted by
/// cardinality then member list. Construction asserts that the principal map
/// x ↦ (x] is a {∨,0}-isomorphism S → Id S.
class IdealLattice {
 public:
  explicit IdealLattice(const FiniteJoinSemilattice& base);

  const FiniteJoinSemilattice& base() const { return base_; }
  std::size_t size() const { return ideals_.size(); }
  const std::vector<ElementSet>& ideals() const { return ideals_; }
  const ElementSet& ideal(Index k) const { return ideals_[k]; }

  /// Index of (x].
  Index principal(Index x) const { return principal_.values()[x]; }
  /// The largest member of ideal k.
  Index generator(Index k) const { return generator_[k]; }
  /// The principal map as a morphism base → lattice().
  const JoinMorphism& principal_map() const { return principal_; }

  std::optional<Index> find(const ElementSet& members) const;
  bool includes(Index k, Index l) const { return ideals_[k].is_subset_of(ideals_[l]); }
  /// Index of the intersection of two ideals.
  Index intersection(Index k, Index l) const;

  /// Id S as a semilattice; join is the ideal generated by the union.
  const FiniteJoinSemilattice& lattice() const { return lattice_; }

 private:
  FiniteJoinSemilattice base_;
  std::vector<ElementSet> ideals_;
  std::unordered_map<ElementSet, Index> lookup_;
  std::vector<Index> generator_;
  FiniteJoinSemilattice lattice_;
  JoinMorphism principal_;
};

inline IdealLattice ideal_lattice(const FiniteJoinSemilattice& s) { return IdealLattice(s); }

}  // namespace flatlat
