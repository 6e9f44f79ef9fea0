#pragma once

#include <span>
#include <vector>

#include "flatlat/semilattice.hpp"

namespace flatlat {

/// A {∨,0}-homomorphism between finite semilattices, stored as its value table.
class JoinMorphism {
 public:
  /// Throws Error(NotAHom) unless `map` sends 0 to 0 and preserves all joins.
  JoinMorphism(FiniteJoinSemilattice dom, FiniteJoinSemilattice cod, std::vector<Index> map);

  static JoinMorphism identity(const FiniteJoinSemilattice& s);
  static JoinMorphism zero(const FiniteJoinSemilattice& dom, const FiniteJoinSemilattice& cod);

  const FiniteJoinSemilattice& dom() const { return dom_; }
  const FiniteJoinSemilattice& cod() const { return cod_; }
  Index operator()(Index x) const { return map_[x]; }
  std::span<const Index> values() const { return map_; }

  bool is_injective() const;
  /// First pair x < y (by index) with equal images, if any.
  std::optional<IndexPair> first_collision() const;

  friend bool operator==(const JoinMorphism& a, const JoinMorphism& b) {
    return a.map_ == b.map_ && a.dom_ == b.dom_ && a.cod_ == b.cod_;
  }

 private:
  FiniteJoinSemilattice dom_;
  FiniteJoinSemilattice cod_;
  std::vector<Index> map_;
};

/// `outer ∘ inner`; the codomain of `inner` must equal the domain of `outer`.
JoinMorphism compose(const JoinMorphism& outer, const JoinMorphism& inner);

/// All injective {∨,0}-homomorphisms a → b, ordered lexicographically by
/// their value tables. Candidates are assigned on join-irreducibles first.
std::vector<JoinMorphism> all_embeddings(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b);

/// Some order isomorphism a → b, if one exists.
std::optional<JoinMorphism> find_isomorphism(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b);

}  // namespace flatlat
