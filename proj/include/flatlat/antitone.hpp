#pragma once

#include <memory>
#include <vector>

#include "flatlat/ideals.hpp"
#include "flatlat/tensor.hpp"

namespace flatlat {

/// A map ξ : A⁻ → Id B with ξ(a0 ∨ a1) = ξ(a0) ∩ ξ(a1).
///
/// Values are indices into `cod_ideals`; `value(a)` is defined for a ≥ 1.
class AntitoneHom {
 public:
  /// `values[k]` is ξ(k + 1). Throws Error(NotAHom) if joins are not sent to
  /// intersections.
  AntitoneHom(FiniteJoinSemilattice dom, std::shared_ptr<const IdealLattice> cod_ideals, std::vector<Index> values);

  const FiniteJoinSemilattice& dom() const { return dom_; }
  const IdealLattice& cod_ideals() const { return *ideals_; }
  Index value(Index a) const { return values_[a - 1]; }
  const ElementSet& section(Index a) const { return ideals_->ideal(value(a)); }
  const std::vector<Index>& values() const { return values_; }

  friend bool operator==(const AntitoneHom& x, const AntitoneHom& y) {
    return x.values_ == y.values_ && x.dom_ == y.dom_ && x.ideals_->base() == y.ideals_->base();
  }

 private:
  FiniteJoinSemilattice dom_;
  std::shared_ptr<const IdealLattice> ideals_;
  std::vector<Index> values_;
};

/// Pointwise inclusion ξ ≤ η.
bool pointwise_leq(const AntitoneHom& xi, const AntitoneHom& eta);

/// ε(ξ) = {⟨a, b⟩ ∈ A⁻ × B⁻ : b ∈ ξ(a)} ∪ ∇.
BiIdeal epsilon(const AntitoneHom& xi);

/// ε⁻¹(H)(a) = {b : ⟨a, b⟩ ∈ H}. Every section is checked to be an ideal.
AntitoneHom epsilon_inv(const BiIdeal& h, std::shared_ptr<const IdealLattice> right_ideals);
AntitoneHom epsilon_inv(const BiIdeal& h);

/// Assigns ideals to the join-irreducibles of A, extends by
/// ξ(x) = ∩{ξ(p) : p ∈ J(A), p ≤ x}, and keeps the assignments satisfying
/// the hom law. Ordered lexicographically by the J(A) assignment.
std::vector<AntitoneHom> enumerate_antitone_homs(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b,
                                                 const SizeGuard& guard = {});

}  // namespace flatlat
