#pragma once

#include <array>
#include <optional>
#include <string>

#include "flatlat/ideals.hpp"
#include "flatlat/semilattice.hpp"

namespace flatlat {

enum class Pattern { M3, N5 };

const char* to_string(Pattern p);

/// Five elements (o, x, y, z, i) spanning a sublattice copy of a pattern.
///
/// For M3: o < x, y, z < i, pairwise joins i, pairwise meets o.
/// For N5: o < x < z < i, o < y < i, x ∨ y = z ∨ y = i, x ∧ y = z ∧ y = o.
using Quintuple = std::array<Index, 5>;

/// Whether the five elements span a copy of `pattern` in the stated roles.
bool is_sublattice_copy(const FiniteJoinSemilattice& l, Pattern pattern, const Quintuple& q);

/// The lexicographically least copy of `pattern` in `l`, if any.
std::optional<Quintuple> find_sublattice_copy(const FiniteJoinSemilattice& l, Pattern pattern);

/// a ≤ b0 ∨ b1 with no a0 ≤ b0, a1 ≤ b1 such that a = a0 ∨ a1.
struct RefinementFailure {
  Index a = 0;
  Index b0 = 0;
  Index b1 = 0;
  friend bool operator==(const RefinementFailure&, const RefinementFailure&) = default;
};

/// A forbidden sublattice found in Id S, in ideal-lattice indices.
struct ForbiddenCopy {
  Pattern pattern = Pattern::M3;
  Quintuple ideals{};
};

struct DistributivityVerdict {
  bool distributive = true;
  /// Present iff not distributive; lexicographically first failing triple.
  std::optional<RefinementFailure> failing_triple;
  /// Present iff not distributive; M3 is reported in preference to N5.
  std::optional<ForbiddenCopy> forbidden_copy;
};

/// First failure of the refinement property, scanning (a, b0, b1) in
/// lexicographic order with an exhaustive search over a0 and a1.
std::optional<RefinementFailure> first_refinement_failure(const FiniteJoinSemilattice& s);

/// Whether x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z) for all ideals, with ∧ computed as
/// set intersection.
bool ideal_lattice_is_distributive(const IdealLattice& ideals);

/// Runs the refinement test, the ideal-lattice law and the forbidden
/// sublattice search; throws Error(InternalDisagreement) if they disagree.
DistributivityVerdict is_distributive(const FiniteJoinSemilattice& s);

}  // namespace flatlat
