#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "flatlat/semilattice.hpp"

namespace flatlat {

/// Isomorphism invariant of a finite order.
///
/// The encoding is the lexicographically least upper triangle of the order
/// matrix over all labelings that are linear extensions (so index 0 is always
/// the least element). Equal encodings ⇔ isomorphic orders.
struct CanonicalForm {
  std::size_t size = 0;
  std::vector<std::uint8_t> encoding;

  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

/// Canonical code of an arbitrary finite order given by its up-sets
/// (`up[x]` holds every y ≥ x, including x).
std::vector<std::uint8_t> canonical_order_code(const std::vector<ElementSet>& up);

/// Throws Error(SizeGuardExceeded) above `guard.max_canonical_size`.
CanonicalForm canonical_form(const FiniteJoinSemilattice& s, const SizeGuard& guard = {});

/// The lattice whose canonical labeling produced `form`. Labels are "0" for
/// the bottom, "1" for the top and letters in between.
FiniteJoinSemilattice lattice_from_canonical(const CanonicalForm& form);

/// All n-element lattices up to isomorphism, sorted by canonical form.
///
/// Runs both generation passes below and throws Error(InternalDisagreement)
/// if they produce different classes.
std::vector<FiniteJoinSemilattice> enumerate_lattices(unsigned n, const SizeGuard& guard = {});

/// Pass one: grow unlabeled posets of size n - 2 one maximal element at a
/// time (deduplicated per level), add a bottom and a top, keep lattices.
std::vector<CanonicalForm> lattice_classes_by_growth(unsigned n);

/// Pass two: try every strict order on n - 2 inner elements compatible with
/// the index order, add a bottom and a top, keep transitive lattices.
std::vector<CanonicalForm> lattice_classes_by_relations(unsigned n);

/// Outcome of every check run on one catalog structure.
struct StructureCheck {
  std::string id;  // "n<size>#<position>"
  std::size_t size = 0;
  std::vector<std::pair<std::string, std::string>> covers;
  bool distributive = false;
  bool witness_i_injective = false;
  bool witness_i_prime_injective = false;
  bool brute_force_flat = false;
  bool diagrams_commute = false;
  bool power_law = false;
  bool epsilon_bijection = false;
  double milliseconds = 0;
};

struct VerificationReport {
  unsigned max_n = 0;
  std::size_t structures_checked = 0;
  std::vector<std::size_t> class_counts;  // index k holds the count for size k + 1
  std::vector<std::string> equivalence_failures;
  std::vector<StructureCheck> structures;
};

/// For every catalog lattice of size ≤ max_n: distributivity, both witness
/// maps, commutation of the two witness diagrams, |Pow(k) ⊗ S| = |S|^k for k ≤ 3,
/// the ε bijection against every catalog A with |A| ≤ 3, and the embedding
/// sweep at bound 4. Any disagreement is recorded as a failure.
/// `jobs` > 1 checks structures concurrently; the report order is fixed.
VerificationReport verify_theorem(unsigned max_n, unsigned jobs = 1, const SizeGuard& guard = {});

/// Line-oriented text form.
std::string to_text(const VerificationReport& report, bool with_timings = true);
/// JSON with a fixed key order.
std::string to_json(const VerificationReport& report, bool with_timings = true);

}  // namespace flatlat
