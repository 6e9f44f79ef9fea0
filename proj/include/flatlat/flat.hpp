#pragma once

#include <array>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "flatlat/distributive.hpp"
#include "flatlat/morphism.hpp"
#include "flatlat/tensor.hpp"

namespace flatlat {

using Triple = std::array<Index, 3>;

/// M3: x ∧ y = x ∧ z = y ∧ z.  N5: y ∧ z ≤ x ≤ z.  Cube: every triple.
enum class BoxKind { M3, N5, Cube };

const char* to_string(BoxKind kind);

/// Membership predicate of M3[L], N5[L] or L³, decided by meets in `l`.
bool in_box(BoxKind kind, const FiniteJoinSemilattice& l, const Triple& t);

/// A set of triples of L under the componentwise order: M3[L], N5[L] or L³.
///
/// Each box is closed under componentwise meets and contains ⟨1,1,1⟩, so it is
/// a lattice; the join of two members is the least member above their
/// componentwise join (membership is re-tested, never assumed).
class TripleBox {
 public:
  BoxKind kind() const { return kind_; }
  const FiniteJoinSemilattice& base() const { return base_; }
  std::size_t size() const { return members_.size(); }
  /// Lexicographic order; member 0 is ⟨0,0,0⟩.
  const std::vector<Triple>& members() const { return members_; }
  const Triple& member(Index k) const { return members_[k]; }
  std::optional<Index> find(const Triple& t) const;
  /// The box as a {∨,0}-semilattice with labels "<x,y,z>".
  const FiniteJoinSemilattice& lattice() const { return lattice_; }

  friend TripleBox box(BoxKind kind, const FiniteJoinSemilattice& l, const SizeGuard& guard);

 private:
  TripleBox(BoxKind kind, FiniteJoinSemilattice base) : kind_(kind), base_(std::move(base)) {}

  BoxKind kind_;
  FiniteJoinSemilattice base_;
  std::vector<Triple> members_;
  std::unordered_map<std::uint64_t, Index> lookup_;
  FiniteJoinSemilattice lattice_ = chain(1);
};

/// Scans all of L³; throws Error(SizeGuardExceeded) when |L|³ exceeds
/// `guard.max_box_triples`.
TripleBox box(BoxKind kind, const FiniteJoinSemilattice& l, const SizeGuard& guard = {});

/// alpha: M3 ⊗ S → M3[S].  alpha_prime: N5 ⊗ S → N5[S].  beta: Pow(3) ⊗ S → S³.
/// Id S is identified with S through principal ideals.
enum class CanonicalKind { Alpha, AlphaPrime, Beta };

struct CanonicalIso {
  CanonicalKind kind;
  TensorSemilattice tensor;
  TripleBox box;
  JoinMorphism map;  // tensor.lattice() → box.lattice()
  std::vector<Index> inverse;
};

/// Builds the map from its images on pure tensors j ⊗ x, j join-irreducible,
/// extends it by joins, cross-checks it against the section formula and
/// asserts bijectivity (Error(NotBijective) otherwise).
CanonicalIso canonical_iso(CanonicalKind kind, const FiniteJoinSemilattice& s, const SizeGuard& guard = {});

/// g⟨x,y,z⟩ = ⟨y∨z, x∨z, x∨y⟩ on M3[S];  g'⟨x,y,z⟩ = ⟨z, y, x∨y⟩ on N5[S].
enum class ProjectionKind { G, GPrime };

/// `source` must be box(M3, S) for G and box(N5, S) for GPrime; `cube` is S³.
JoinMorphism projection_map(ProjectionKind kind, const TripleBox& source, const TripleBox& cube);
JoinMorphism projection_map(ProjectionKind kind, const FiniteJoinSemilattice& s, const SizeGuard& guard = {});

/// i : M3 ↪ Pow(3) and i' : N5 ↪ Pow(3).
struct FixedEmbeddings {
  JoinMorphism i;
  JoinMorphism i_prime;
};

FixedEmbeddings fixed_embeddings();

/// β ∘ (i ⊗ id_S) = g ∘ α and β ∘ (i' ⊗ id_S) = g' ∘ α', checked elementwise.
bool check_diagrams(const FiniteJoinSemilattice& s, const SizeGuard& guard = {});

/// Two distinct elements of M3 ⊗ S (or N5 ⊗ S) with the same image under
/// i ⊗ id_S (or i' ⊗ id_S).
struct Counterexample {
  Pattern pattern = Pattern::M3;
  Quintuple copy{};      // (o, x, y, z, i) in S
  std::string map_name;  // "i" or "i'"
  Triple u_triple{};
  Triple v_triple{};
  TensorSemilattice tensor;
  Index u = 0;
  Index v = 0;
  Index image = 0;  // common image in Pow(3) ⊗ S
  std::string image_text;
};

/// Throws Error(IsDistributive) when S has no M3 or N5 copy.
Counterexample counterexample(const FiniteJoinSemilattice& s, const SizeGuard& guard = {});

struct FlatnessReport {
  FiniteJoinSemilattice subject;
  bool distributive = true;
  bool witness_i_injective = true;
  bool witness_i_prime_injective = true;
  bool verdict = true;
  std::optional<Counterexample> counterexample;
};

/// Decides flatness by distributivity and by injectivity of i ⊗ id_S and
/// i' ⊗ id_S; throws Error(InternalDisagreement) if the two disagree.
FlatnessReport flatness(const FiniteJoinSemilattice& s, const SizeGuard& guard = {});

/// Tests f ⊗ id_S for injectivity over every embedding f : A ↪ B between
/// catalog lattices with |A| ≤ |B| ≤ bound, plus i and i'. False iff some map
/// collapses two elements.
bool brute_force_flat(const FiniteJoinSemilattice& s, unsigned bound = 5, const SizeGuard& guard = {});

}  // namespace flatlat
