#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "flatlat/morphism.hpp"
#include "flatlat/semilattice.hpp"

namespace flatlat {

/// Cells of the grid A × B, addressed as a * |B| + b.
class Grid {
 public:
  Grid(FiniteJoinSemilattice left, FiniteJoinSemilattice right)
      : left_(std::move(left)), right_(std::move(right)) {}

  const FiniteJoinSemilattice& left() const { return left_; }
  const FiniteJoinSemilattice& right() const { return right_; }
  std::size_t cells() const { return left_.size() * right_.size(); }
  std::size_t cell(Index a, Index b) const { return std::size_t{a} * right_.size() + b; }
  IndexPair pair(std::size_t cell) const {
    return {static_cast<Index>(cell / right_.size()), static_cast<Index>(cell % right_.size())};
  }
  ElementSet empty() const { return ElementSet(cells()); }

 private:
  FiniteJoinSemilattice left_;
  FiniteJoinSemilattice right_;
};

/// A bi-ideal of A × B: hereditary, containing ∇, closed under lateral joins.
///
/// Equality is equality of member sets; `members()` lists them sorted.
class BiIdeal {
 public:
  /// Throws Error(InvalidTable) when `cells` violates one of the three
  /// bi-ideal conditions.
  BiIdeal(const FiniteJoinSemilattice& left, const FiniteJoinSemilattice& right, ElementSet cells);

  const FiniteJoinSemilattice& left() const { return left_; }
  const FiniteJoinSemilattice& right() const { return right_; }
  const ElementSet& cells() const { return cells_; }
  bool contains(Index a, Index b) const { return cells_.test(std::size_t{a} * right_.size() + b); }
  std::size_t size() const { return cells_.count(); }
  std::vector<IndexPair> members() const;

  friend bool operator==(const BiIdeal& x, const BiIdeal& y) { return x.cells_ == y.cells_; }

 private:
  FiniteJoinSemilattice left_;
  FiniteJoinSemilattice right_;
  ElementSet cells_;
};

/// Checks the three bi-ideal conditions directly on a cell set.
bool satisfies_bi_ideal_conditions(const Grid& grid, const ElementSet& cells);

/// (A × {0}) ∪ ({0} × B).
ElementSet nabla_cells(const Grid& grid);
BiIdeal nabla(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b);

/// ⟨a0 ∨ a1, b0 ∨ b1⟩ when a0 = a1 or b0 = b1; nothing otherwise.
std::optional<IndexPair> lateral_join(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b, IndexPair x0,
                                      IndexPair x1);

/// Least bi-ideal containing `seed` (worklist fixpoint of the hereditary and
/// lateral-join closure steps).
ElementSet bi_ideal_closure_cells(const Grid& grid, const ElementSet& seed);
BiIdeal bi_ideal_closure(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b,
                         std::span<const IndexPair> seed);

/// ∇ ∪ {⟨x, y⟩ : ⟨x, y⟩ ≤ ⟨a, b⟩}.
ElementSet pure_tensor_cells(const Grid& grid, Index a, Index b);
BiIdeal pure_tensor(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b, Index x, Index y);

/// Swaps the coordinates of every member.
BiIdeal transpose(const BiIdeal& h);

/// Route one: close {∇} ∪ {pure tensors} under generated joins.
std::vector<ElementSet> enumerate_bi_ideals_by_closure(const Grid& grid, std::size_t limit);
/// Route two: search hereditary subsets of A⁻ × B⁻ cell by cell along a
/// linear extension, keeping those that satisfy all three conditions.
std::vector<ElementSet> enumerate_bi_ideals_by_scan(const Grid& grid, std::size_t limit);

/// The finite tensor product A ⊗ B, realised as the semilattice of all
/// bi-ideals of A × B. For finite factors every bi-ideal is compact, so this
/// is also the extended tensor product.
///
/// Elements are sorted by (cardinality, member list); element 0 is ∇.
class TensorSemilattice {
 public:
  const FiniteJoinSemilattice& left() const { return grid_.left(); }
  const FiniteJoinSemilattice& right() const { return grid_.right(); }
  const Grid& grid() const { return grid_; }

  std::size_t size() const { return elements_.size(); }
  const std::vector<ElementSet>& elements() const { return elements_; }
  const ElementSet& element(Index e) const { return elements_[e]; }
  BiIdeal bi_ideal(Index e) const { return BiIdeal(left(), right(), elements_[e]); }

  /// The tensor product as a {∨,0}-semilattice. Labels are the generator
  /// descriptions from `describe`.
  const FiniteJoinSemilattice& lattice() const { return lattice_; }

  Index zero() const { return 0; }
  Index pure(Index a, Index b) const { return pure_[grid_.cell(a, b)]; }
  std::optional<Index> find(const ElementSet& cells) const;
  /// Index of the closure of `cells`.
  Index closure_index(const ElementSet& cells) const;

  /// Maximal members outside ∇; their pure tensors join to the element.
  std::vector<IndexPair> generators(Index e) const;
  /// "a⊗b ∨ c⊗d" over the maximal generators, or "0" for ∇.
  std::string describe(Index e) const;

  friend TensorSemilattice tensor_product(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b,
                                          const SizeGuard& guard);

 private:
  explicit TensorSemilattice(Grid grid) : grid_(std::move(grid)) {}

  Grid grid_;
  std::vector<ElementSet> elements_;
  std::unordered_map<ElementSet, Index> lookup_;
  std::vector<Index> pure_;
  FiniteJoinSemilattice lattice_ = chain(1);
};

/// Enumerates A ⊗ B by both routes and throws Error(InternalDisagreement) if
/// they differ. Throws Error(SizeGuardExceeded) past `guard.max_tensor_elements`.
TensorSemilattice tensor_product(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b,
                                 const SizeGuard& guard = {});

/// f ⊗ g : A ⊗ B → A' ⊗ B', sending a bi-ideal I to the closure of
/// {⟨f(a), g(b)⟩ : ⟨a, b⟩ ∈ I}.
JoinMorphism tensor_morphism(const JoinMorphism& f, const JoinMorphism& g, const TensorSemilattice& source,
                             const TensorSemilattice& target);

/// The isomorphism A ⊗ B → B ⊗ A induced by `transpose`.
JoinMorphism transpose_morphism(const TensorSemilattice& ab, const TensorSemilattice& ba);

}  // namespace flatlat
