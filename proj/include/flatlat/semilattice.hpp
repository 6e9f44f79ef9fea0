#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "flatlat/size_guard.hpp"

namespace flatlat {

/// Dense element index; 0 is always the least element.
using Index = std::uint32_t;
using IndexPair = std::pair<Index, Index>;
using ElementSet = boost::dynamic_bitset<std::uint64_t>;

/// A finite {∨,0}-semilattice stored as its join table.
///
/// The join table is authoritative. The order, the cover relation and the
/// meet are derived once on construction and cached. Instances are immutable
/// and cheap to copy (the tables live behind a shared pointer).
class FiniteJoinSemilattice {
 public:
  /// Builds from a row-major `size x size` join table. Verifies that the table
  /// is a semilattice with least element 0; throws Error(InvalidTable)
  /// otherwise. `size_limit` bounds the element count.
  static FiniteJoinSemilattice from_table(std::vector<std::string> names,
                                          std::vector<Index> join,
                                          std::size_t size_limit = SizeGuard{}.max_size);

  std::size_t size() const { return impl_->names.size(); }
  const std::vector<std::string>& names() const { return impl_->names; }
  const std::string& name(Index x) const { return impl_->names[x]; }
  std::optional<Index> find(std::string_view label) const;

  Index join(Index x, Index y) const { return impl_->join[x * size() + y]; }
  Index meet(Index x, Index y) const;
  bool leq(Index x, Index y) const { return join(x, y) == y; }
  bool less(Index x, Index y) const { return x != y && leq(x, y); }

  Index bottom() const { return 0; }
  Index top() const { return impl_->top; }

  /// Join of a set of elements; the empty join is 0.
  Index join_all(std::span<const Index> xs) const;

  /// Elements ≤ x (resp. ≥ x) as a bitset over indices.
  const ElementSet& down_set(Index x) const { return impl_->down[x]; }
  const ElementSet& up_set(Index x) const { return impl_->up[x]; }

  /// Cover pairs (lower, upper), sorted lexicographically.
  const std::vector<IndexPair>& covers() const { return impl_->covers; }
  /// Elements covered by x, ascending.
  const std::vector<Index>& lower_covers(Index x) const { return impl_->lower_covers[x]; }

  /// Row-major join table.
  std::span<const Index> join_table() const { return impl_->join; }

  /// Same labels in the same order and the same join table.
  friend bool operator==(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b);

 private:
  struct Impl {
    std::vector<std::string> names;
    std::vector<Index> join;
    std::vector<Index> meet;  // empty when computed on demand
    std::vector<ElementSet> down;
    std::vector<ElementSet> up;
    std::vector<IndexPair> covers;
    std::vector<std::vector<Index>> lower_covers;
    Index top = 0;
  };

  explicit FiniteJoinSemilattice(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  Index compute_meet(Index x, Index y) const;

  std::shared_ptr<const Impl> impl_;
};

/// Builds a semilattice from labels and a generating set of ≤ pairs
/// (lower, upper). Index 0 is assigned to the least element; the other
/// elements keep their declared order.
///
/// Throws Error with code DuplicateLabel, UnknownLabel, CycleDetected,
/// NoLeastElement, JoinMissing or SizeGuardExceeded.
FiniteJoinSemilattice from_covers(const std::vector<std::string>& names,
                                  const std::vector<std::pair<std::string, std::string>>& covers,
                                  const SizeGuard& guard = {});

/// Elements 0 p q r 1 with the three atoms pairwise joining to 1.
FiniteJoinSemilattice diamond_m3();
/// Elements 0 a b c 1 with 0 < c < a < 1 and 0 < b < 1.
FiniteJoinSemilattice pentagon_n5();
/// All subsets of {0..n-1}; element index is the subset bitmask.
FiniteJoinSemilattice powerset(unsigned n, const SizeGuard& guard = {});
/// The n-element chain 0 < 1 < ... < n-1, n ≥ 1.
FiniteJoinSemilattice chain(unsigned n, const SizeGuard& guard = {});

/// Resolves "M3", "N5", "Pow(n)" or "Chain(n)"; throws Error(UnknownBuiltin).
FiniteJoinSemilattice builtin(std::string_view name, const SizeGuard& guard = {});

/// Nonzero elements that are not the join of the elements strictly below them.
std::vector<Index> join_irreducibles(const FiniteJoinSemilattice& s);

/// Convenience free function mirroring the member.
inline Index meet(const FiniteJoinSemilattice& s, Index x, Index y) { return s.meet(x, y); }

/// True iff an order isomorphism exists. Uses canonical forms.
bool is_isomorphic(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b);

}  // namespace flatlat
