#include "flatlat/tensor.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "flatlat/error.hpp"
#include "flatlat/ideals.hpp"

namespace flatlat {

namespace {

template <class F>
void for_each_bit(const ElementSet& set, F&& f) {
  for (auto i = set.find_first(); i != ElementSet::npos; i = set.find_next(i)) f(static_cast<Index>(i));
}

// Join table of the closure route, in discovery order.
struct ClosureRoute {
  std::vector<ElementSet> elements;
  std::vector<Index> join;  // row-major, elements.size() squared
};

ClosureRoute run_closure_route(const Grid& grid, std::size_t limit) {
  const FiniteJoinSemilattice& a = grid.left();
  const FiniteJoinSemilattice& b = grid.right();
  std::vector<ElementSet> found;
  std::unordered_map<ElementSet, Index> seen;
  auto intern = [&](ElementSet cells) -> Index {
    auto [it, inserted] = seen.emplace(cells, static_cast<Index>(found.size()));
    if (inserted) {
      check_guard(found.size() + 1, limit, "tensor product size");
      found.push_back(std::move(cells));
    }
    return it->second;
  };
  intern(nabla_cells(grid));
  for (Index x = 1; x < a.size(); ++x) {
    for (Index y = 1; y < b.size(); ++y) intern(pure_tensor_cells(grid, x, y));
  }
  // joins[k] holds the joins of element k with every earlier element.
  std::vector<std::vector<Index>> joins;
  for (std::size_t k = 0; k < found.size(); ++k) {
    std::vector<Index> row(k + 1);
    row[k] = static_cast<Index>(k);
    for (std::size_t l = 0; l < k; ++l) {
      row[l] = intern(bi_ideal_closure_cells(grid, found[k] | found[l]));
    }
    joins.push_back(std::move(row));
  }
  const std::size_t n = found.size();
  ClosureRoute route{std::move(found), std::vector<Index>(n * n)};
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l <= k; ++l) route.join[k * n + l] = route.join[l * n + k] = joins[k][l];
  }
  return route;
}

}  // namespace

BiIdeal::BiIdeal(const FiniteJoinSemilattice& left, const FiniteJoinSemilattice& right, ElementSet cells)
    : left_(left), right_(right), cells_(std::move(cells)) {
  if (!satisfies_bi_ideal_conditions(Grid(left_, right_), cells_)) {
    throw Error(ErrorCode::InvalidTable, "cell set is not a bi-ideal");
  }
}

std::vector<IndexPair> BiIdeal::members() const {
  std::vector<IndexPair> out;
  const Grid grid(left_, right_);
  for_each_bit(cells_, [&](Index c) { out.push_back(grid.pair(c)); });
  return out;
}

bool satisfies_bi_ideal_conditions(const Grid& grid, const ElementSet& cells) {
  const FiniteJoinSemilattice& a = grid.left();
  const FiniteJoinSemilattice& b = grid.right();
  if (cells.size() != grid.cells()) return false;
  if (!nabla_cells(grid).is_subset_of(cells)) return false;
  bool ok = true;
  for_each_bit(cells, [&](Index c) {
    if (!ok) return;
    const IndexPair xy = grid.pair(c);
    const Index x = xy.first, y = xy.second;
    for_each_bit(a.down_set(x), [&](Index x2) {
      for_each_bit(b.down_set(y), [&](Index y2) {
        if (!cells.test(grid.cell(x2, y2))) ok = false;
      });
    });
    for (Index y1 = 0; y1 < b.size() && ok; ++y1) {
      if (cells.test(grid.cell(x, y1)) && !cells.test(grid.cell(x, b.join(y, y1)))) ok = false;
    }
    for (Index x1 = 0; x1 < a.size() && ok; ++x1) {
      if (cells.test(grid.cell(x1, y)) && !cells.test(grid.cell(a.join(x, x1), y))) ok = false;
    }
  });
  return ok;
}

ElementSet nabla_cells(const Grid& grid) {
  ElementSet cells = grid.empty();
  for (Index x = 0; x < grid.left().size(); ++x) cells.set(grid.cell(x, 0));
  for (Index y = 0; y < grid.right().size(); ++y) cells.set(grid.cell(0, y));
  return cells;
}

BiIdeal nabla(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b) {
  return BiIdeal(a, b, nabla_cells(Grid(a, b)));
}

std::optional<IndexPair> lateral_join(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b, IndexPair x0,
                                      IndexPair x1) {
  if (x0.first != x1.first && x0.second != x1.second) return std::nullopt;
  return IndexPair{a.join(x0.first, x1.first), b.join(x0.second, x1.second)};
}

ElementSet bi_ideal_closure_cells(const Grid& grid, const ElementSet& seed) {
  const FiniteJoinSemilattice& a = grid.left();
  const FiniteJoinSemilattice& b = grid.right();
  ElementSet cells = grid.empty();
  std::vector<std::size_t> work;
  // Keeps `cells` hereditary: a cell enters only together with its down-set.
  std::function<void(Index, Index)> add = [&](Index x, Index y) {
    const std::size_t c = grid.cell(x, y);
    if (cells.test(c)) return;
    cells.set(c);
    work.push_back(c);
    for (Index x2 : a.lower_covers(x)) add(x2, y);
    for (Index y2 : b.lower_covers(y)) add(x, y2);
  };
  for (Index x = 0; x < a.size(); ++x) add(x, 0);
  for (Index y = 0; y < b.size(); ++y) add(0, y);
  for_each_bit(seed, [&](Index c) {
    const auto [x, y] = grid.pair(c);
    add(x, y);
  });
  while (!work.empty()) {
    const auto [x, y] = grid.pair(work.back());
    work.pop_back();
    for (Index y1 = 0; y1 < b.size(); ++y1) {
      if (cells.test(grid.cell(x, y1))) add(x, b.join(y, y1));
    }
    for (Index x1 = 0; x1 < a.size(); ++x1) {
      if (cells.test(grid.cell(x1, y))) add(a.join(x, x1), y);
    }
  }
  return cells;
}

BiIdeal bi_ideal_closure(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b,
                         std::span<const IndexPair> seed) {
  const Grid grid(a, b);
  ElementSet cells = grid.empty();
  for (const auto& [x, y] : seed) cells.set(grid.cell(x, y));
  return BiIdeal(a, b, bi_ideal_closure_cells(grid, cells));
}

ElementSet pure_tensor_cells(const Grid& grid, Index x, Index y) {
  ElementSet cells = nabla_cells(grid);
  for_each_bit(grid.left().down_set(x), [&](Index x2) {
    for_each_bit(grid.right().down_set(y), [&](Index y2) { cells.set(grid.cell(x2, y2)); });
  });
  return cells;
}

BiIdeal pure_tensor(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b, Index x, Index y) {
  return BiIdeal(a, b, pure_tensor_cells(Grid(a, b), x, y));
}

BiIdeal transpose(const BiIdeal& h) {
  const Grid swapped(h.right(), h.left());
  ElementSet cells = swapped.empty();
  for (const auto& [x, y] : h.members()) cells.set(swapped.cell(y, x));
  return BiIdeal(h.right(), h.left(), std::move(cells));
}

std::vector<ElementSet> enumerate_bi_ideals_by_closure(const Grid& grid, std::size_t limit) {
  return run_closure_route(grid, limit).elements;
}

std::vector<ElementSet> enumerate_bi_ideals_by_scan(const Grid& grid, std::size_t limit) {
  const FiniteJoinSemilattice& a = grid.left();
  const FiniteJoinSemilattice& b = grid.right();
  // Cells of A⁻ × B⁻ along a linear extension of the product order.
  std::vector<IndexPair> order;
  for (Index x = 1; x < a.size(); ++x) {
    for (Index y = 1; y < b.size(); ++y) order.emplace_back(x, y);
  }
  auto rank = [&](const IndexPair& p) { return a.down_set(p.first).count() * b.down_set(p.second).count(); };
  std::stable_sort(order.begin(), order.end(),
                   [&](const IndexPair& p, const IndexPair& q) { return rank(p) < rank(q); });

  std::vector<ElementSet> out;
  ElementSet cells = nabla_cells(grid);

  // A cell is forced when two strictly smaller members of its row (or
  // column) have it as their lateral join.
  auto forced = [&](Index x, Index y) {
    std::vector<Index> row;
    for_each_bit(b.down_set(y), [&](Index y0) {
      if (y0 != y && cells.test(grid.cell(x, y0))) row.push_back(y0);
    });
    for (std::size_t i = 0; i < row.size(); ++i) {
      for (std::size_t j = i + 1; j < row.size(); ++j) {
        if (b.join(row[i], row[j]) == y) return true;
      }
    }
    std::vector<Index> column;
    for_each_bit(a.down_set(x), [&](Index x0) {
      if (x0 != x && cells.test(grid.cell(x0, y))) column.push_back(x0);
    });
    for (std::size_t i = 0; i < column.size(); ++i) {
      for (std::size_t j = i + 1; j < column.size(); ++j) {
        if (a.join(column[i], column[j]) == x) return true;
      }
    }
    return false;
  };
  auto allowed = [&](Index x, Index y) {
    for (Index x2 : a.lower_covers(x)) {
      if (!cells.test(grid.cell(x2, y))) return false;
    }
    for (Index y2 : b.lower_covers(y)) {
      if (!cells.test(grid.cell(x, y2))) return false;
    }
    return true;
  };

  std::function<void(std::size_t)> visit = [&](std::size_t pos) {
    if (pos == order.size()) {
      if (!satisfies_bi_ideal_conditions(grid, cells)) {
        throw Error(ErrorCode::InternalDisagreement, "scan produced a set that is not a bi-ideal");
      }
      check_guard(out.size() + 1, limit, "tensor product size");
      out.push_back(cells);
      return;
    }
    const auto [x, y] = order[pos];
    const std::size_t c = grid.cell(x, y);
    const bool may = allowed(x, y);
    if (forced(x, y)) {
      if (!may) return;
      cells.set(c);
      visit(pos + 1);
      cells.reset(c);
      return;
    }
    visit(pos + 1);
    if (may) {
      cells.set(c);
      visit(pos + 1);
      cells.reset(c);
    }
  };
  visit(0);
  return out;
}

std::optional<Index> TensorSemilattice::find(const ElementSet& cells) const {
  const auto it = lookup_.find(cells);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Index TensorSemilattice::closure_index(const ElementSet& cells) const {
  const auto found = find(bi_ideal_closure_cells(grid_, cells));
  if (!found) throw Error(ErrorCode::InternalDisagreement, "closure is missing from the tensor product");
  return *found;
}

std::vector<IndexPair> TensorSemilattice::generators(Index e) const {
  const ElementSet& cells = elements_[e];
  std::vector<IndexPair> out;
  for_each_bit(cells, [&](Index c) {
    const IndexPair xy = grid_.pair(c);
    const Index x = xy.first, y = xy.second;
    if (x == 0 || y == 0) return;
    bool maximal = true;
    for_each_bit(left().up_set(x), [&](Index x2) {
      for_each_bit(right().up_set(y), [&](Index y2) {
        if ((x2 != x || y2 != y) && cells.test(grid_.cell(x2, y2))) maximal = false;
      });
    });
    if (maximal) out.emplace_back(x, y);
  });
  return out;
}

std::string TensorSemilattice::describe(Index e) const {
  const auto gens = generators(e);
  if (gens.empty()) return "0";
  std::string text;
  for (const auto& [x, y] : gens) {
    if (!text.empty()) text += " ∨ ";
    text += left().name(x) + "⊗" + right().name(y);
  }
  return text;
}

TensorSemilattice tensor_product(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b,
                                 const SizeGuard& guard) {
  check_guard(a.size(), guard.max_tensor_elements, "left factor size");
  check_guard(b.size(), guard.max_tensor_elements, "right factor size");
  TensorSemilattice t(Grid(a, b));
  ClosureRoute route = run_closure_route(t.grid_, guard.max_tensor_elements);
  std::vector<ElementSet> scanned = enumerate_bi_ideals_by_scan(t.grid_, guard.max_tensor_elements);

  const std::size_t n = route.elements.size();
  std::vector<Index> order(n);
  for (Index k = 0; k < n; ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](Index k, Index l) { return cardinality_lex_less(route.elements[k], route.elements[l]); });
  std::sort(scanned.begin(), scanned.end(), cardinality_lex_less);
  if (scanned.size() != n) {
    throw Error(ErrorCode::InternalDisagreement, "bi-ideal enumerations disagree: closure route found " +
                                                     std::to_string(n) + ", scan found " +
                                                     std::to_string(scanned.size()));
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (scanned[k] != route.elements[order[k]]) {
      throw Error(ErrorCode::InternalDisagreement, "bi-ideal enumerations disagree");
    }
  }

  std::vector<Index> position(n);
  for (Index k = 0; k < n; ++k) position[order[k]] = k;
  t.elements_ = std::move(scanned);
  for (Index k = 0; k < n; ++k) t.lookup_.emplace(t.elements_[k], k);
  std::vector<Index> table(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      table[position[k] * n + position[l]] = position[route.join[k * n + l]];
    }
  }
  t.pure_.assign(t.grid_.cells(), 0);
  for (Index x = 0; x < a.size(); ++x) {
    for (Index y = 0; y < b.size(); ++y) t.pure_[t.grid_.cell(x, y)] = *t.find(pure_tensor_cells(t.grid_, x, y));
  }

  std::vector<std::string> names(n);
  std::unordered_set<std::string> used;
  for (Index k = 0; k < n; ++k) {
    names[k] = t.describe(k);
    if (!used.insert(names[k]).second) names[k] += "#" + std::to_string(k);
  }
  t.lattice_ = FiniteJoinSemilattice::from_table(std::move(names), std::move(table), guard.max_tensor_elements);
  return t;
}

JoinMorphism tensor_morphism(const JoinMorphism& f, const JoinMorphism& g, const TensorSemilattice& source,
                             const TensorSemilattice& target) {
  if (!(f.dom() == source.left()) || !(g.dom() == source.right()) || !(f.cod() == target.left()) ||
      !(g.cod() == target.right())) {
    throw Error(ErrorCode::NotAHom, "tensor morphism factors do not match the tensor products");
  }
  const Grid& from = source.grid();
  const Grid& to = target.grid();
  std::vector<Index> map(source.size());
  for (Index e = 0; e < source.size(); ++e) {
    ElementSet image = to.empty();
    for_each_bit(source.element(e), [&](Index c) {
      const auto [x, y] = from.pair(c);
      image.set(to.cell(f(x), g(y)));
    });
    map[e] = target.closure_index(image);
  }
  return JoinMorphism(source.lattice(), target.lattice(), std::move(map));
}

JoinMorphism transpose_morphism(const TensorSemilattice& ab, const TensorSemilattice& ba) {
  if (!(ab.left() == ba.right()) || !(ab.right() == ba.left())) {
    throw Error(ErrorCode::NotAHom, "transpose between mismatched tensor products");
  }
  std::vector<Index> map(ab.size());
  for (Index e = 0; e < ab.size(); ++e) {
    const auto found = ba.find(transpose(ab.bi_ideal(e)).cells());
    if (!found) throw Error(ErrorCode::InternalDisagreement, "transposed bi-ideal missing");
    map[e] = *found;
  }
  return JoinMorphism(ab.lattice(), ba.lattice(), std::move(map));
}

}  // namespace flatlat
