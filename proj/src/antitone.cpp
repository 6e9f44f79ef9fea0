#include "flatlat/antitone.hpp"

#include "flatlat/error.hpp"

namespace flatlat {

namespace {

bool sends_joins_to_intersections(const FiniteJoinSemilattice& dom, const IdealLattice& ideals,
                                  const std::vector<Index>& values) {
  const auto n = static_cast<Index>(dom.size());
  for (Index x = 1; x < n; ++x) {
    for (Index y = x; y < n; ++y) {
      const ElementSet meet = ideals.ideal(values[x - 1]) & ideals.ideal(values[y - 1]);
      if (ideals.ideal(values[dom.join(x, y) - 1]) != meet) return false;
    }
  }
  return true;
}

}  // namespace

AntitoneHom::AntitoneHom(FiniteJoinSemilattice dom, std::shared_ptr<const IdealLattice> cod_ideals,
                         std::vector<Index> values)
    : dom_(std::move(dom)), ideals_(std::move(cod_ideals)), values_(std::move(values)) {
  if (values_.size() + 1 != dom_.size()) throw Error(ErrorCode::NotAHom, "antitone hom must be defined on A⁻");
  for (Index v : values_) {
    if (v >= ideals_->size()) throw Error(ErrorCode::NotAHom, "value is not an ideal index");
  }
  if (!sends_joins_to_intersections(dom_, *ideals_, values_)) {
    throw Error(ErrorCode::NotAHom, "map does not send joins to intersections");
  }
}

bool pointwise_leq(const AntitoneHom& xi, const AntitoneHom& eta) {
  for (Index a = 1; a < xi.dom().size(); ++a) {
    if (!xi.section(a).is_subset_of(eta.section(a))) return false;
  }
  return true;
}

BiIdeal epsilon(const AntitoneHom& xi) {
  const Grid grid(xi.dom(), xi.cod_ideals().base());
  ElementSet cells = nabla_cells(grid);
  for (Index a = 1; a < xi.dom().size(); ++a) {
    const ElementSet& section = xi.section(a);
    for (auto b = section.find_first(); b != ElementSet::npos; b = section.find_next(b)) {
      cells.set(grid.cell(a, static_cast<Index>(b)));
    }
  }
  if (!satisfies_bi_ideal_conditions(grid, cells)) {
    throw Error(ErrorCode::InternalDisagreement, "epsilon produced a set that is not a bi-ideal");
  }
  return BiIdeal(grid.left(), grid.right(), std::move(cells));
}

AntitoneHom epsilon_inv(const BiIdeal& h, std::shared_ptr<const IdealLattice> right_ideals) {
  const Grid grid(h.left(), h.right());
  std::vector<Index> values;
  for (Index a = 1; a < h.left().size(); ++a) {
    ElementSet section(h.right().size());
    for (Index b = 0; b < h.right().size(); ++b) {
      if (h.contains(a, b)) section.set(b);
    }
    const auto found = right_ideals->find(section);
    if (!found) {
      throw Error(ErrorCode::InternalDisagreement, "section at '" + h.left().name(a) + "' is not an ideal");
    }
    values.push_back(*found);
  }
  try {
    return AntitoneHom(h.left(), std::move(right_ideals), std::move(values));
  } catch (const Error&) {
    throw Error(ErrorCode::InternalDisagreement, "sections of a bi-ideal do not form an antitone hom");
  }
}

AntitoneHom epsilon_inv(const BiIdeal& h) {
  return epsilon_inv(h, std::make_shared<const IdealLattice>(h.right()));
}

std::vector<AntitoneHom> enumerate_antitone_homs(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b,
                                                 const SizeGuard& guard) {
  const auto shared = std::make_shared<const IdealLattice>(b);
  const IdealLattice& ideals = *shared;
  const std::vector<Index> irreducibles = join_irreducibles(a);
  std::size_t candidates = 1;
  for (std::size_t k = 0; k < irreducibles.size(); ++k) {
    candidates *= ideals.size();
    check_guard(candidates, guard.max_box_triples, "antitone hom candidates");
  }

  std::vector<AntitoneHom> out;
  std::vector<Index> assignment(irreducibles.size(), 0);
  const Index top_ideal = ideals.principal(b.top());
  for (;;) {
    std::vector<Index> values(a.size() - 1);
    for (Index x = 1; x < a.size(); ++x) {
      ElementSet section = ideals.ideal(top_ideal);
      for (std::size_t k = 0; k < irreducibles.size(); ++k) {
        if (a.leq(irreducibles[k], x)) section &= ideals.ideal(assignment[k]);
      }
      values[x - 1] = *ideals.find(section);
    }
    // An assignment that is not already antitone on J(A) gets rewritten by the
    // intersection and would duplicate another one.
    bool faithful = true;
    for (std::size_t k = 0; k < irreducibles.size() && faithful; ++k) {
      faithful = values[irreducibles[k] - 1] == assignment[k];
    }
    if (faithful && sends_joins_to_intersections(a, ideals, values)) out.emplace_back(a, shared, std::move(values));

    std::size_t k = irreducibles.size();
    while (k > 0) {
      --k;
      if (++assignment[k] < ideals.size()) break;
      assignment[k] = 0;
      if (k == 0) return out;
    }
    if (irreducibles.empty()) return out;
  }
}

}  // namespace flatlat
