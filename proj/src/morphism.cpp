#include "flatlat/morphism.hpp"

#include <algorithm>
#include <functional>

#include "flatlat/error.hpp"

namespace flatlat {

JoinMorphism::JoinMorphism(FiniteJoinSemilattice dom, FiniteJoinSemilattice cod, std::vector<Index> map)
    : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {
  if (map_.size() != dom_.size()) throw Error(ErrorCode::NotAHom, "map is not total on the domain");
  for (Index v : map_) {
    if (v >= cod_.size()) throw Error(ErrorCode::NotAHom, "map value outside the codomain");
  }
  if (map_[0] != 0) throw Error(ErrorCode::NotAHom, "map does not send 0 to 0");
  const auto n = static_cast<Index>(dom_.size());
  for (Index x = 1; x < n; ++x) {
    for (Index y = x + 1; y < n; ++y) {
      if (map_[dom_.join(x, y)] != cod_.join(map_[x], map_[y])) {
        throw Error(ErrorCode::NotAHom,
                    "map does not preserve the join of '" + dom_.name(x) + "' and '" + dom_.name(y) + "'");
      }
    }
  }
}

JoinMorphism JoinMorphism::identity(const FiniteJoinSemilattice& s) {
  std::vector<Index> map(s.size());
  for (Index x = 0; x < map.size(); ++x) map[x] = x;
  return JoinMorphism(s, s, std::move(map));
}

JoinMorphism JoinMorphism::zero(const FiniteJoinSemilattice& dom, const FiniteJoinSemilattice& cod) {
  return JoinMorphism(dom, cod, std::vector<Index>(dom.size(), 0));
}

std::optional<IndexPair> JoinMorphism::first_collision() const {
  std::vector<std::optional<Index>> preimage(cod_.size());
  std::optional<IndexPair> best;
  for (Index x = 0; x < map_.size(); ++x) {
    auto& slot = preimage[map_[x]];
    if (!slot) {
      slot = x;
    } else if (!best || IndexPair{*slot, x} < *best) {
      best = IndexPair{*slot, x};
    }
  }
  return best;
}

bool JoinMorphism::is_injective() const { return !first_collision().has_value(); }

JoinMorphism compose(const JoinMorphism& outer, const JoinMorphism& inner) {
  if (!(inner.cod() == outer.dom())) throw Error(ErrorCode::NotAHom, "composition of mismatched morphisms");
  std::vector<Index> map(inner.dom().size());
  for (Index x = 0; x < map.size(); ++x) map[x] = outer(inner(x));
  return JoinMorphism(inner.dom(), outer.cod(), std::move(map));
}

namespace {

// Backtracks over images of the join-irreducibles of `a`, extends each
// assignment by joins, and reports every resulting injective hom.
void search_embeddings(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b, bool first_only,
                       bool bijective, std::vector<JoinMorphism>& out) {
  if (bijective && a.size() != b.size()) return;
  if (a.size() > b.size()) return;
  const std::vector<Index> irreducibles = join_irreducibles(a);
  std::vector<Index> image(irreducibles.size());
  std::vector<bool> used(b.size(), false);

  std::function<bool(std::size_t)> assign = [&](std::size_t k) -> bool {
    if (k == irreducibles.size()) {
      std::vector<Index> map(a.size(), 0);
      for (Index x = 1; x < a.size(); ++x) {
        Index value = 0;
        for (std::size_t i = 0; i < irreducibles.size(); ++i) {
          if (a.leq(irreducibles[i], x)) value = b.join(value, image[i]);
        }
        map[x] = value;
      }
      std::vector<bool> hit(b.size(), false);
      for (Index v : map) {
        if (hit[v]) return false;
        hit[v] = true;
      }
      for (Index x = 1; x < a.size(); ++x) {
        for (Index y = x + 1; y < a.size(); ++y) {
          if (map[a.join(x, y)] != b.join(map[x], map[y])) return false;
        }
      }
      out.emplace_back(a, b, std::move(map));
      return first_only;
    }
    const Index p = irreducibles[k];
    for (Index candidate = 1; candidate < b.size(); ++candidate) {
      if (used[candidate]) continue;
      bool consistent = true;
      for (std::size_t i = 0; i < k && consistent; ++i) {
        const Index q = irreducibles[i];
        if (a.leq(q, p) != b.leq(image[i], candidate) || a.leq(p, q) != b.leq(candidate, image[i])) {
          consistent = false;
        }
      }
      if (!consistent) continue;
      image[k] = candidate;
      used[candidate] = true;
      const bool stop = assign(k + 1);
      used[candidate] = false;
      if (stop) return true;
    }
    return false;
  };
  assign(0);
}

}  // namespace

std::vector<JoinMorphism> all_embeddings(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b) {
  std::vector<JoinMorphism> out;
  search_embeddings(a, b, false, false, out);
  std::sort(out.begin(), out.end(), [](const JoinMorphism& f, const JoinMorphism& g) {
    return std::lexicographical_compare(f.values().begin(), f.values().end(), g.values().begin(),
                                        g.values().end());
  });
  return out;
}

std::optional<JoinMorphism> find_isomorphism(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b) {
  std::vector<JoinMorphism> out;
  search_embeddings(a, b, true, true, out);
  if (out.empty()) return std::nullopt;
  return out.front();
}

}  // namespace flatlat
