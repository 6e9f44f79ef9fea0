#include <doctest.h>

#include <algorithm>

#include "flatlat/antitone.hpp"
#include "flatlat/error.hpp"
#include "flatlat/tensor.hpp"
#include "oracles.hpp"

using namespace flatlat;

namespace {

Index at(const FiniteJoinSemilattice& s, std::string_view label) { return *s.find(label); }

std::vector<std::vector<bool>> as_bools(const std::vector<ElementSet>& sets) {
  std::vector<std::vector<bool>> out;
  for (const auto& set : sets) {
    std::vector<bool> v(set.size());
    for (std::size_t k = 0; k < set.size(); ++k) v[k] = set.test(k);
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<FiniteJoinSemilattice, FiniteJoinSemilattice>> factor_pairs() {
  const std::vector<FiniteJoinSemilattice> small = {chain(1), chain(2), chain(3), powerset(2), diamond_m3(),
                                                    pentagon_n5()};
  std::vector<std::pair<FiniteJoinSemilattice, FiniteJoinSemilattice>> out;
  for (const auto& a : small)
    for (const auto& b : small) out.emplace_back(a, b);
  return out;
}

}  // namespace

TEST_SUITE("tensor") {
  TEST_CASE("nabla") {
    const auto c2 = chain(2);
    const BiIdeal n = nabla(c2, c2);
    CHECK(n.members() == std::vector<IndexPair>{{0, 0}, {0, 1}, {1, 0}});
    const BiIdeal m = nabla(diamond_m3(), chain(1));
    CHECK(m.size() == 5);
    CHECK(nabla(diamond_m3(), diamond_m3()).size() == 9);
  }

  TEST_CASE("lateral_join") {
    const auto m3 = diamond_m3();
    const Index p = at(m3, "p"), q = at(m3, "q"), r = at(m3, "r"), one = at(m3, "1");
    CHECK(lateral_join(m3, m3, {p, q}, {p, r}) == IndexPair{p, one});
    CHECK(lateral_join(m3, m3, {p, q}, {p, q}) == IndexPair{p, q});
    CHECK_FALSE(lateral_join(m3, m3, {p, q}, {q, r}).has_value());
  }

  TEST_CASE("bi_ideal_closure") {
    const auto m3 = diamond_m3();
    const auto n5 = pentagon_n5();
    CHECK(bi_ideal_closure(m3, n5, {}) == nabla(m3, n5));
    for (Index a = 0; a < m3.size(); ++a)
      for (Index b = 0; b < n5.size(); ++b) {
        const IndexPair seed[] = {{a, b}};
        CHECK(bi_ideal_closure(m3, n5, seed) == pure_tensor(m3, n5, a, b));
      }

    const Index p = at(m3, "p"), q = at(m3, "q"), r = at(m3, "r");
    const IndexPair diagonal[] = {{p, p}, {q, q}, {r, r}};
    const BiIdeal h = bi_ideal_closure(m3, m3, diagonal);
    // ∇ (9 pairs) plus the three diagonal atoms; no lateral join applies.
    CHECK(h.size() == 12);
    CHECK(h.size() - nabla(m3, m3).size() == 3);
    CHECK(h.contains(p, p));
    CHECK_FALSE(h.contains(p, q));
    CHECK(h.cells().is_proper_subset_of(pure_tensor(m3, m3, 4, 4).cells()));
  }

  TEST_CASE("pure_tensor") {
    const auto m3 = diamond_m3();
    CHECK(pure_tensor(m3, m3, 0, 3) == nabla(m3, m3));
    CHECK(pure_tensor(m3, m3, 2, 0) == nabla(m3, m3));
    const auto c2 = chain(2);
    CHECK(pure_tensor(c2, c2, 1, 1).size() == 4);
    const BiIdeal pq = pure_tensor(m3, m3, at(m3, "p"), at(m3, "q"));
    CHECK(pq.size() == 10);
    CHECK(pq.contains(at(m3, "p"), at(m3, "q")));
  }

  TEST_CASE("BiIdeal rejects sets that are not bi-ideals") {
    const auto m3 = diamond_m3();
    const Grid grid(m3, m3);
    ElementSet cells = nabla_cells(grid);
    cells.set(grid.cell(1, 2));
    cells.set(grid.cell(1, 3));  // lateral join (p, 1) missing
    CHECK_FALSE(satisfies_bi_ideal_conditions(grid, cells));
    CHECK_THROWS_AS(BiIdeal(m3, m3, cells), Error);
  }

  TEST_CASE("tensor_product sizes") {
    const auto t = tensor_product(chain(2), chain(2));
    CHECK(t.size() == 2);
    CHECK(t.element(0) == nabla_cells(t.grid()));
    CHECK(t.element(1).count() == 4);
    CHECK(tensor_product(powerset(2), diamond_m3()).size() == 25);
    CHECK(tensor_product(diamond_m3(), diamond_m3()).size() == 50);
  }

  TEST_CASE("both enumeration routes match the all-subsets oracle") {
    for (const auto& [a, b] : factor_pairs()) {
      if ((a.size() - 1) * (b.size() - 1) > 16) continue;
      const Grid grid(a, b);
      const auto expected = oracle::bi_ideals(a, b);
      std::vector<std::vector<bool>> sorted_expected = expected;
      std::sort(sorted_expected.begin(), sorted_expected.end());
      CHECK(as_bools(enumerate_bi_ideals_by_closure(grid, 1 << 20)) == sorted_expected);
      CHECK(as_bools(enumerate_bi_ideals_by_scan(grid, 1 << 20)) == sorted_expected);
      CHECK(tensor_product(a, b).size() == expected.size());
    }
  }

  TEST_CASE("tensor_product honours the size guard") {
    SizeGuard tight;
    tight.max_tensor_elements = 20;
    CHECK_THROWS_AS(tensor_product(diamond_m3(), diamond_m3(), tight), Error);
  }

  TEST_CASE("element 0 is the zero and describe reads back generators") {
    const auto m3 = diamond_m3();
    const auto t = tensor_product(m3, m3);
    CHECK(t.describe(0) == "0");
    CHECK(t.describe(t.pure(4, 4)) == "1⊗1");
    CHECK(t.describe(t.pure(1, 2)) == "p⊗q");
    const auto& l = t.lattice();
    for (Index e = 0; e < t.size(); ++e) {
      Index joined = 0;
      for (const auto& [a, b] : t.generators(e)) joined = l.join(joined, t.pure(a, b));
      CHECK(joined == e);
    }
  }

  TEST_CASE("bimorphism laws on every generator") {
    for (const auto& [a, b] : factor_pairs()) {
      const auto t = tensor_product(a, b);
      const auto& l = t.lattice();
      for (Index x = 0; x < a.size(); ++x) {
        CHECK(t.pure(x, 0) == t.zero());
        for (Index y0 = 0; y0 < b.size(); ++y0)
          for (Index y1 = 0; y1 < b.size(); ++y1)
            CHECK(l.join(t.pure(x, y0), t.pure(x, y1)) == t.pure(x, b.join(y0, y1)));
      }
      for (Index y = 0; y < b.size(); ++y) {
        CHECK(t.pure(0, y) == t.zero());
        for (Index x0 = 0; x0 < a.size(); ++x0)
          for (Index x1 = 0; x1 < a.size(); ++x1)
            CHECK(l.join(t.pure(x0, y), t.pure(x1, y)) == t.pure(a.join(x0, x1), y));
      }
    }
  }

  TEST_CASE("pure tensors generate the product") {
    for (const auto& [a, b] : factor_pairs()) {
      const auto t = tensor_product(a, b);
      std::vector<bool> reached(t.size(), false);
      reached[0] = true;
      for (bool grew = true; grew;) {
        grew = false;
        for (Index e = 0; e < t.size(); ++e) {
          if (!reached[e]) continue;
          for (Index x = 0; x < a.size(); ++x)
            for (Index y = 0; y < b.size(); ++y) {
              const Index f = t.lattice().join(e, t.pure(x, y));
              if (!reached[f]) reached[f] = grew = true;
            }
        }
      }
      CHECK(std::all_of(reached.begin(), reached.end(), [](bool r) { return r; }));
    }
  }

  TEST_CASE("transpose") {
    const auto m3 = diamond_m3();
    const auto n5 = pentagon_n5();
    CHECK(transpose(nabla(m3, n5)) == nabla(n5, m3));
    for (Index a = 0; a < m3.size(); ++a)
      for (Index b = 0; b < n5.size(); ++b) CHECK(transpose(pure_tensor(m3, n5, a, b)) == pure_tensor(n5, m3, b, a));
    const auto ab = tensor_product(m3, n5);
    const auto ba = tensor_product(n5, m3);
    const JoinMorphism t = transpose_morphism(ab, ba);
    CHECK(t.is_injective());
    CHECK(ab.size() == ba.size());
  }

  TEST_CASE("tensor_morphism identity and zero") {
    for (const auto& [a, b] : factor_pairs()) {
      const auto t = tensor_product(a, b);
      const JoinMorphism id = tensor_morphism(JoinMorphism::identity(a), JoinMorphism::identity(b), t, t);
      CHECK(id == JoinMorphism::identity(t.lattice()));
      const JoinMorphism zero = tensor_morphism(JoinMorphism::zero(a, a), JoinMorphism::zero(b, b), t, t);
      for (Index e = 0; e < t.size(); ++e) CHECK(zero(e) == t.zero());
    }
  }

  TEST_CASE("tensor_morphism sends a⊗b to f(a)⊗g(b) and composes") {
    const auto c2 = chain(2);
    const auto m3 = diamond_m3();
    const auto p3 = powerset(3);
    const auto source = tensor_product(m3, c2);
    const auto target = tensor_product(p3, c2);
    const JoinMorphism i(m3, p3, {0, 6, 5, 3, 7});
    const JoinMorphism f = tensor_morphism(i, JoinMorphism::identity(c2), source, target);
    for (Index a = 0; a < m3.size(); ++a)
      for (Index b = 0; b < c2.size(); ++b) CHECK(f(source.pure(a, b)) == target.pure(i(a), b));
  }

  TEST_CASE("epsilon on the reference homs") {
    const auto m3 = diamond_m3();
    const auto n5 = pentagon_n5();
    const auto ideals = std::make_shared<const IdealLattice>(n5);
    for (Index a = 1; a < m3.size(); ++a)
      for (Index b = 0; b < n5.size(); ++b) {
        std::vector<Index> values;
        for (Index x = 1; x < m3.size(); ++x) values.push_back(ideals->principal(m3.leq(x, a) ? b : 0));
        const AntitoneHom xi(m3, ideals, values);
        CHECK(epsilon(xi) == pure_tensor(m3, n5, a, b));
        CHECK(epsilon_inv(pure_tensor(m3, n5, a, b)) == xi);
      }
    const AntitoneHom zero(m3, ideals, std::vector<Index>(4, ideals->principal(0)));
    CHECK(epsilon(zero) == nabla(m3, n5));
    CHECK(epsilon_inv(nabla(m3, n5)) == zero);
    const AntitoneHom full(m3, ideals, std::vector<Index>(4, ideals->principal(n5.top())));
    CHECK(epsilon(full).size() == m3.size() * n5.size());
    CHECK(epsilon_inv(epsilon(full)) == full);
  }

  TEST_CASE("AntitoneHom rejects maps that do not turn joins into intersections") {
    const auto c3 = chain(3);
    const auto ideals = std::make_shared<const IdealLattice>(chain(2));
    // ξ(1) = {0}, ξ(2) = {0, 1}: ξ(1 ∨ 2) must be ξ(1) ∩ ξ(2).
    CHECK_THROWS_AS(AntitoneHom(c3, ideals, {0, 1}), Error);
  }

  TEST_CASE("enumerate_antitone_homs counts") {
    const std::vector<FiniteJoinSemilattice> bs = {chain(1), chain(3), diamond_m3(), pentagon_n5(), powerset(2)};
    for (const auto& b : bs) {
      const std::size_t ideals = IdealLattice(b).size();
      CHECK(enumerate_antitone_homs(chain(2), b).size() == ideals);
      CHECK(enumerate_antitone_homs(powerset(3), b).size() == ideals * ideals * ideals);
      CHECK(enumerate_antitone_homs(diamond_m3(), b).size() == tensor_product(diamond_m3(), b).size());
    }
  }

  TEST_CASE("M3 homs satisfy the pairwise intersection identity") {
    const auto m3 = diamond_m3();
    for (const auto& xi : enumerate_antitone_homs(m3, pentagon_n5())) {
      const auto& p = xi.section(1);
      const auto& q = xi.section(2);
      const auto& r = xi.section(3);
      CHECK((p & q) == (p & r));
      CHECK((p & q) == (q & r));
    }
  }
}
