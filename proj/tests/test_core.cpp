#include <doctest.h>

#include "flatlat/distributive.hpp"
#include "flatlat/error.hpp"
#include "flatlat/ideals.hpp"
#include "flatlat/morphism.hpp"
#include "oracles.hpp"

using namespace flatlat;

namespace {

Index at(const FiniteJoinSemilattice& s, std::string_view label) {
  const auto x = s.find(label);
  REQUIRE(x.has_value());
  return *x;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InternalDisagreement;
}

std::vector<FiniteJoinSemilattice> samples() {
  return {chain(1), chain(2), chain(4), powerset(2), powerset(3), diamond_m3(), pentagon_n5(), builtin("Pow(0)")};
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("from_covers builds M3 with the expected joins") {
    const auto m3 = from_covers({"0", "p", "q", "r", "1"},
                                {{"0", "p"}, {"0", "q"}, {"0", "r"}, {"p", "1"}, {"q", "1"}, {"r", "1"}});
    CHECK(m3.size() == 5);
    CHECK(m3.join(at(m3, "p"), at(m3, "q")) == at(m3, "1"));
    CHECK(m3 == diamond_m3());
  }

  TEST_CASE("from_covers on a singleton") {
    const auto s = from_covers({"x"}, {});
    CHECK(s.size() == 1);
    CHECK(s.join(0, 0) == 0);
    CHECK(s.name(0) == "x");
  }

  TEST_CASE("from_covers reports a missing join by name") {
    try {
      from_covers({"0", "a", "b"}, {{"0", "a"}, {"0", "b"}});
      FAIL("expected JoinMissing");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::JoinMissing);
      const std::string what = e.what();
      CHECK(what.find("'a'") != std::string::npos);
      CHECK(what.find("'b'") != std::string::npos);
    }
  }

  TEST_CASE("from_covers rejects malformed input") {
    CHECK(code_of([] { from_covers({"a", "b"}, {{"a", "b"}, {"b", "a"}}); }) == ErrorCode::CycleDetected);
    CHECK(code_of([] { from_covers({"a", "b"}, {}); }) == ErrorCode::NoLeastElement);
    CHECK(code_of([] { from_covers({"a", "a"}, {}); }) == ErrorCode::DuplicateLabel);
    CHECK(code_of([] { from_covers({"a"}, {{"a", "z"}}); }) == ErrorCode::UnknownLabel);
    SizeGuard tight;
    tight.max_size = 3;
    CHECK(code_of([&] { from_covers({"0", "1", "2", "3"}, {{"0", "1"}, {"1", "2"}, {"2", "3"}}, tight); }) ==
          ErrorCode::SizeGuardExceeded);
  }

  TEST_CASE("from_covers puts the least element at index 0") {
    const auto s = from_covers({"top", "bot"}, {{"bot", "top"}});
    CHECK(s.name(0) == "bot");
    CHECK(s.top() == 1);
  }

  TEST_CASE("from_table validates the operation") {
    // x ∨ y is not idempotent here.
    CHECK(code_of([] { FiniteJoinSemilattice::from_table({"0", "x"}, {0, 1, 1, 0}); }) == ErrorCode::InvalidTable);
    // a ∨ b = c but b ∨ c = 1: not associative.
    CHECK(code_of([] {
            FiniteJoinSemilattice::from_table({"0", "a", "b", "c", "1"},
                                              {0, 1, 2, 3, 4, 1, 1, 3, 3, 4, 2, 3, 2, 4, 4, 3, 3, 4, 3, 4, 4, 4, 4, 4, 4});
          }) == ErrorCode::InvalidTable);
  }

  TEST_CASE("builtin M3 and N5") {
    const auto m3 = builtin("M3");
    CHECK(m3.size() == 5);
    const Index p = at(m3, "p"), q = at(m3, "q"), r = at(m3, "r"), one = at(m3, "1");
    CHECK(m3.join(p, q) == one);
    CHECK(m3.join(p, r) == one);
    CHECK(m3.join(q, r) == one);
    CHECK(m3.less(p, m3.join(q, r)));

    const auto n5 = builtin("N5");
    const Index a = at(n5, "a"), b = at(n5, "b"), c = at(n5, "c");
    CHECK(n5.less(0, c));
    CHECK(n5.less(c, a));
    CHECK(n5.less(a, at(n5, "1")));
    CHECK(n5.less(b, at(n5, "1")));
    CHECK_FALSE(n5.leq(a, b));
    CHECK_FALSE(n5.leq(b, a));
  }

  TEST_CASE("builtin Pow and Chain") {
    CHECK(builtin("Pow(0)").size() == 1);
    CHECK(builtin("Pow(3)").size() == 8);
    CHECK(builtin("Chain(4)").size() == 4);
    CHECK(code_of([] { builtin("Chain(0)"); }) == ErrorCode::UnknownBuiltin);
    CHECK(code_of([] { builtin("Q8"); }) == ErrorCode::UnknownBuiltin);
    const auto p3 = powerset(3);
    CHECK(p3.join(1, 2) == 3);
    CHECK(p3.name(5) == "{0,2}");
  }

  TEST_CASE("meet") {
    const auto m3 = diamond_m3();
    CHECK(meet(m3, at(m3, "p"), at(m3, "q")) == 0);
    const auto n5 = pentagon_n5();
    CHECK(meet(n5, at(n5, "a"), at(n5, "b")) == 0);
    CHECK(meet(n5, at(n5, "a"), at(n5, "c")) == at(n5, "c"));
    for (const auto& s : samples()) {
      const auto le = oracle::order(s);
      for (Index x = 0; x < s.size(); ++x) {
        CHECK(s.meet(x, x) == x);
        for (Index y = 0; y < s.size(); ++y) CHECK(s.meet(x, y) == oracle::glb(le, x, y));
      }
    }
  }

  TEST_CASE("join table matches the brute-force least upper bound") {
    for (const auto& s : samples()) {
      const auto le = oracle::order(s);
      for (Index x = 0; x < s.size(); ++x)
        for (Index y = 0; y < s.size(); ++y) CHECK(s.join(x, y) == oracle::lub(le, x, y));
    }
  }

  TEST_CASE("join_irreducibles") {
    const auto m3 = diamond_m3();
    CHECK(join_irreducibles(m3) == std::vector<Index>{at(m3, "p"), at(m3, "q"), at(m3, "r")});
    const auto n5 = pentagon_n5();
    CHECK(join_irreducibles(n5) == std::vector<Index>{at(n5, "a"), at(n5, "b"), at(n5, "c")});
    CHECK(join_irreducibles(powerset(3)) == std::vector<Index>{1, 2, 4});
    CHECK(join_irreducibles(chain(1)).empty());
  }

  TEST_CASE("ideal lattice agrees with the brute-force oracle") {
    const auto c2 = chain(2);
    const IdealLattice i2(c2);
    REQUIRE(i2.size() == 2);
    CHECK(i2.ideal(0).count() == 1);
    CHECK(i2.ideal(1).count() == 2);

    for (const auto& s : samples()) {
      const IdealLattice ideals(s);
      const auto expected = oracle::ideals(s);
      REQUIRE(ideals.size() == expected.size());
      for (std::uint32_t mask : expected) {
        ElementSet set(s.size());
        for (Index x = 0; x < s.size(); ++x)
          if (mask >> x & 1) set.set(x);
        CHECK(ideals.find(set).has_value());
      }
      CHECK(is_isomorphic(ideals.lattice(), s));
      CHECK(ideals.principal_map().is_injective());
      for (Index x = 0; x < s.size(); ++x) CHECK(ideals.generator(ideals.principal(x)) == x);
    }
    CHECK(IdealLattice(diamond_m3()).size() == 5);
    CHECK(IdealLattice(powerset(2)).size() == 4);
  }

  TEST_CASE("is_distributive on the standard examples") {
    for (unsigned n = 1; n <= 6; ++n) CHECK(is_distributive(chain(n)).distributive);
    CHECK(is_distributive(powerset(3)).distributive);

    const auto m3 = diamond_m3();
    const auto v = is_distributive(m3);
    CHECK_FALSE(v.distributive);
    REQUIRE(v.failing_triple.has_value());
    // Lexicographically first failure: p ≤ q ∨ r.
    CHECK(*v.failing_triple == RefinementFailure{at(m3, "p"), at(m3, "q"), at(m3, "r")});
    REQUIRE(v.forbidden_copy.has_value());
    CHECK(v.forbidden_copy->pattern == Pattern::M3);

    const auto w = is_distributive(pentagon_n5());
    CHECK_FALSE(w.distributive);
    REQUIRE(w.forbidden_copy.has_value());
    CHECK(w.forbidden_copy->pattern == Pattern::N5);
  }

  TEST_CASE("the failing triple really has no refinement") {
    for (const auto& s : {diamond_m3(), pentagon_n5()}) {
      const auto f = *first_refinement_failure(s);
      CHECK(s.leq(f.a, s.join(f.b0, f.b1)));
      for (Index a0 = 0; a0 < s.size(); ++a0)
        for (Index a1 = 0; a1 < s.size(); ++a1)
          CHECK_FALSE((s.leq(a0, f.b0) && s.leq(a1, f.b1) && s.join(a0, a1) == f.a));
    }
  }

  TEST_CASE("1 <= p v q is not a failing triple of M3") {
    const auto m3 = diamond_m3();
    const Index p = at(m3, "p"), q = at(m3, "q"), one = at(m3, "1");
    CHECK(m3.join(p, q) == one);
    CHECK(m3.leq(p, p));
    CHECK(m3.leq(q, q));
  }

  TEST_CASE("distributivity agrees with the refinement oracle") {
    for (const auto& s : samples()) CHECK(is_distributive(s).distributive == oracle::distributive(s));
  }

  TEST_CASE("find_sublattice_copy") {
    const auto m3 = diamond_m3();
    CHECK(find_sublattice_copy(m3, Pattern::M3) == Quintuple{0, 1, 2, 3, 4});
    CHECK_FALSE(find_sublattice_copy(powerset(3), Pattern::M3).has_value());
    CHECK_FALSE(find_sublattice_copy(powerset(3), Pattern::N5).has_value());
    const auto n5 = pentagon_n5();
    CHECK_FALSE(find_sublattice_copy(n5, Pattern::M3).has_value());
    CHECK(find_sublattice_copy(n5, Pattern::N5) ==
          Quintuple{0, at(n5, "c"), at(n5, "b"), at(n5, "a"), at(n5, "1")});
  }

  TEST_CASE("find_sublattice_copy returns the first copy of the 5-tuple scan") {
    for (const auto& s : samples()) {
      for (auto [pattern, tag] : {std::pair{Pattern::M3, 0}, std::pair{Pattern::N5, 1}}) {
        const auto all = oracle::sublattice_copies(s, tag);
        const auto found = find_sublattice_copy(s, pattern);
        CHECK(found.has_value() == !all.empty());
        if (found) CHECK(*found == all.front());
      }
    }
  }

  TEST_CASE("all_embeddings") {
    const auto m3 = diamond_m3();
    const auto e = all_embeddings(chain(2), m3);
    REQUIRE(e.size() == 4);
    std::vector<std::string> images;
    for (const auto& f : e) images.push_back(m3.name(f(1)));
    CHECK(images == std::vector<std::string>{"p", "q", "r", "1"});

    const auto id = all_embeddings(chain(1), chain(1));
    REQUIRE(id.size() == 1);
    CHECK(id.front() == JoinMorphism::identity(chain(1)));

    CHECK(all_embeddings(m3, chain(3)).empty());
  }

  TEST_CASE("all_embeddings agrees with the all-maps oracle") {
    const std::vector<FiniteJoinSemilattice> small = {chain(1), chain(2), chain(3), powerset(2), diamond_m3(),
                                                      pentagon_n5()};
    for (const auto& a : small)
      for (const auto& b : small) CHECK(all_embeddings(a, b).size() == oracle::embedding_count(a, b));
    CHECK(all_embeddings(diamond_m3(), powerset(3)).size() == oracle::embedding_count(diamond_m3(), powerset(3)));
    CHECK(all_embeddings(pentagon_n5(), powerset(3)).size() == oracle::embedding_count(pentagon_n5(), powerset(3)));
  }

  TEST_CASE("JoinMorphism validation") {
    const auto c2 = chain(2);
    const auto m3 = diamond_m3();
    CHECK(code_of([&] { JoinMorphism(c2, m3, {1, 1}); }) == ErrorCode::NotAHom);
    CHECK(code_of([&] { JoinMorphism(m3, c2, {0, 1, 0, 0, 1}); }) == ErrorCode::NotAHom);
    const JoinMorphism collapse(m3, c2, {0, 1, 1, 1, 1});
    CHECK_FALSE(collapse.is_injective());
    CHECK(collapse.first_collision() == IndexPair{1, 2});
    CHECK(compose(collapse, JoinMorphism::identity(m3)) == collapse);
  }

  TEST_CASE("is_isomorphic") {
    const auto relabeled = from_covers({"0", "r", "p", "q", "1"},
                                       {{"0", "q"}, {"0", "p"}, {"0", "r"}, {"q", "1"}, {"p", "1"}, {"r", "1"}});
    CHECK(is_isomorphic(diamond_m3(), relabeled));
    CHECK_FALSE(is_isomorphic(diamond_m3(), pentagon_n5()));
    CHECK_FALSE(is_isomorphic(powerset(2), chain(4)));
    const auto f = find_isomorphism(diamond_m3(), relabeled);
    REQUIRE(f.has_value());
    CHECK(f->is_injective());
  }
}
