#include "helpers.hpp"

#include <doctest.h>

using namespace gtsing;
using namespace gtsing::test;

TEST_SUITE("tableaux") {
  TEST_CASE("variable indexing") {
    CHECK(VarIndex{1, 1}.id() == 0);
    CHECK(VarIndex{3, 2}.id() == 4);
    for (int id = 0; id < variable_count(5); ++id) CHECK(VarIndex::from_id(id).id() == id);
    CHECK(variable_name({2, 1}) == "x21");
  }

  TEST_CASE("shift group") {
    const Shift s11 = Shift::unit({1, 1});
    CHECK((s11 + s11).offset({1, 1}) == 2);
    CHECK(Shift::unit({2, 1}).inverse().offset({2, 1}) == -1);
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
      const Shift a = random_shift(rng, 4);
      CHECK((a + a.inverse()).is_identity());
    }
  }

  TEST_CASE("shifts act on points") {
    const TableauPoint o = demo_singular_point(3);
    const TableauPoint moved = apply_shift(o, Shift::unit({1, 1}));
    CHECK(moved[{1, 1}] == o[{1, 1}] + 1);
    CHECK(apply_shift(o, Shift{}) == o);
    const Shift m = Shift::from_entries({{VarIndex{2, 1}.id(), 3}, {VarIndex{2, 2}.id(), -2}});
    CHECK(apply_shift(apply_shift(o, m), m.inverse()) == o);
  }

  TEST_CASE("conjugation of shifts") {
    const auto swap = RowPermutation::transposition(3, 2, 1, 2);
    CHECK(conjugate_shift(swap, Shift::unit({2, 1})) == Shift::unit({2, 2}));
    const Shift m = Shift::from_entries({{VarIndex{1, 1}.id(), 1}, {VarIndex{2, 1}.id(), -1}});
    CHECK(conjugate_shift(RowPermutation::identity(3), m) == m);
    const auto cyc = RowPermutation::on_row(4, 3, {2, 3, 1});
    const Shift w = Shift::from_entries({{VarIndex{3, 1}.id(), 1}, {VarIndex{3, 2}.id(), 2}});
    CHECK(conjugate_shift(cyc.inverse(), conjugate_shift(cyc, w)) == w);
  }

  TEST_CASE("conjugation matches the function actions") {
    // permute then shift equals shift by the conjugate then permute
    std::mt19937_64 rng(2);
    const auto s = RowPermutation::on_row(4, 3, {3, 1, 2});
    for (int t = 0; t < 20; ++t) {
      const auto f = random_poly(rng, 4);
      const Shift m = random_shift(rng, 4);
      CHECK(f.permute(s).shift_subst(conjugate_shift(s, m)) == f.shift_subst(m).permute(s));
    }
  }

  TEST_CASE("point classification") {
    CHECK(std::holds_alternative<Generic>(classify_point(demo_generic_point(3))));
    const auto cls = classify_point(demo_singular_point(3));
    REQUIRE(std::holds_alternative<SingularSpec>(cls));
    CHECK(std::get<SingularSpec>(cls).row == 2);
    CHECK(std::get<SingularSpec>(cls).cluster == std::vector<int>{1, 2});
    TableauPoint bad = demo_generic_point(3);
    bad.point.set({2, 1}, 1);
    bad.point.set({2, 2}, 0);
    CHECK(std::holds_alternative<Unsupported>(classify_point(bad)));
    const auto four = classify_point(demo_singular_point(4));
    REQUIRE(std::holds_alternative<SingularSpec>(four));
    CHECK(std::get<SingularSpec>(four).p() == 3);
  }

  TEST_CASE("singular specs are validated") {
    const TableauPoint o = demo_singular_point(3);
    CHECK_NOTHROW(make_singular_spec(o, 2, {1, 2}));
    CHECK_THROWS_AS(make_singular_spec(o, 3, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(make_singular_spec(o, 2, {1}), std::invalid_argument);
    CHECK_THROWS_AS(make_singular_spec(demo_generic_point(3), 2, {1, 2}), std::invalid_argument);
  }

  TEST_CASE("cluster pairs") {
    CHECK(z_pairs(2) == std::vector<ClusterPair>{{1, 2}});
    CHECK(z_pairs(3) == std::vector<ClusterPair>{{1, 2}, {1, 3}, {2, 3}});
    CHECK(z_pairs(4).size() == 6);
  }

  TEST_CASE("point files") {
    const TableauPoint o = demo_singular_point(3);
    CHECK(parse_point(format_point(o), 3) == o);
    CHECK_THROWS_AS(parse_point("1,1=1/3\n", 3), std::invalid_argument);
    CHECK_THROWS_AS(parse_point("4,1=0\n", 3), std::invalid_argument);
    CHECK_THROWS_AS(parse_point("1;1=0\n", 3), std::invalid_argument);
  }
}
