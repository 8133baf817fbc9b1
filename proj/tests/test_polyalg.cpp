#include "helpers.hpp"

#include <doctest.h>

using namespace gtsing;
using namespace gtsing::test;

TEST_SUITE("polyalg") {
  TEST_CASE("rationals parse and print in lowest terms") {
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational(" -7 ")) == "-7");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  }

  TEST_CASE("ring operations") {
    const Polynomial x = var(2, 1);
    const Polynomial y = var(2, 2);
    CHECK((x + y) + (x - y) == cst(2) * x);
    CHECK((x - y) * (x + y) == x * x - y * y);
    CHECK((x * Polynomial()).is_zero());
    CHECK((x - x).is_zero());
    CHECK(x.pow(3) == x * x * x);
  }

  TEST_CASE("ring axioms on random polynomials") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 60; ++t) {
      const auto a = random_poly(rng, 3);
      const auto b = random_poly(rng, 3);
      const auto c = random_poly(rng, 3);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      const auto pt = random_point(rng, 3);
      CHECK((a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt));
    }
  }

  TEST_CASE("shift substitution") {
    const Shift s11 = Shift::unit({1, 1});
    const Polynomial x = var(1, 1);
    CHECK(x.shift_subst(s11) == x - cst(1));
    CHECK((x * x).shift_subst(s11) == x * x - cst(2) * x + cst(1));
    CHECK(var(2, 1).shift_subst(s11) == var(2, 1));
  }

  TEST_CASE("shift substitution is an action") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 40; ++t) {
      const auto f = random_poly(rng, 3);
      const auto a = random_shift(rng, 3);
      const auto b = random_shift(rng, 3);
      CHECK(f.shift_subst(a).shift_subst(b) == f.shift_subst(a + b));
      CHECK(f.shift_subst(a).shift_subst(a.inverse()) == f);
    }
  }

  TEST_CASE("permutations") {
    const auto swap = RowPermutation::transposition(3, 2, 1, 2);
    CHECK(var(2, 1).permute(swap) == var(2, 2));
    CHECK((var(2, 1) - var(2, 2)).permute(swap) == -(var(2, 1) - var(2, 2)));
    CHECK((var(2, 1) + var(2, 2)).permute(swap) == var(2, 1) + var(2, 2));
  }

  TEST_CASE("permutation action composes") {
    std::mt19937_64 rng(3);
    const auto s = RowPermutation::on_row(3, 3, {2, 3, 1});
    const auto t = RowPermutation::transposition(3, 3, 1, 2);
    for (int q = 0; q < 20; ++q) {
      const auto f = random_poly(rng, 3);
      CHECK(f.permute(s).permute(t) == f.permute(s.compose(t)));
    }
  }

  TEST_CASE("derivatives") {
    const Polynomial x = var(2, 1);
    const Polynomial y = var(2, 2);
    CHECK((x * x * y).derive({2, 1}) == cst(2) * x * y);
    CHECK(y.derive({2, 1}).is_zero());
    CHECK(cst(5).derive({2, 1}).is_zero());
  }

  TEST_CASE("exact division by a linear factor") {
    const Polynomial x = var(3, 1);
    const Polynomial y = var(3, 2);
    const Polynomial z = var(3, 3);
    const auto xy = LinearFactor::from_polynomial(x - y);
    auto q = divide_exact(x * x - y * y, xy.first);
    REQUIRE(q);
    CHECK(*q * xy.second == x + y);
    CHECK_FALSE(divide_exact(x * x + y * y, xy.first));
    const auto yz = LinearFactor::from_polynomial(y - z);
    q = divide_exact((x - y) * (x - z) * (y - z), yz.first);
    REQUIRE(q);
    CHECK(*q * yz.second == (x - y) * (x - z));
  }

  TEST_CASE("division undoes multiplication") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 40; ++t) {
      const auto q = random_poly(rng, 3);
      const Polynomial lin = var(2, 1) - cst(2) * var(3, 2) + cst(t % 5 - 2, 3);
      const auto [f, scale] = LinearFactor::from_polynomial(lin);
      auto back = divide_exact(q * f.to_polynomial(), f);
      REQUIRE(back);
      CHECK(*back == q);
    }
  }

  TEST_CASE("rational function arithmetic and normalization") {
    const Polynomial x = var(2, 1);
    const Polynomial y = var(2, 2);
    CHECK((inv(x - y) + inv(y - x)).is_zero());
    CHECK(RationalFunction(x) * inv(x - y) * RationalFunction(x - y) == RationalFunction(x));
    CHECK(RationalFunction(x * x - y * y) * inv(x - y) == RationalFunction(x + y));
    CHECK(RationalFunction((x - y) * (x - y)) * inv(x - y) == RationalFunction(x - y));
    CHECK(RationalFunction(x * x - y * y) * inv(x - y) * inv(x + y) == RationalFunction(1));
    const RationalFunction kept = RationalFunction(x) * inv(x - y);
    CHECK_FALSE(kept.is_polynomial());
    CHECK(kept.numerator() == x);
  }

  TEST_CASE("normal form is canonical and value preserving") {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 30; ++t) {
      const auto a = random_rf(rng, 3);
      const auto b = random_rf(rng, 3);
      const auto pt = random_point(rng, 3);
      const auto va = a.evaluate(pt);
      const auto vb = b.evaluate(pt);
      if (!va || !vb) continue;
      CHECK(*(a + b).evaluate(pt) == *va + *vb);
      CHECK(*(a * b).evaluate(pt) == *va * *vb);
      CHECK(a + b == b + a);
      CHECK(equivalent(a * b, b * a));
      CHECK((a - a).is_zero());
    }
  }

  TEST_CASE("rational function derivatives") {
    const Polynomial x = var(2, 1);
    const Polynomial y = var(2, 2);
    CHECK(inv(x - y).derive({2, 1}) == RationalFunction(cst(-1)) * inv(x - y) * inv(x - y));
    CHECK((RationalFunction(x) * inv(x - y)).derive({2, 2}) == RationalFunction(x) * inv(x - y) * inv(x - y));
    const Polynomial p = x * x * y + cst(3) * y;
    CHECK(RationalFunction(p).derive({2, 1}) == RationalFunction(p.derive({2, 1})));
  }

  TEST_CASE("evaluation and poles") {
    PointAssignment pt(3);
    CHECK_FALSE(inv(var(2, 1) - var(2, 2)).evaluate(pt));
    pt.set({2, 1}, 1);
    pt.set({2, 2}, 1);
    const Polynomial x = var(2, 1);
    const Polynomial y = var(2, 2);
    CHECK(*(RationalFunction(x * x - y * y) * inv(x - y)).evaluate(pt) == 2);
    pt.set({1, 1}, rat(3, 2));
    CHECK(*RationalFunction(var(1, 1) + cst(1)).evaluate(pt) == rat(5, 2));
  }
}
