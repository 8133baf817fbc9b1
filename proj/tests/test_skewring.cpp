#include "helpers.hpp"

#include <doctest.h>

using namespace gtsing;
using namespace gtsing::test;

namespace {

SkewElement random_element(std::mt19937_64& rng, int n) {
  SkewElement a;
  for (int t = 0; t < 2; ++t) a.add_term(random_shift(rng, n), random_rf(rng, n));
  return a;
}

}  // namespace

TEST_SUITE("skewring") {
  TEST_CASE("composition examples") {
    const Shift s = Shift::unit({1, 1});
    const Polynomial x = var(1, 1);
    const SkewElement a = SkewElement::term(s, x);
    CHECK(compose(a, a) == SkewElement::term(s + s, x * (x - cst(1))));
    CHECK(compose(SkewElement::scalar(x), SkewElement::scalar(var(2, 1))) == SkewElement::scalar(x * var(2, 1)));
    CHECK(compose(a, SkewElement::unit()) == a);
    CHECK(star(a, SkewElement::unit()) == a);
  }

  TEST_CASE("ring laws on random elements") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 15; ++t) {
      const auto a = random_element(rng, 3);
      const auto b = random_element(rng, 3);
      const auto c = random_element(rng, 3);
      CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
      CHECK(compose(a, b + c) == compose(a, b) + compose(a, c));
      CHECK(skew_zero_test(compose(a, b) - star(b, a)));
      CHECK(skew_zero_test(a - a));
    }
  }

  TEST_CASE("action on functions") {
    const Polynomial x = var(1, 1);
    CHECK(act_on_function(SkewElement::term(Shift::unit({1, 1}), 1), x) == RationalFunction(x - cst(1)));
    CHECK(act_on_function(SkewElement::scalar(x), var(2, 1)) == RationalFunction(x * var(2, 1)));
    CHECK(act_on_function(SkewElement(), x).is_zero());
  }

  TEST_CASE("action is a left action") {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 15; ++t) {
      const auto a = random_element(rng, 3);
      const auto b = random_element(rng, 3);
      const RationalFunction f = random_poly(rng, 3);
      CHECK(equivalent(act_on_function(compose(a, b), f), act_on_function(a, act_on_function(b, f))));
    }
  }

  TEST_CASE("permutations act by automorphisms") {
    const auto swap = RowPermutation::transposition(3, 2, 1, 2);
    CHECK(permute_element(swap, SkewElement::term(Shift::unit({2, 1}), var(2, 1))) ==
          SkewElement::term(Shift::unit({2, 2}), var(2, 2)));
    std::mt19937_64 rng(31);
    for (int t = 0; t < 15; ++t) {
      const auto a = random_element(rng, 3);
      const auto b = random_element(rng, 3);
      CHECK(permute_element(RowPermutation::identity(3), a) == a);
      CHECK(permute_element(swap, compose(a, b)) == compose(permute_element(swap, a), permute_element(swap, b)));
    }
    const SkewElement sym = SkewElement::scalar(var(2, 1) + var(2, 2));
    CHECK(permute_element(swap, sym) == sym);
  }

  TEST_CASE("invariance and singularity order") {
    const SingularSpec spec = demo_singular_spec(3);
    const ClusterAction cl = cluster_action(spec);
    const GtHomomorphism phi(3);
    CHECK(is_invariant(phi.matrix_unit(1, 2), cl));
    CHECK_FALSE(is_invariant(SkewElement::scalar(var(2, 1)), cl));
    const ClusterAction untouched{3, 2, {}};
    CHECK(is_invariant(SkewElement::scalar(var(2, 1)), untouched));
    CHECK(cluster_singularity_order(phi.matrix_unit(2, 3), cl) == 1);
    CHECK(cluster_singularity_order(SkewElement::scalar(var(2, 1) * var(1, 1)), cl) == 0);
    const RationalFunction d = inv(var(2, 1) - var(2, 2));
    CHECK(cluster_singularity_order(SkewElement::scalar(d * d), cl) == 2);
  }

  TEST_CASE("zero test") {
    CHECK_FALSE(skew_zero_test(SkewElement::term(Shift::unit({1, 1}), var(1, 1))));
    CHECK(skew_zero_test(SkewElement::term(Shift::unit({1, 1}), 0)));
  }
}
