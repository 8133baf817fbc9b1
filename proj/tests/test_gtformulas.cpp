#include "helpers.hpp"

#include <doctest.h>

#include <array>

using namespace gtsing;
using namespace gtsing::test;

TEST_SUITE("gtformulas") {
  TEST_CASE("word parsing") {
    const auto w = parse_word("E12,E21");
    REQUIRE(w.size() == 2);
    CHECK(w[0].matrix_unit() == std::pair{1, 2});
    CHECK(parse_word("E1_2")[0].matrix_unit() == std::pair{1, 2});
    CHECK(format_word(parse_word("E23, E11")) == "E23,E11");
    CHECK(parse_word("").empty());
    CHECK_THROWS_AS(parse_word("F12"), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("E15")[0].validate(3), std::out_of_range);
  }

  TEST_CASE("Chevalley images for gl_2") {
    const GtHomomorphism phi(2);
    const Shift down = Shift::unit({1, 1}).inverse();
    CHECK(phi.image(GeneratorSymbol::raising(1)) ==
          SkewElement::term(down, cst(-1) * (var(1, 1) - var(2, 1)) * (var(1, 1) - var(2, 2))));
    CHECK(phi.image(GeneratorSymbol::lowering(1)) == SkewElement::term(Shift::unit({1, 1}), 1));
    CHECK(phi.image(GeneratorSymbol::cartan(2)) == SkewElement::scalar(var(2, 1) + var(2, 2) + cst(1) - var(1, 1)));
    CHECK(phi.matrix_unit(1, 1) == SkewElement::scalar(var(1, 1)));
  }

  TEST_CASE("matrix units by commutators") {
    const GtHomomorphism phi(3);
    CHECK(phi.matrix_unit(1, 3) == compose(phi.matrix_unit(2, 3), phi.matrix_unit(1, 2)) -
                                       compose(phi.matrix_unit(1, 2), phi.matrix_unit(2, 3)));
    CHECK(phi.matrix_unit_via(3, 1, 2) == phi.matrix_unit(3, 1));
    const GtHomomorphism phi4(4);
    for (int s = 1; s <= 3; ++s)
      for (int t = 1; t <= 3; ++t)
        if (s != t) CHECK(phi.matrix_unit_via(s, t, 6 - s - t) == phi.matrix_unit(s, t));
    for (auto [s, t, r] : {std::array{1, 4, 2}, std::array{4, 1, 3}, std::array{2, 4, 3}, std::array{3, 1, 2},
                           std::array{4, 2, 1}})
      CHECK(phi4.matrix_unit_via(s, t, r) == phi4.matrix_unit(s, t));
  }

  TEST_CASE("words") {
    const GtHomomorphism phi(2);
    const SkewElement w = phi.word(parse_word("E12,E21"));
    CHECK(w == compose(phi.matrix_unit(2, 1), phi.matrix_unit(1, 2)));
    CHECK(w == SkewElement::scalar(cst(-1) * (var(1, 1) - cst(1) - var(2, 1)) * (var(1, 1) - cst(1) - var(2, 2))));
    const GtHomomorphism phi3(3);
    const auto w1 = parse_word("E12,E23");
    const auto w2 = parse_word("E32");
    auto joined = w1;
    joined.insert(joined.end(), w2.begin(), w2.end());
    CHECK(phi3.word(joined) == compose(phi3.word(w2), phi3.word(w1)));
    CHECK(phi3.word({}) == SkewElement::unit());
  }

  TEST_CASE("commutator identity") {
    const GtHomomorphism phi(2);
    const auto e12 = GeneratorSymbol::unit(1, 2);
    const auto e21 = GeneratorSymbol::unit(2, 1);
    CHECK(phi_bracket(phi.image(e12), phi.image(e21)) ==
          SkewElement::scalar(cst(2) * var(1, 1) - var(2, 1) - var(2, 2) - cst(1)));
    CHECK(verify_commutator_identity(phi, e12, e21));
    CHECK(verify_commutator_identity(phi, GeneratorSymbol::unit(1, 1), GeneratorSymbol::unit(2, 2)));
    for (int a = 1; a <= 2; ++a)
      for (int b = 1; b <= 2; ++b)
        for (int c = 1; c <= 2; ++c)
          for (int d = 1; d <= 2; ++d)
            CHECK(verify_commutator_identity(phi, GeneratorSymbol::unit(a, b), GeneratorSymbol::unit(c, d)));
  }

  TEST_CASE("sign-flipped raising operators break the identity") {
    const GtHomomorphism bad(2, GtHomomorphism::Options{true});
    CHECK_FALSE(verify_commutator_identity(bad, GeneratorSymbol::unit(1, 2), GeneratorSymbol::unit(2, 1)));
  }

  TEST_CASE("Serre relations") {
    const GtHomomorphism phi(3);
    const SkewElement e12 = phi.matrix_unit(1, 2);
    const SkewElement e23 = phi.matrix_unit(2, 3);
    const SkewElement e21 = phi.matrix_unit(2, 1);
    const SkewElement e32 = phi.matrix_unit(3, 2);
    CHECK(skew_zero_test(phi_bracket(e12, phi_bracket(e12, e23))));
    CHECK(skew_zero_test(phi_bracket(e23, phi_bracket(e23, e12))));
    CHECK(skew_zero_test(phi_bracket(e21, phi_bracket(e21, e32))));
    CHECK(skew_zero_test(phi_bracket(e12, e32)));
  }

  TEST_CASE("images are invariant under the row permutations") {
    const GtHomomorphism phi(3);
    for (int s = 1; s <= 3; ++s)
      for (int t = 1; t <= 3; ++t) {
        CHECK(permute_element(RowPermutation::transposition(3, 2, 1, 2), phi.matrix_unit(s, t)) == phi.matrix_unit(s, t));
        CHECK(permute_element(RowPermutation::on_row(3, 3, {2, 3, 1}), phi.matrix_unit(s, t)) == phi.matrix_unit(s, t));
      }
  }

  TEST_CASE("central characters") {
    const GtHomomorphism phi(2);
    CHECK(gt_subalgebra_generator(phi, 1, 1) == SkewElement::scalar(var(1, 1)));
    CHECK(gt_subalgebra_generator(phi, 2, 1) == SkewElement::scalar(var(2, 1) + var(2, 2) + cst(1)));
    auto c22 = verify_central_character(phi, 2, 2);
    CHECK(c22.ok);
    CHECK(c22.value.permute(RowPermutation::transposition(2, 2, 1, 2)) == c22.value);
    CHECK(verify_central_character(phi, 1, 1).value == var(1, 1));
    const GtHomomorphism phi3(3);
    const auto c32 = verify_central_character(phi3, 3, 2);
    CHECK(c32.ok);
    CHECK(c32.value.permute(RowPermutation::on_row(3, 3, {3, 1, 2})) == c32.value);
    CHECK(verify_central_character(phi3, 2, 1).value == var(2, 1) + var(2, 2) + cst(1));
  }
}
