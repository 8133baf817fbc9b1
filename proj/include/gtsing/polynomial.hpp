#pragma once

#include "gtsing/rational.hpp"
#include "gtsing/tableau.hpp"
#include "gtsing/variables.hpp"

#include <compare>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace gtsing {

// Power product of tableau coordinates, stored as (variable id, exponent)
// pairs sorted by id with positive exponents.
class Monomial {
 public:
  using Power = std::pair<int, unsigned>;

  Monomial() = default;
  static Monomial variable(VarIndex v, unsigned exponent = 1);
  static Monomial from_powers(std::vector<Power> powers);

  const std::vector<Power>& powers() const { return powers_; }
  unsigned exponent_id(int id) const;
  unsigned degree() const;
  bool is_one() const { return powers_.empty(); }

  Monomial operator*(const Monomial& other) const;
  // Monomial with the power of `id` removed.
  Monomial without(int id) const;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Power> powers_;
};

class LinearFactor;

// Sparse multivariate polynomial over Q. No zero coefficients are stored, so
// equality of term maps is equality of polynomials.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;
  Polynomial(const Rational& constant);  // NOLINT: implicit scalar embedding
  Polynomial(int constant) : Polynomial(Rational(constant)) {}
  static Polynomial variable(VarIndex v);
  static Polynomial term(const Monomial& m, const Rational& coeff);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  unsigned total_degree() const;
  unsigned degree_in(int id) const;
  std::size_t size() const { return terms_.size(); }
  // Coefficient of the largest monomial; zero for the zero polynomial.
  Rational leading_coefficient() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  Polynomial operator-() const;
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial pow(unsigned e) const;

  // Pullback along the translation by m: x_{ki} -> x_{ki} - m_{ki}.
  Polynomial shift_subst(const Shift& m) const;
  // Pullback f o s^{-1}: x_{ki} -> x_{k,s_k(i)}.
  Polynomial permute(const RowPermutation& s) const;
  Polynomial derive(VarIndex v) const;
  Polynomial derive_id(int id) const;
  // Substitutes x_{id} -> value.
  Polynomial substitute(int id, const Rational& value) const;

  Rational evaluate(const PointAssignment& pt) const;

  // Largest variable id occurring, or -1 for constants.
  int max_variable_id() const;

  std::string str() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

// Degree-one polynomial in canonical scaling: the integer tuple
// (coefficients, constant) is primitive and the coefficient of the first
// variable is positive.
class LinearFactor {
 public:
  using Coeff = std::pair<int, Integer>;

  // Splits a degree-one polynomial as scalar * factor. Throws
  // std::invalid_argument when p is not of total degree exactly one.
  static std::pair<LinearFactor, Rational> from_polynomial(const Polynomial& p);

  // x_a - x_b + c, canonicalized (the scalar is +-1 and returned alongside).
  static std::pair<LinearFactor, Rational> difference(VarIndex a, VarIndex b, const Rational& c = 0);

  const std::vector<Coeff>& coefficients() const { return coeffs_; }
  const Integer& constant() const { return constant_; }
  Integer coefficient_id(int id) const;
  int leading_id() const { return coeffs_.front().first; }

  Polynomial to_polynomial() const;
  Rational evaluate(const PointAssignment& pt) const;
  std::pair<LinearFactor, Rational> shift_subst(const Shift& m) const;
  std::pair<LinearFactor, Rational> permute(const RowPermutation& s) const;

  std::string str() const;

  friend bool operator==(const LinearFactor&, const LinearFactor&) = default;
  friend bool operator<(const LinearFactor& a, const LinearFactor& b);

 private:
  LinearFactor() = default;
  std::vector<Coeff> coeffs_;
  Integer constant_;
};

// q with q * f == p, or nullopt when the remainder is nonzero. Synthetic
// division along the first variable of f.
std::optional<Polynomial> divide_exact(const Polynomial& p, const LinearFactor& f);

}  // namespace gtsing
