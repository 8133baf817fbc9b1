#pragma once

#include "gtsing/polynomial.hpp"

#include <map>
#include <optional>
#include <string>

namespace gtsing {

// scalar * numerator / prod(factor^multiplicity), every factor linear.
//
// Stored forms are normalized: no denominator factor divides the numerator,
// the numerator's leading coefficient is one, and zero is the empty numerator
// with scalar one and no factors. Normalized forms are canonical, so
// operator== is equality of functions.
class RationalFunction {
 public:
  using Denominator = std::map<LinearFactor, unsigned>;

  RationalFunction() = default;
  RationalFunction(const Polynomial& p);  // NOLINT: implicit embedding
  RationalFunction(const Rational& c) : RationalFunction(Polynomial(c)) {}  // NOLINT
  RationalFunction(int c) : RationalFunction(Polynomial(c)) {}               // NOLINT
  RationalFunction(Rational scalar, Polynomial numerator, Denominator denominator);

  // 1 / factor-polynomial; throws unless f has degree one.
  static RationalFunction inverse_of_linear(const Polynomial& f);

  const Rational& scalar() const { return scalar_; }
  const Polynomial& numerator() const { return numerator_; }
  const Denominator& denominator() const { return denominator_; }
  bool is_zero() const { return numerator_.is_zero(); }
  bool is_polynomial() const { return denominator_.empty(); }
  // scalar * numerator
  Polynomial scaled_numerator() const { return numerator_ * scalar_; }
  // prod factor^multiplicity, without the scalar
  Polynomial denominator_polynomial() const;
  // Polynomial value; throws std::logic_error if a denominator remains.
  Polynomial as_polynomial() const;

  RationalFunction& operator+=(const RationalFunction& other);
  RationalFunction& operator-=(const RationalFunction& other);
  RationalFunction& operator*=(const RationalFunction& other);
  RationalFunction operator-() const;
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

  RationalFunction shift_subst(const Shift& m) const;
  RationalFunction permute(const RowPermutation& s) const;
  RationalFunction derive(VarIndex v) const;
  RationalFunction derive_id(int id) const;

  // Value at pt, or nullopt when a denominator factor vanishes there.
  std::optional<Rational> evaluate(const PointAssignment& pt) const;
  bool is_holomorphic_at(const PointAssignment& pt) const;

  std::string str() const;

 private:
  void normalize();

  Rational scalar_ = 1;
  Polynomial numerator_;
  Denominator denominator_;
};

// Cross-multiplication test: num(a) den(b) == num(b) den(a).
bool equivalent(const RationalFunction& a, const RationalFunction& b);

std::ostream& operator<<(std::ostream& os, const RationalFunction& f);

}  // namespace gtsing
