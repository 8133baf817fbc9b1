#include "gtsing/rational_function.hpp"

#include <sstream>
#include <stdexcept>

namespace gtsing {

RationalFunction::RationalFunction(const Polynomial& p) : numerator_(p) { normalize(); }

RationalFunction::RationalFunction(Rational scalar, Polynomial numerator, Denominator denominator)
    : scalar_(std::move(scalar)), numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
  if (scalar_ == 0) numerator_ = Polynomial{};
  normalize();
}

RationalFunction RationalFunction::inverse_of_linear(const Polynomial& f) {
  auto [factor, scalar] = LinearFactor::from_polynomial(f);
  Denominator den;
  den[factor] = 1;
  return RationalFunction(Rational(1 / scalar), Polynomial(1), std::move(den));
}

void RationalFunction::normalize() {
  if (numerator_.is_zero()) {
    scalar_ = 1;
    denominator_.clear();
    return;
  }
  for (auto it = denominator_.begin(); it != denominator_.end();) {
    while (it->second > 0) {
      auto q = divide_exact(numerator_, it->first);
      if (!q) break;
      numerator_ = std::move(*q);
      --it->second;
    }
    it = (it->second == 0) ? denominator_.erase(it) : std::next(it);
  }
  const Rational lead = numerator_.leading_coefficient();
  if (lead != 1) {
    numerator_ *= Rational(1 / lead);
    scalar_ *= lead;
  }
}

Polynomial RationalFunction::denominator_polynomial() const {
  Polynomial d(1);
  for (const auto& [f, e] : denominator_) d = d * f.to_polynomial().pow(e);
  return d;
}

Polynomial RationalFunction::as_polynomial() const {
  if (!denominator_.empty()) throw std::logic_error("rational function has a denominator: " + str());
  return scaled_numerator();
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  if (denominator_ == other.denominator_) {
    numerator_ = numerator_ * scalar_ + other.numerator_ * other.scalar_;
    scalar_ = 1;
    normalize();
    return *this;
  }
  // Least common multiset of factors.
  Denominator common = denominator_;
  for (const auto& [f, e] : other.denominator_) {
    auto& slot = common[f];
    slot = std::max(slot, e);
  }
  auto cofactor = [&](const Denominator& own) {
    Polynomial c(1);
    for (const auto& [f, e] : common) {
      auto it = own.find(f);
      const unsigned have = (it == own.end()) ? 0u : it->second;
      if (e > have) c = c * f.to_polynomial().pow(e - have);
    }
    return c;
  };
  numerator_ = numerator_ * cofactor(denominator_) * scalar_ + other.numerator_ * cofactor(other.denominator_) * other.scalar_;
  scalar_ = 1;
  denominator_ = std::move(common);
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& other) { return *this += -other; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& other) {
  if (is_zero()) return *this;
  if (other.is_zero()) return *this = RationalFunction{};
  numerator_ = numerator_ * other.numerator_;
  scalar_ *= other.scalar_;
  for (const auto& [f, e] : other.denominator_) denominator_[f] += e;
  normalize();
  return *this;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  if (!r.is_zero()) r.scalar_ = -r.scalar_;
  return r;
}

RationalFunction RationalFunction::shift_subst(const Shift& m) const {
  if (m.is_identity() || is_zero()) return *this;
  Rational scalar = scalar_;
  Denominator den;
  for (const auto& [f, e] : denominator_) {
    auto [g, c] = f.shift_subst(m);
    den[g] += e;
    scalar /= power(c, e);
  }
  return RationalFunction(scalar, numerator_.shift_subst(m), std::move(den));
}

RationalFunction RationalFunction::permute(const RowPermutation& s) const {
  if (is_zero()) return *this;
  Rational scalar = scalar_;
  Denominator den;
  for (const auto& [f, e] : denominator_) {
    auto [g, c] = f.permute(s);
    den[g] += e;
    scalar /= power(c, e);
  }
  return RationalFunction(scalar, numerator_.permute(s), std::move(den));
}

RationalFunction RationalFunction::derive_id(int id) const {
  if (is_zero()) return *this;
  // Only factors L_j depending on x_id move. With P = prod of those,
  // d(N / D) = (N' P - N sum_j e_j c_j P / L_j) / (D P).
  std::vector<std::pair<Polynomial, Rational>> moving;
  for (const auto& [f, e] : denominator_) {
    const Integer c = f.coefficient_id(id);
    if (c != 0) moving.emplace_back(f.to_polynomial(), Rational(c * e));
  }
  Polynomial lead_term = numerator_.derive_id(id);
  if (moving.empty()) return RationalFunction(scalar_, std::move(lead_term), denominator_);
  Polynomial all_moving(1);
  for (const auto& [f, w] : moving) all_moving = all_moving * f;
  Polynomial correction;
  for (std::size_t j = 0; j < moving.size(); ++j) {
    Polynomial others(1);
    for (std::size_t l = 0; l < moving.size(); ++l)
      if (l != j) others = others * moving[l].first;
    correction += others * moving[j].second;
  }
  Polynomial num = lead_term * all_moving - numerator_ * correction;
  Denominator den = denominator_;
  for (auto& [f, e] : den)
    if (f.coefficient_id(id) != 0) ++e;
  return RationalFunction(scalar_, std::move(num), std::move(den));
}

RationalFunction RationalFunction::derive(VarIndex v) const { return derive_id(v.id()); }

std::optional<Rational> RationalFunction::evaluate(const PointAssignment& pt) const {
  Rational den = 1;
  for (const auto& [f, e] : denominator_) {
    const Rational v = f.evaluate(pt);
    if (v == 0) return std::nullopt;
    den *= power(v, e);
  }
  return scalar_ * numerator_.evaluate(pt) / den;
}

bool RationalFunction::is_holomorphic_at(const PointAssignment& pt) const {
  for (const auto& [f, e] : denominator_)
    if (f.evaluate(pt) == 0) return false;
  return true;
}

std::string RationalFunction::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  const bool unit = (scalar_ == 1);
  const bool num_one = numerator_ == Polynomial(1);
  if (num_one) {
    os << to_string(scalar_);
  } else {
    if (scalar_ == -1)
      os << "-";
    else if (!unit)
      os << to_string(scalar_) << "*";
    if (numerator_.size() > 1 && (!unit || !denominator_.empty()))
      os << "(" << numerator_.str() << ")";
    else
      os << numerator_.str();
  }
  for (const auto& [f, e] : denominator_) {
    os << "/" << f.str();
    if (e > 1) os << "^" << e;
  }
  return os.str();
}

bool equivalent(const RationalFunction& a, const RationalFunction& b) {
  return a.scaled_numerator() * b.denominator_polynomial() == b.scaled_numerator() * a.denominator_polynomial();
}

std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << f.str(); }

}  // namespace gtsing
