#include "gtsing/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gtsing {

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(VarIndex v, unsigned exponent) {
  Monomial m;
  if (exponent > 0) m.powers_.emplace_back(v.id(), exponent);
  return m;
}

Monomial Monomial::from_powers(std::vector<Power> powers) {
  std::sort(powers.begin(), powers.end());
  Monomial m;
  for (const auto& [id, e] : powers) {
    if (e == 0) continue;
    if (!m.powers_.empty() && m.powers_.back().first == id)
      m.powers_.back().second += e;
    else
      m.powers_.emplace_back(id, e);
  }
  return m;
}

unsigned Monomial::exponent_id(int id) const {
  auto it = std::lower_bound(powers_.begin(), powers_.end(), Power{id, 0u});
  return (it != powers_.end() && it->first == id) ? it->second : 0u;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& pw : powers_) d += pw.second;
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  r.powers_.reserve(powers_.size() + other.powers_.size());
  auto a = powers_.begin();
  auto b = other.powers_.begin();
  while (a != powers_.end() || b != other.powers_.end()) {
    if (b == other.powers_.end() || (a != powers_.end() && a->first < b->first)) {
      r.powers_.push_back(*a++);
    } else if (a == powers_.end() || b->first < a->first) {
      r.powers_.push_back(*b++);
    } else {
      r.powers_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return r;
}

Monomial Monomial::without(int id) const {
  Monomial r;
  for (const auto& pw : powers_)
    if (pw.first != id) r.powers_.push_back(pw);
  return r;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(const Rational& constant) {
  if (constant != 0) terms_.emplace(Monomial{}, constant);
}

Polynomial Polynomial::variable(VarIndex v) { return term(Monomial::variable(v), 1); }

Polynomial Polynomial::term(const Monomial& m, const Rational& coeff) {
  Polynomial p;
  if (coeff != 0) p.terms_.emplace(m, coeff);
  return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

unsigned Polynomial::degree_in(int id) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent_id(id));
  return d;
}

Rational Polynomial::leading_coefficient() const {
  return terms_.empty() ? Rational(0) : terms_.rbegin()->second;
}

namespace {

// Linear merge of two sorted term maps, a + sign * b.
Polynomial::Terms merge_terms(const Polynomial::Terms& a, const Polynomial::Terms& b, int sign) {
  Polynomial::Terms out;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.emplace_hint(out.end(), *i++);
    } else if (i == a.end() || j->first < i->first) {
      out.emplace_hint(out.end(), j->first, sign > 0 ? j->second : Rational(-j->second));
      ++j;
    } else {
      Rational c = sign > 0 ? Rational(i->second + j->second) : Rational(i->second - j->second);
      if (c != 0) out.emplace_hint(out.end(), i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.terms_.size() * 8 < terms_.size()) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
  } else {
    terms_ = merge_terms(terms_, other.terms_, 1);
  }
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.terms_.size() * 8 < terms_.size()) {
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
  } else {
    terms_ = merge_terms(terms_, other.terms_, -1);
  }
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  if (a.is_zero() || b.is_zero()) return r;
  if (a.terms_.size() == 1 || b.terms_.size() == 1) {
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  // Collect all products, sort once, then sum runs of equal monomials.
  std::vector<std::pair<Monomial, Rational>> prods;
  prods.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) prods.emplace_back(ma * mb, ca * cb);
  std::sort(prods.begin(), prods.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (std::size_t i = 0; i < prods.size();) {
    std::size_t j = i + 1;
    Rational c = std::move(prods[i].second);
    while (j < prods.size() && prods[j].first == prods[i].first) c += prods[j++].second;
    if (c != 0) r.terms_.emplace_hint(r.terms_.end(), std::move(prods[i].first), std::move(c));
    i = j;
  }
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::shift_subst(const Shift& m) const {
  if (m.is_identity()) return *this;
  // (x - c)^e for each shifted variable, cached per (id, exponent).
  std::map<std::pair<int, unsigned>, Polynomial> cache;
  auto shifted_power = [&](int id, unsigned e) -> const Polynomial& {
    auto key = std::make_pair(id, e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Polynomial base = Polynomial::term(Monomial::from_powers({{id, 1u}}), 1) - Polynomial(Rational(m.offset_id(id)));
    return cache.emplace(key, base.pow(e)).first->second;
  };
  Polynomial r;
  for (const auto& [mono, c] : terms_) {
    std::vector<Monomial::Power> fixed;
    std::vector<Monomial::Power> moved;
    for (const auto& pw : mono.powers()) (m.offset_id(pw.first) != 0 ? moved : fixed).push_back(pw);
    Polynomial t = Polynomial::term(Monomial::from_powers(fixed), c);
    for (const auto& [id, e] : moved) t = t * shifted_power(id, e);
    r += t;
  }
  return r;
}

Polynomial Polynomial::permute(const RowPermutation& s) const {
  Polynomial r;
  for (const auto& [mono, c] : terms_) {
    std::vector<Monomial::Power> powers;
    powers.reserve(mono.powers().size());
    for (const auto& [id, e] : mono.powers()) {
      const VarIndex v = VarIndex::from_id(id);
      if (v.row > s.rank()) throw std::invalid_argument("permute: variable outside permutation rank");
      powers.emplace_back(VarIndex{v.row, s.image(v.row, v.col)}.id(), e);
    }
    r.add_term(Monomial::from_powers(std::move(powers)), c);
  }
  return r;
}

Polynomial Polynomial::derive_id(int id) const {
  Polynomial r;
  for (const auto& [mono, c] : terms_) {
    const unsigned e = mono.exponent_id(id);
    if (e == 0) continue;
    std::vector<Monomial::Power> powers = mono.powers();
    for (auto& pw : powers)
      if (pw.first == id) pw.second -= 1;
    r.add_term(Monomial::from_powers(std::move(powers)), c * e);
  }
  return r;
}

Polynomial Polynomial::derive(VarIndex v) const { return derive_id(v.id()); }

Polynomial Polynomial::substitute(int id, const Rational& value) const {
  Polynomial r;
  for (const auto& [mono, c] : terms_) {
    const unsigned e = mono.exponent_id(id);
    if (e == 0)
      r.add_term(mono, c);
    else
      r.add_term(mono.without(id), c * power(value, e));
  }
  return r;
}

Rational Polynomial::evaluate(const PointAssignment& pt) const {
  Rational sum = 0;
  for (const auto& [mono, c] : terms_) {
    Rational t = c;
    for (const auto& [id, e] : mono.powers()) t *= power(pt.at_id(id), e);
    sum += t;
  }
  return sum;
}

int Polynomial::max_variable_id() const {
  int best = -1;
  for (const auto& [mono, c] : terms_)
    if (!mono.powers().empty()) best = std::max(best, mono.powers().back().first);
  return best;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest monomial first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [mono, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = (mag == 1);
    if (!unit || mono.is_one()) os << to_string(mag);
    bool need_star = !unit;
    for (const auto& [id, e] : mono.powers()) {
      if (need_star) os << "*";
      os << variable_name(VarIndex::from_id(id));
      if (e > 1) os << "^" << e;
      need_star = true;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

// ---------------------------------------------------------------------------
// LinearFactor

std::pair<LinearFactor, Rational> LinearFactor::from_polynomial(const Polynomial& p) {
  if (p.total_degree() != 1) throw std::invalid_argument("not a degree-one polynomial: " + p.str());
  // Common denominator, then content.
  Integer lcm_den = 1;
  for (const auto& [m, c] : p.terms()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  LinearFactor f;
  Integer content = 0;
  for (const auto& [m, c] : p.terms()) {
    Integer v = c.get_num() * (lcm_den / c.get_den());
    if (m.is_one())
      f.constant_ = v;
    else
      f.coeffs_.emplace_back(m.powers().front().first, v);
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
  }
  std::sort(f.coeffs_.begin(), f.coeffs_.end(),
            [](const Coeff& a, const Coeff& b) { return a.first < b.first; });
  if (f.coeffs_.front().second < 0) content = -content;
  for (auto& [id, v] : f.coeffs_) v /= content;
  f.constant_ /= content;
  Rational scalar(content, lcm_den);
  scalar.canonicalize();
  return {std::move(f), scalar};
}

std::pair<LinearFactor, Rational> LinearFactor::difference(VarIndex a, VarIndex b, const Rational& c) {
  return from_polynomial(Polynomial::variable(a) - Polynomial::variable(b) + Polynomial(c));
}

Integer LinearFactor::coefficient_id(int id) const {
  for (const auto& [v, c] : coeffs_)
    if (v == id) return c;
  return 0;
}

Polynomial LinearFactor::to_polynomial() const {
  Polynomial p{Rational(constant_)};
  for (const auto& [id, c] : coeffs_) p += Polynomial::term(Monomial::from_powers({{id, 1u}}), Rational(c));
  return p;
}

Rational LinearFactor::evaluate(const PointAssignment& pt) const {
  Rational v(constant_);
  for (const auto& [id, c] : coeffs_) v += Rational(c) * pt.at_id(id);
  return v;
}

std::pair<LinearFactor, Rational> LinearFactor::shift_subst(const Shift& m) const {
  return from_polynomial(to_polynomial().shift_subst(m));
}

std::pair<LinearFactor, Rational> LinearFactor::permute(const RowPermutation& s) const {
  return from_polynomial(to_polynomial().permute(s));
}

std::string LinearFactor::str() const { return "(" + to_polynomial().str() + ")"; }

bool operator<(const LinearFactor& a, const LinearFactor& b) {
  const std::size_t n = std::min(a.coeffs_.size(), b.coeffs_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeffs_[i].first != b.coeffs_[i].first) return a.coeffs_[i].first < b.coeffs_[i].first;
    const int c = cmp(a.coeffs_[i].second, b.coeffs_[i].second);
    if (c != 0) return c < 0;
  }
  if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
  return a.constant_ < b.constant_;
}

// ---------------------------------------------------------------------------
// Exact division by a linear form.

namespace {

// Deterministic probe value for coordinates off the hyperplane.
Rational probe_value(int id) { return Rational(3 * id + 5, 2 * id + 7) + Rational(id * id, 13); }

}  // namespace

std::optional<Polynomial> divide_exact(const Polynomial& p, const LinearFactor& f) {
  if (p.is_zero()) return Polynomial{};
  const int v = f.leading_id();
  const Rational lead(f.coefficient_id(v));
  Polynomial rest = f.to_polynomial() - Polynomial::term(Monomial::from_powers({{v, 1u}}), lead);

  // Quick rejection: p must vanish at a point of the hyperplane f = 0.
  {
    const int top = std::max(p.max_variable_id(), f.to_polynomial().max_variable_id());
    std::vector<Rational> vals(static_cast<std::size_t>(top + 1));
    for (int id = 0; id <= top; ++id) vals[id] = probe_value(id);
    Rational rest_val = rest.constant_term();
    for (const auto& [id, c] : f.coefficients())
      if (id != v) rest_val += Rational(c) * vals[id];
    vals[v] = -rest_val / lead;
    Rational acc = 0;
    for (const auto& [mono, c] : p.terms()) {
      Rational t = c;
      for (const auto& [id, e] : mono.powers()) t *= power(vals[id], e);
      acc += t;
    }
    if (acc != 0) return std::nullopt;
  }

  // p = sum_d P_d x_v^d with P_d free of x_v.
  std::map<unsigned, Polynomial> slices;
  for (const auto& [mono, c] : p.terms())
    slices[mono.exponent_id(v)] += Polynomial::term(mono.without(v), c);
  const unsigned top = slices.rbegin()->first;
  if (top == 0) return std::nullopt;  // nonzero and free of x_v

  // (lead x_v + rest) * sum_d q_d x_v^d = p.
  std::vector<Polynomial> q(top);
  Polynomial carry;  // rest * q_d from the previous step
  for (unsigned d = top; d >= 1; --d) {
    Polynomial pd = slices.count(d) ? slices[d] : Polynomial{};
    q[d - 1] = (pd - carry) * Rational(1 / lead);
    carry = rest * q[d - 1];
  }
  Polynomial remainder = (slices.count(0) ? slices[0] : Polynomial{}) - carry;
  if (!remainder.is_zero()) return std::nullopt;

  Polynomial result;
  for (unsigned d = 0; d < top; ++d)
    result += q[d] * Polynomial::term(Monomial::from_powers({{v, d}}), 1);
  return result;
}

}  // namespace gtsing
