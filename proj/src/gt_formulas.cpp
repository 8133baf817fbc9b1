#include "gtsing/gt_formulas.hpp"

#include <sstream>
#include <stdexcept>

namespace gtsing {

std::pair<int, int> GeneratorSymbol::matrix_unit() const {
  switch (kind) {
    case Kind::raising: return {a, a + 1};
    case Kind::lowering: return {a + 1, a};
    case Kind::cartan: return {a, a};
    case Kind::unit: return {a, b};
  }
  return {a, b};
}

bool GeneratorSymbol::is_chevalley() const {
  const auto [s, t] = matrix_unit();
  return s - t >= -1 && s - t <= 1;
}

void GeneratorSymbol::validate(int n) const {
  const auto [s, t] = matrix_unit();
  if (s < 1 || t < 1 || s > n || t > n)
    throw std::out_of_range("generator " + str() + " outside gl_" + std::to_string(n));
}

std::string GeneratorSymbol::str() const {
  const auto [s, t] = matrix_unit();
  if (s < 10 && t < 10) return "E" + std::to_string(s) + std::to_string(t);
  return "E" + std::to_string(s) + "_" + std::to_string(t);
}

GeneratorWord parse_word(std::string_view text) {
  GeneratorWord w;
  std::string s(text);
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    const auto b = tok.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    tok = tok.substr(b, tok.find_last_not_of(" \t") - b + 1);
    if (tok.size() < 3 || (tok[0] != 'E' && tok[0] != 'e')) throw std::invalid_argument("bad generator: " + tok);
    const std::string idx = tok.substr(1);
    int si = 0;
    int ti = 0;
    try {
      const auto us = idx.find('_');
      if (us != std::string::npos) {
        si = std::stoi(idx.substr(0, us));
        ti = std::stoi(idx.substr(us + 1));
      } else if (idx.size() == 2 && std::isdigit(static_cast<unsigned char>(idx[0])) &&
                 std::isdigit(static_cast<unsigned char>(idx[1]))) {
        si = idx[0] - '0';
        ti = idx[1] - '0';
      } else {
        throw std::invalid_argument(tok);
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("bad generator: " + tok);
    }
    w.push_back(GeneratorSymbol::unit(si, ti));
  }
  return w;
}

std::string format_word(const GeneratorWord& w) {
  std::string s;
  for (const auto& g : w) {
    if (!s.empty()) s += ",";
    s += g.str();
  }
  return s;
}

std::vector<GeneratorSymbol> chevalley_generators(int n) {
  std::vector<GeneratorSymbol> gens;
  for (int k = 1; k <= n; ++k) gens.push_back(GeneratorSymbol::cartan(k));
  for (int k = 1; k < n; ++k) {
    gens.push_back(GeneratorSymbol::raising(k));
    gens.push_back(GeneratorSymbol::lowering(k));
  }
  return gens;
}

namespace {

Polynomial x(int k, int i) { return Polynomial::variable({k, i}); }

}  // namespace

GtHomomorphism::GtHomomorphism(int n, Options options) : n_(n), options_(options) {
  if (n < 1) throw std::invalid_argument("rank must be positive");
  units_.resize(static_cast<std::size_t>(n * n));
  // Chevalley units first, then the rest by increasing |s - t|.
  for (int d = 0; d < n; ++d)
    for (int s = 1; s <= n; ++s)
      for (int t = 1; t <= n; ++t)
        if (std::abs(s - t) == d) units_[(s - 1) * n + (t - 1)] = build_unit(s, t);
}

SkewElement GtHomomorphism::chevalley(const GeneratorSymbol& g) const {
  g.validate(n_);
  const auto [s, t] = g.matrix_unit();
  SkewElement result;
  if (s == t) {
    const int k = s;
    Polynomial f;
    for (int i = 1; i <= k; ++i) f += x(k, i) + Polynomial(i - 1);
    for (int i = 1; i < k; ++i) f -= x(k - 1, i) + Polynomial(i - 1);
    return SkewElement::scalar(RationalFunction(f));
  }
  if (t == s + 1) {
    const int k = s;
    for (int i = 1; i <= k; ++i) {
      Polynomial num(options_.flip_raising_sign ? 1 : -1);
      for (int j = 1; j <= k + 1; ++j) num = num * (x(k, i) - x(k + 1, j));
      RationalFunction coeff(num);
      for (int j = 1; j <= k; ++j)
        if (j != i) coeff *= RationalFunction::inverse_of_linear(x(k, i) - x(k, j));
      result.add_term(Shift::unit({k, i}, -1), coeff);
    }
    return result;
  }
  if (s == t + 1) {
    const int k = t;
    for (int i = 1; i <= k; ++i) {
      Polynomial num(1);
      for (int j = 1; j <= k - 1; ++j) num = num * (x(k, i) - x(k - 1, j));
      RationalFunction coeff(num);
      for (int j = 1; j <= k; ++j)
        if (j != i) coeff *= RationalFunction::inverse_of_linear(x(k, i) - x(k, j));
      result.add_term(Shift::unit({k, i}, 1), coeff);
    }
    return result;
  }
  throw std::invalid_argument(g.str() + " is not a Chevalley generator");
}

SkewElement phi_bracket(const SkewElement& x, const SkewElement& y) { return compose(y, x) - compose(x, y); }

SkewElement GtHomomorphism::build_unit(int s, int t) const {
  if (std::abs(s - t) <= 1) return chevalley(GeneratorSymbol::unit(s, t));
  const int r = t > s ? s + 1 : s - 1;
  return phi_bracket(matrix_unit(s, r), matrix_unit(r, t));
}

const SkewElement& GtHomomorphism::matrix_unit(int s, int t) const {
  if (s < 1 || t < 1 || s > n_ || t > n_)
    throw std::out_of_range("E" + std::to_string(s) + std::to_string(t) + " outside gl_" + std::to_string(n_));
  return units_[(s - 1) * n_ + (t - 1)];
}

const SkewElement& GtHomomorphism::image(const GeneratorSymbol& g) const {
  const auto [s, t] = g.matrix_unit();
  return matrix_unit(s, t);
}

SkewElement GtHomomorphism::matrix_unit_via(int s, int t, int r) const {
  if (r == s || r == t || s == t) throw std::invalid_argument("intermediate index must differ from s and t");
  return phi_bracket(matrix_unit(s, r), matrix_unit(r, t));
}

SkewElement GtHomomorphism::word(const GeneratorWord& w) const {
  SkewElement result = SkewElement::unit();
  for (const auto& g : w) result = compose(image(g), result);
  return result;
}

std::vector<std::pair<int, std::pair<int, int>>> bracket_of_units(std::pair<int, int> x, std::pair<int, int> y) {
  std::vector<std::pair<int, std::pair<int, int>>> out;
  if (x.second == y.first) out.push_back({1, {x.first, y.second}});
  if (x.first == y.second) out.push_back({-1, {y.first, x.second}});
  return out;
}

SkewElement commutator_defect(const GtHomomorphism& phi, const GeneratorSymbol& x, const GeneratorSymbol& y) {
  SkewElement d = phi_bracket(phi.image(x), phi.image(y));
  for (const auto& [c, unit] : bracket_of_units(x.matrix_unit(), y.matrix_unit())) {
    const SkewElement& e = phi.matrix_unit(unit.first, unit.second);
    if (c > 0)
      d -= e;
    else
      d += e;
  }
  return d;
}

SkewElement gt_subalgebra_generator(const GtHomomorphism& phi, int i, int j) {
  if (j < 1 || j > i || i > phi.rank()) throw std::out_of_range("c_ij needs 1 <= j <= i <= n");
  SkewElement sum;
  std::vector<int> idx(static_cast<std::size_t>(j), 1);
  while (true) {
    GeneratorWord w;
    for (int q = 0; q < j; ++q) w.push_back(GeneratorSymbol::unit(idx[q], idx[(q + 1) % j]));
    sum += phi.word(w);
    int q = j - 1;
    while (q >= 0 && idx[q] == i) idx[q--] = 1;
    if (q < 0) break;
    ++idx[q];
  }
  return sum;
}

CentralCharacter verify_central_character(const GtHomomorphism& phi, int i, int j) {
  const SkewElement c = gt_subalgebra_generator(phi, i, j);
  CentralCharacter out;
  if (c.is_zero()) {
    out.ok = true;
    return out;
  }
  if (c.size() != 1 || !c.terms().begin()->first.is_identity()) {
    out.reason = "support is not the identity shift";
    return out;
  }
  const RationalFunction& f = c.terms().begin()->second;
  if (!f.is_polynomial()) {
    out.reason = "coefficient has a denominator: " + f.str();
    return out;
  }
  out.value = f.as_polynomial();
  const int n = phi.rank();
  for (int k = 2; k <= n; ++k)
    for (int a = 1; a < k; ++a)
      if (!(out.value.permute(RowPermutation::transposition(n, k, a, a + 1)) == out.value)) {
        out.reason = "coefficient not symmetric in row " + std::to_string(k);
        return out;
      }
  out.ok = true;
  return out;
}

}  // namespace gtsing
