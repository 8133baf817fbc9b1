#pragma once

#include "gtsing/acceptance.hpp"

#include <random>

namespace gtsing::test {

inline Polynomial var(int k, int i) { return Polynomial::variable({k, i}); }
inline Polynomial cst(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return Polynomial(r);
}
inline Rational rat(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}
inline RationalFunction inv(const Polynomial& f) { return RationalFunction::inverse_of_linear(f); }

// Small random polynomial in the variables of gl_n.
inline Polynomial random_poly(std::mt19937_64& rng, int n, int terms = 3, int max_deg = 3) {
  std::uniform_int_distribution<int> pick_var(0, variable_count(n) - 1);
  std::uniform_int_distribution<int> pick_deg(0, max_deg);
  std::uniform_int_distribution<int> pick_c(-5, 5);
  Polynomial f;
  for (int t = 0; t < terms; ++t) {
    std::map<int, unsigned> powers;
    const int d = pick_deg(rng);
    for (int e = 0; e < d; ++e) ++powers[pick_var(rng)];
    f += Polynomial::term(Monomial::from_powers({powers.begin(), powers.end()}), pick_c(rng));
  }
  return f;
}

inline Shift random_shift(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> pick_var(0, variable_count(n - 1) - 1);
  std::uniform_int_distribution<int> pick_off(-2, 2);
  std::vector<Shift::Entry> e;
  for (int q = 0; q < 2; ++q) e.emplace_back(pick_var(rng), pick_off(rng));
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end(), [](auto a, auto b) { return a.first == b.first; }), e.end());
  return Shift::from_entries(e);
}

// Rational function with a few generic linear denominators.
inline RationalFunction random_rf(std::mt19937_64& rng, int n) {
  RationalFunction f(random_poly(rng, n, 2, 2));
  std::uniform_int_distribution<int> pick_row(2, n);
  std::uniform_int_distribution<int> pick_c(-2, 2);
  const int k = pick_row(rng);
  f *= inv(var(k, 1) - var(k, 2) + cst(pick_c(rng)));
  return f;
}

inline PointAssignment random_point(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> pick(-40, 40);
  PointAssignment pt(n);
  for (int k = 1; k <= n; ++k)
    for (int i = 1; i <= k; ++i) pt.set({k, i}, rat(pick(rng), 7 + k + i));
  return pt;
}

}  // namespace gtsing::test
