#include "gtsing/acceptance.hpp"

#include "gtsing/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <set>

namespace gtsing {

namespace {

TableauPoint point_from_rows(const std::vector<std::vector<Rational>>& rows) {
  const int n = static_cast<int>(rows.size());
  TableauPoint pt{PointAssignment(n)};
  for (int k = 1; k <= n; ++k)
    for (int i = 1; i <= k; ++i) pt.point.set({k, i}, rows[k - 1][i - 1]);
  return pt;
}

// x_{ki} = i / (2k + 1): same-row differences have |numerator| < 2k + 1.
std::vector<std::vector<Rational>> staggered_rows(int n) {
  std::vector<std::vector<Rational>> rows;
  for (int k = 1; k <= n; ++k) {
    std::vector<Rational> row;
    for (int i = 1; i <= k; ++i) row.emplace_back(i, 2 * k + 1);
    for (auto& v : row) v.canonicalize();
    rows.push_back(std::move(row));
  }
  return rows;
}

Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

int sign_of(const std::vector<int>& images) {
  int inversions = 0;
  for (std::size_t a = 0; a < images.size(); ++a)
    for (std::size_t b = a + 1; b < images.size(); ++b)
      if (images[a] > images[b]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

std::vector<std::pair<RowPermutation, int>> cluster_group(const ClusterAction& cl) {
  std::vector<int> images(static_cast<std::size_t>(cl.p()));
  std::iota(images.begin(), images.end(), 1);
  std::vector<std::pair<RowPermutation, int>> out;
  do out.emplace_back(cl.embed(images), sign_of(images));
  while (std::next_permutation(images.begin(), images.end()));
  return out;
}

template <typename Body>
CriterionResult timed(std::string id, std::string title, Body body) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  r.id = std::move(id);
  r.title = std::move(title);
  try {
    body(r);
  } catch (const std::exception& e) {
    r.ok = false;
    r.summary = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<GeneratorSymbol> all_units(int n) {
  std::vector<GeneratorSymbol> out;
  for (int s = 1; s <= n; ++s)
    for (int t = 1; t <= n; ++t) out.push_back(GeneratorSymbol::unit(s, t));
  return out;
}

}  // namespace

TableauPoint demo_singular_point(int n) {
  if (n < 3) throw std::invalid_argument("a singular demo point needs n >= 3");
  if (n == 3) return point_from_rows({{q(1, 3)}, {q(0), q(0)}, {q(5), q(7, 2), q(26, 3)}});
  if (n == 4)
    return point_from_rows({{q(1, 3)}, {q(1, 5), q(2, 7)}, {q(0), q(0), q(0)}, {q(5), q(7, 2), q(26, 3), q(1, 11)}});
  auto rows = staggered_rows(n);
  for (auto& v : rows[static_cast<std::size_t>(n - 2)]) v = 0;
  return point_from_rows(rows);
}

SingularSpec demo_singular_spec(int n) {
  std::vector<int> cluster(static_cast<std::size_t>(n - 1));
  std::iota(cluster.begin(), cluster.end(), 1);
  return make_singular_spec(demo_singular_point(n), n - 1, cluster);
}

TableauPoint demo_generic_point(int n) {
  if (n == 3) return point_from_rows({{q(1, 3)}, {q(1, 2), q(0)}, {q(5), q(7, 2), q(26, 3)}});
  return point_from_rows(staggered_rows(n));
}

CriterionResult run_a1(const AcceptanceConfig& cfg) {
  return timed("A1", "commutator identity on all matrix-unit pairs, n = 2, 3", [&](CriterionResult& r) {
    std::size_t checked = 0;
    Json failures = Json::array();
    for (int n : {2, 3}) {
      const GtHomomorphism phi(n);
      const auto units = all_units(n);
      const std::size_t m = units.size();
      auto defects = parallel_map(m * m, [&](std::size_t k) {
        return commutator_defect(phi, units[k / m], units[k % m]);
      }, cfg.threads);
      for (std::size_t k = 0; k < defects.size(); ++k) {
        ++checked;
        if (!defects[k].is_zero())
          failures.push_back({{"n", n}, {"x", units[k / m].str()}, {"y", units[k % m].str()}, {"defect", to_json(defects[k])}});
      }
    }
    r.ok = failures.empty();
    r.summary = std::to_string(checked) + " pairs, " + std::to_string(failures.size()) + " failures";
    r.details = {{"pairs", checked}, {"failures", failures}};
  });
}

CriterionResult run_a2(const AcceptanceConfig&) {
  return timed("A2", "central characters of the Gelfand-Tsetlin generators, n = 2, 3", [&](CriterionResult& r) {
    Json chars = Json::array();
    bool ok = true;
    for (int n : {2, 3}) {
      const GtHomomorphism phi(n);
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= i; ++j) {
          const auto cc = verify_central_character(phi, i, j);
          ok = ok && cc.ok;
          chars.push_back({{"n", n}, {"i", i}, {"j", j}, {"ok", cc.ok}, {"value", cc.value.str()}, {"reason", cc.reason}});
        }
    }
    const GtHomomorphism phi2(2);
    const Polynomial expected = Polynomial::variable({2, 1}) + Polynomial::variable({2, 2}) + Polynomial(1);
    const bool c21 = verify_central_character(phi2, 2, 1).value == expected;
    r.ok = ok && c21;
    r.summary = std::to_string(chars.size()) + " generators; c21(n=2) = x21 + x22 + 1: " + (c21 ? "yes" : "no");
    r.details = {{"characters", chars}};
  });
}

CriterionResult run_a3(const AcceptanceConfig& cfg) {
  return timed("A3", "alternating polynomials factor as Vandermonde times symmetric", [&](CriterionResult& r) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> pick_p(2, 4);
    std::uniform_int_distribution<int> pick_terms(1, 4);
    std::uniform_int_distribution<int> pick_coeff(-9, 9);
    auto random_poly = [&](const ClusterAction& cl) {
      Polynomial f;
      const int terms = pick_terms(rng);
      for (int t = 0; t < terms; ++t) {
        std::uniform_int_distribution<int> pick_deg(0, 6);
        int budget = pick_deg(rng);
        std::vector<Monomial::Power> powers;
        for (int c = 1; c <= cl.p() && budget > 0; ++c) {
          std::uniform_int_distribution<int> pick_e(0, budget);
          const int e = pick_e(rng);
          if (e > 0) powers.emplace_back(VarIndex{cl.row, c}.id(), static_cast<unsigned>(e));
          budget -= e;
        }
        // an extra non-cluster parameter keeps coefficients honest
        if (budget > 0) powers.emplace_back(VarIndex{cl.row - 1, 1}.id(), static_cast<unsigned>(budget));
        std::sort(powers.begin(), powers.end());
        int c = 0;
        while (c == 0) c = pick_coeff(rng);
        f += Polynomial::term(Monomial::from_powers(powers), c);
      }
      return f;
    };
    std::size_t alt_ok = 0;
    std::size_t sym_ok = 0;
    Json failures = Json::array();
    for (unsigned s = 0; s < cfg.samples; ++s) {
      const int p = pick_p(rng);
      std::vector<int> cols(static_cast<std::size_t>(p));
      std::iota(cols.begin(), cols.end(), 1);
      const ClusterAction cl{5, 4, cols};
      const auto group = cluster_group(cl);
      Polynomial alt;
      while (alt.is_zero()) {
        const Polynomial f = random_poly(cl);
        for (const auto& [perm, sign] : group) alt += f.permute(perm) * Rational(sign);
      }
      const auto quotient = alternating_quotient(alt, cl);
      bool good = quotient.has_value() && vandermonde_poly(cl) * *quotient == alt;
      if (good)
        for (int t = 1; t < p; ++t) good = good && quotient->permute(cl.transposition(t, t + 1)) == *quotient;
      if (good)
        ++alt_ok;
      else
        failures.push_back({{"kind", "alternating"}, {"p", p}, {"input", alt.str()}});
      Polynomial sym;
      while (sym.is_zero()) {
        const Polynomial f = random_poly(cl);
        for (const auto& [perm, sign] : group) sym += f.permute(perm);
      }
      if (!alternating_quotient(sym, cl))
        ++sym_ok;
      else
        failures.push_back({{"kind", "symmetric"}, {"p", p}, {"input", sym.str()}});
    }
    r.ok = alt_ok == cfg.samples && sym_ok == cfg.samples;
    r.summary = std::to_string(alt_ok) + "/" + std::to_string(cfg.samples) + " alternating factored, " +
                std::to_string(sym_ok) + "/" + std::to_string(cfg.samples) + " symmetric rejected (seed " +
                std::to_string(cfg.seed) + ")";
    r.details = {{"seed", cfg.seed}, {"failures", failures}};
  });
}

CriterionResult run_a4(const AcceptanceConfig& cfg) {
  return timed("A4", "products of Chevalley images are invariant with at most a Vandermonde pole", [&](CriterionResult& r) {
    Json per_case = Json::array();
    bool ok = true;
    for (int n : {3, 4}) {
      const SingularSpec spec = demo_singular_spec(n);
      const ClusterAction cl = cluster_action(spec);
      const GtHomomorphism phi(n);
      const auto gens = chevalley_generators(n);
      std::vector<std::pair<std::string, SkewElement>> level;
      for (const auto& g : gens) level.emplace_back(g.str(), phi.image(g));
      std::size_t checked = 0;
      unsigned worst = 0;
      Json failures = Json::array();
      for (unsigned len = 1; len <= cfg.word_length; ++len) {
        struct Verdict {
          bool invariant;
          unsigned order;
        };
        auto verdicts = parallel_map(level.size(), [&](std::size_t k) {
          return Verdict{is_invariant(level[k].second, cl), cluster_singularity_order(level[k].second, cl)};
        }, cfg.threads);
        for (std::size_t k = 0; k < level.size(); ++k) {
          ++checked;
          worst = std::max(worst, verdicts[k].order);
          if (!verdicts[k].invariant || verdicts[k].order > 1)
            failures.push_back({{"word", level[k].first}, {"invariant", verdicts[k].invariant}, {"order", verdicts[k].order}});
        }
        if (len == cfg.word_length) break;
        const std::size_t m = gens.size();
        auto next = parallel_map(level.size() * m, [&](std::size_t k) {
          const auto& [name, prod] = level[k / m];
          const auto& g = gens[k % m];
          // word X_1..X_len,X_{len+1}: Phi(X_{len+1}) o previous
          return std::make_pair(name + "," + g.str(), compose(phi.image(g), prod));
        }, cfg.threads);
        level = std::move(next);
      }
      ok = ok && failures.empty();
      per_case.push_back({{"n", n}, {"p", spec.p()}, {"products", checked}, {"max_order", worst}, {"failures", failures}});
    }
    r.ok = ok;
    r.summary = "gl_3 p=2: " + std::to_string(per_case[0]["products"].get<std::size_t>()) + " products, gl_4 p=3: " +
                std::to_string(per_case[1]["products"].get<std::size_t>()) + " products, words up to length " +
                std::to_string(cfg.word_length);
    r.details = {{"cases", per_case}};
  });
}

namespace {

struct SweepOutcome {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::size_t inconclusive = 0;
  Json failure_list = Json::array();
};

SweepOutcome cross_check_sweep(const ModuleContext& ctx, const std::vector<DistLabel>& labels, unsigned bound,
                               unsigned threads) {
  const auto gens = chevalley_generators(ctx.rank());
  const std::size_t m = gens.size();
  struct One {
    bool ok = false;
    bool conclusive = false;
    std::string failure;
  };
  auto results = parallel_map(labels.size() * m, [&](std::size_t k) {
    One one;
    try {
      const auto res = oracle_cross_check({gens[k % m]}, labels[k / m], bound, ctx);
      one.ok = res.ok;
      one.conclusive = res.conclusive();
      one.failure = res.failure;
    } catch (const std::exception& e) {
      one.failure = e.what();
    }
    return one;
  }, threads);
  SweepOutcome out;
  for (std::size_t k = 0; k < results.size(); ++k) {
    ++out.checks;
    if (!results[k].conclusive) ++out.inconclusive;
    if (!results[k].ok) {
      ++out.failures;
      if (out.failure_list.size() < 20)
        out.failure_list.push_back(
            {{"word", gens[k % m].str()}, {"label", format_label(labels[k / m])}, {"failure", results[k].failure}});
    }
  }
  return out;
}

}  // namespace

CriterionResult run_a5(const AcceptanceConfig& cfg) {
  return timed("A5", "action formula agrees with direct distribution evaluation", [&](CriterionResult& r) {
    const ModuleContext gl3 = ModuleContext::singular(demo_singular_spec(3));
    const auto labels3 = enumerate_labels({{1, 1}, {2, 1}, {2, 2}}, 1, gl3);
    const auto s3 = cross_check_sweep(gl3, labels3, cfg.gl3_degree_bound, cfg.threads);
    const ModuleContext gl4 = ModuleContext::singular(demo_singular_spec(4));
    const auto labels4 = enumerate_labels({{3, 1}, {3, 2}, {3, 3}}, 1, gl4);
    const auto s4 = cross_check_sweep(gl4, labels4, cfg.gl4_degree_bound, cfg.threads);
    r.ok = s3.failures == 0 && s4.failures == 0;
    r.summary = "gl_3 p=2: " + std::to_string(labels3.size()) + " labels x 7 generators, " + std::to_string(s3.failures) +
                " failures (degree <= " + std::to_string(cfg.gl3_degree_bound) + ", " + std::to_string(s3.inconclusive) +
                " below the conclusive bound); gl_4 p=3: " + std::to_string(labels4.size()) + " labels x 10 generators, " +
                std::to_string(s4.failures) + " failures (degree <= " + std::to_string(cfg.gl4_degree_bound) + ", " +
                std::to_string(s4.inconclusive) + " below the conclusive bound)";
    r.details = {{"gl3", {{"labels", labels3.size()}, {"checks", s3.checks}, {"failures", s3.failure_list},
                          {"inconclusive", s3.inconclusive}}},
                 {"gl4", {{"labels", labels4.size()}, {"checks", s4.checks}, {"failures", s4.failure_list},
                          {"inconclusive", s4.inconclusive}}}};
  });
}

CriterionResult run_a6(const AcceptanceConfig& cfg) {
  return timed("A6", "module axiom a.(b.D) - b.(a.D) = [a,b].D", [&](CriterionResult& r) {
    Json cases = Json::array();
    bool ok = true;
    auto run_case = [&](int n, const std::vector<GeneratorSymbol>& gens, const std::vector<DistLabel>& basis) {
      const ModuleContext ctx = ModuleContext::singular(demo_singular_spec(n));
      const std::size_t m = gens.size();
      const std::size_t per_label = m * m;
      auto results = parallel_map(basis.size() * per_label, [&](std::size_t k) {
        const auto& label = basis[k / per_label];
        const std::size_t pair = k % per_label;
        return verify_module_axiom(gens[pair / m], gens[pair % m], DistVector::basis(label), ctx);
      }, cfg.threads);
      std::size_t failed = 0;
      std::size_t distributional = 0;
      Json failures = Json::array();
      for (std::size_t k = 0; k < results.size(); ++k) {
        if (!results[k].ok) {
          ++failed;
          const std::size_t pair = k % per_label;
          if (failures.size() < 20)
            failures.push_back({{"a", gens[pair / m].str()}, {"b", gens[pair % m].str()},
                                {"label", format_label(basis[k / per_label])}, {"defect", to_json(results[k].defect)}});
        } else if (!results[k].syntactic) {
          ++distributional;
        }
      }
      ok = ok && failed == 0;
      Json labels = Json::array();
      for (const auto& l : basis) labels.push_back(format_label(l));
      cases.push_back({{"n", n}, {"p", ctx.p()}, {"checks", results.size()}, {"failed", failed},
                       {"equal_as_distributions_only", distributional}, {"labels", labels}, {"failures", failures}});
    };
    std::vector<DistLabel> basis3{parse_label("I=12"), parse_label("I=;off=2,1:+1"), parse_label("I=12;off=1,1:-1"),
                                  parse_label("I=12;off=2,1:-1;off=2,2:+1"), parse_label("I=;off=1,1:+1;off=2,1:-1")};
    run_case(3, all_units(3), basis3);
    std::vector<DistLabel> basis4{parse_label("I=12,13,23"), parse_label("I=12;off=3,1:-1;off=3,2:+1")};
    run_case(4, chevalley_generators(4), basis4);
    r.ok = ok;
    r.summary = "gl_3 p=2: " + std::to_string(cases[0]["checks"].get<std::size_t>()) + " checks, " +
                std::to_string(cases[0]["failed"].get<std::size_t>()) + " failed; gl_4 p=3: " +
                std::to_string(cases[1]["checks"].get<std::size_t>()) + " checks, " +
                std::to_string(cases[1]["failed"].get<std::size_t>()) + " failed (" +
                std::to_string(cases[1]["equal_as_distributions_only"].get<std::size_t>()) +
                " equal as distributions but not labelwise)";
    r.details = {{"cases", cases}};
  });
}

CriterionResult run_a7(const AcceptanceConfig& cfg) {
  return timed("A7", "cluster size two: D1/D2 identification and relations", [&](CriterionResult& r) {
    const ModuleContext ctx = ModuleContext::singular(demo_singular_spec(3));
    const P2Report rep = p2_correspondence(ctx, cfg.gl3_degree_bound, 1);
    Json checks = Json::array();
    std::size_t passed = 0;
    for (const auto& c : rep.checks) {
      checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
      if (c.ok) ++passed;
    }
    Json notation = Json::array();
    for (const auto& [a, b] : rep.notation) notation.push_back({a, b});
    r.ok = rep.ok;
    r.summary = std::to_string(passed) + "/" + std::to_string(rep.checks.size()) + " checks, degree <= " +
                std::to_string(cfg.gl3_degree_bound);
    r.details = {{"checks", checks}, {"notation", notation}};
  });
}

namespace {

// Classical coefficients evaluated directly at a point: the reference side of A8.
DistVector classical_action(const GeneratorSymbol& g, const Shift& at, const TableauPoint& v) {
  DistVector out;
  const int k = g.a;
  auto x = [&](int row, int col) { return v[{row, col}]; };
  switch (g.kind) {
    case GeneratorSymbol::Kind::cartan: {
      Rational c = 0;
      for (int i = 1; i <= k; ++i) c += x(k, i) + (i - 1);
      for (int i = 1; i < k; ++i) c -= x(k - 1, i) + (i - 1);
      out.add({{}, at}, c);
      break;
    }
    case GeneratorSymbol::Kind::raising:
    case GeneratorSymbol::Kind::lowering: {
      const bool up = g.kind == GeneratorSymbol::Kind::raising;
      for (int i = 1; i <= k; ++i) {
        Rational num = up ? Rational(-1) : Rational(1);
        if (up)
          for (int j = 1; j <= k + 1; ++j) num *= x(k, i) - x(k + 1, j);
        else
          for (int j = 1; j < k; ++j) num *= x(k, i) - x(k - 1, j);
        Rational den = 1;
        for (int j = 1; j <= k; ++j)
          if (j != i) den *= x(k, i) - x(k, j);
        // T(v + delta) is the label whose shift moves o to v + delta
        out.add({{}, at + Shift::unit({k, i}, up ? -1 : 1)}, num / den);
      }
      break;
    }
    default:
      throw std::invalid_argument("classical action takes Chevalley generators");
  }
  return out;
}

}  // namespace

CriterionResult run_a8(const AcceptanceConfig& cfg) {
  return timed("A8", "generic point: the action reproduces the classical formulas", [&](CriterionResult& r) {
    const ModuleContext ctx = ModuleContext::generic(demo_generic_point(3));
    std::vector<Shift> starts{Shift{}, Shift::unit({2, 1}, 1), Shift::from_entries({{VarIndex{1, 1}.id(), -2}, {VarIndex{2, 2}.id(), 1}}),
                              Shift::from_entries({{VarIndex{2, 1}.id(), 3}, {VarIndex{2, 2}.id(), -1}})};
    const auto gens = chevalley_generators(3);
    const std::size_t m = gens.size();
    auto results = parallel_map(starts.size() * m, [&](std::size_t k) {
      const Shift& at = starts[k / m];
      const DistVector got = act(gens[k % m], DistVector::basis({{}, at}), ctx);
      const DistVector want = classical_action(gens[k % m], at, apply_shift(ctx.base(), at.inverse()));
      return std::make_pair(got, want);
    }, cfg.threads);
    Json failures = Json::array();
    for (std::size_t k = 0; k < results.size(); ++k)
      if (!(results[k].first == results[k].second))
        failures.push_back({{"generator", gens[k % m].str()}, {"start", format_label({{}, starts[k / m]})},
                            {"got", to_json(results[k].first)}, {"classical", to_json(results[k].second)}});
    r.ok = failures.empty();
    r.summary = std::to_string(results.size()) + " expansions (" + std::to_string(starts.size()) +
                " support points x 7 generators), " + std::to_string(failures.size()) + " mismatches";
    r.details = {{"failures", failures}};
  });
}

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg,
                                            const std::function<void(const CriterionResult&)>& progress) {
  std::vector<CriterionResult> out;
  for (auto* fn : {run_a1, run_a2, run_a3, run_a4, run_a5, run_a6, run_a7, run_a8}) {
    out.push_back(fn(cfg));
    if (progress) progress(out.back());
  }
  return out;
}

}  // namespace gtsing
