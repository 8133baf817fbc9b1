// gtsing: verification suites, the module-action calculator and the oracle
// cross-checker for singular Gelfand-Tsetlin modules.
#include "gtsing/acceptance.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace gtsing;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int n = 3;
  int max_n = 4;
  std::string point_file;
  std::string cluster;
  unsigned degree_bound = 0;  // 0 = command default
  std::uint64_t seed = 20240601;
  bool json = false;
  std::string out;
  bool timings = false;
  bool flip_raising_sign = false;
  bool generic = false;
  std::string word;
  std::string label;
  bool check = false;
  int window = 1;
  std::string snapshot;
  std::string write_snapshot;
};

void check_rank(const Options& o) {
  if (o.n < 2) throw ConfigError("--n must be at least 2");
  if (o.n > o.max_n)
    throw ConfigError("--n " + std::to_string(o.n) + " exceeds the limit " + std::to_string(o.max_n) + " (raise with --max-n)");
}

TableauPoint load_point(const Options& o) {
  if (o.point_file.empty()) return o.generic || o.n < 3 ? demo_generic_point(o.n) : demo_singular_point(o.n);
  std::ifstream in(o.point_file);
  if (!in) throw ConfigError("cannot read point file " + o.point_file);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_point(buf.str(), o.n);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad point file: ") + e.what());
  }
}

std::pair<int, std::vector<int>> parse_cluster(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("--cluster expects k:i1,i2[,...]");
  try {
    const int row = std::stoi(text.substr(0, colon));
    std::vector<int> cols;
    std::stringstream ss(text.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) cols.push_back(std::stoi(tok));
    return {row, cols};
  } catch (const std::invalid_argument&) {
    throw ConfigError("--cluster expects k:i1,i2[,...]");
  }
}

// Singular context from the point and cluster flags, or a generic one when
// the point is generic and no cluster was requested.
ModuleContext load_context(const Options& o) {
  check_rank(o);
  const TableauPoint pt = load_point(o);
  const PointClass cls = classify_point(pt);
  if (const auto* bad = std::get_if<Unsupported>(&cls)) throw ConfigError("unsupported base point: " + bad->reason);
  if (std::holds_alternative<Generic>(cls)) {
    if (!o.cluster.empty()) throw ConfigError("--cluster given but the base point is generic");
    return ModuleContext::generic(pt);
  }
  const auto& found = std::get<SingularSpec>(cls);
  auto [row, cols] = o.cluster.empty() ? std::make_pair(found.row, found.cluster) : parse_cluster(o.cluster);
  try {
    return ModuleContext::singular(make_singular_spec(pt, row, cols));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

GeneratorWord load_word(const std::string& text, int n) {
  try {
    GeneratorWord w = parse_word(text);
    for (const auto& g : w) g.validate(n);
    return w;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad --word: ") + e.what());
  }
}

DistLabel load_label(const std::string& text, const ModuleContext& ctx) {
  DistLabel label;
  try {
    label = parse_label(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad --label: ") + e.what());
  }
  for (const auto& [id, off] : label.shift.entries())
    if (VarIndex::from_id(id).row >= ctx.rank()) throw ConfigError("--label shifts row n, which is fixed");
  for (const auto& [r, t] : label.pairs)
    if (t > ctx.p()) throw ConfigError("--label pair " + std::to_string(r) + std::to_string(t) + " outside the cluster");
  return label;
}

Json config_echo(const Options& o, const ModuleContext* ctx) {
  Json c = {{"n", o.n}, {"seed", o.seed}};
  if (o.degree_bound) c["degree_bound"] = o.degree_bound;
  if (ctx) {
    c["point"] = to_json(ctx->base());
    if (ctx->p() > 0) c["cluster"] = {{"row", ctx->row()}, {"columns", ctx->cluster().cluster}};
  }
  if (!o.word.empty()) c["word"] = o.word;
  if (!o.label.empty()) c["label"] = o.label;
  return c;
}

int emit(const Options& o, const Json& report, const std::string& text, bool ok) {
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) {
      std::cerr << "cannot write " << o.out << "\n";
      return kExitConfig;
    }
    f << report.dump(2) << "\n";
  }
  if (o.json)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << text;
  return ok ? kExitPass : kExitFail;
}

int cmd_verify_hom(const Options& o) {
  check_rank(o);
  const GtHomomorphism phi(o.n, GtHomomorphism::Options{o.flip_raising_sign});
  Json checks = Json::array();
  std::ostringstream text;
  std::size_t failures = 0;
  std::size_t pairs = 0;
  for (int a = 1; a <= o.n; ++a)
    for (int b = 1; b <= o.n; ++b)
      for (int c = 1; c <= o.n; ++c)
        for (int d = 1; d <= o.n; ++d) {
          const auto x = GeneratorSymbol::unit(a, b);
          const auto y = GeneratorSymbol::unit(c, d);
          const SkewElement defect = commutator_defect(phi, x, y);
          ++pairs;
          Json rec = {{"x", x.str()}, {"y", y.str()}, {"ok", defect.is_zero()}};
          if (!defect.is_zero()) {
            ++failures;
            rec["defect"] = to_json(defect);
            text << "FAIL [" << x.str() << "," << y.str() << "]: defect " << defect.str() << "\n";
          }
          checks.push_back(std::move(rec));
        }
  text << (failures ? "FAIL" : "PASS") << " verify-hom n=" << o.n << ": " << pairs << " pairs, " << failures
       << " failures\n";
  Json config = config_echo(o, nullptr);
  config["flip_raising_sign"] = o.flip_raising_sign;
  Json report = {{"command", "verify-hom"}, {"config", config}, {"ok", failures == 0},
                 {"summary", {{"pairs", pairs}, {"failures", failures}}}, {"checks", checks}};
  return emit(o, report, text.str(), failures == 0);
}

int cmd_verify_centers(const Options& o) {
  check_rank(o);
  const GtHomomorphism phi(o.n);
  Json snapshot_in;
  if (!o.snapshot.empty()) {
    std::ifstream f(o.snapshot);
    if (!f) throw ConfigError("cannot read snapshot " + o.snapshot);
    try {
      snapshot_in = Json::parse(f);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("bad snapshot: ") + e.what());
    }
    if (snapshot_in.value("n", 0) != o.n) throw ConfigError("snapshot is for a different n");
  }
  Json chars = Json::array();
  Json snapshot_out = {{"n", o.n}, {"characters", Json::object()}};
  std::ostringstream text;
  bool ok = true;
  for (int i = 1; i <= o.n; ++i)
    for (int j = 1; j <= i; ++j) {
      const auto cc = verify_central_character(phi, i, j);
      const std::string key = "c" + std::to_string(i) + std::to_string(j);
      const std::string value = cc.value.str();
      Json rec = {{"name", key}, {"ok", cc.ok}, {"value", value}, {"polynomial", to_json(cc.value)}};
      bool good = cc.ok;
      if (!cc.ok) rec["reason"] = cc.reason;
      if (!snapshot_in.is_null()) {
        const auto& expected = snapshot_in["characters"];
        if (!expected.contains(key)) {
          good = false;
          rec["snapshot"] = "missing";
        } else if (expected[key].get<std::string>() != value) {
          good = false;
          rec["snapshot"] = {{"expected", expected[key]}, {"got", value}};
          text << "DRIFT " << key << ": expected " << expected[key].get<std::string>() << ", got " << value << "\n";
        }
      }
      rec["ok"] = good;
      ok = ok && good;
      snapshot_out["characters"][key] = value;
      text << (good ? "PASS " : "FAIL ") << key << " = " << value << (cc.ok ? "" : "  (" + cc.reason + ")") << "\n";
      chars.push_back(std::move(rec));
    }
  if (!o.write_snapshot.empty()) {
    std::ofstream f(o.write_snapshot);
    if (!f) throw ConfigError("cannot write snapshot " + o.write_snapshot);
    f << snapshot_out.dump(2) << "\n";
  }
  Json report = {{"command", "verify-centers"}, {"config", config_echo(o, nullptr)}, {"ok", ok}, {"characters", chars}};
  return emit(o, report, text.str(), ok);
}

int cmd_act(const Options& o) {
  const ModuleContext ctx = load_context(o);
  const GeneratorWord w = load_word(o.word, o.n);
  if (o.label.empty()) throw ConfigError("act needs --label");
  const DistLabel label = load_label(o.label, ctx);
  const auto canon = canonical_label(label.pairs, label.shift, ctx);
  DistVector expansion;
  std::string error;
  try {
    expansion = act(w, DistVector::basis(label), ctx);
  } catch (const SingularityExceeded& e) {
    error = e.what();
  } catch (const ExtractionError& e) {
    error = e.what();
  }
  std::ostringstream text;
  Json report = {{"command", "act"}, {"config", config_echo(o, &ctx)}};
  if (!canon) report["note"] = "the label is zero under the sign relations";
  if (!error.empty()) {
    report["ok"] = false;
    report["error"] = error;
    text << "ERROR " << error << "\n";
    return emit(o, report, text.str(), false);
  }
  report["expansion"] = to_json(expansion);
  text << format_word(w) << " . D[" << format_label(label) << "] = " << expansion.str() << "\n";
  bool ok = true;
  if (o.check) {
    const unsigned bound = o.degree_bound ? o.degree_bound : 3;
    const DistLabel source = canon ? canon->label : label;
    auto res = oracle_cross_check(w, source, bound, ctx);
    if (canon && canon->sign < 0) res.expansion *= Rational(-1);
    ok = res.ok;
    report["oracle"] = {{"ok", res.ok}, {"degree_bound", res.degree_bound}, {"conclusive_bound", res.conclusive_bound},
                        {"conclusive", res.conclusive()}, {"monomials", res.monomials_checked}, {"failure", res.failure}};
    text << (res.ok ? "PASS" : "FAIL") << " oracle check on " << res.monomials_checked << " monomials of degree <= "
         << bound << (res.conclusive() ? "" : " (below the conclusive bound " + std::to_string(res.conclusive_bound) + ")")
         << (res.ok ? "" : ": " + res.failure) << "\n";
  }
  report["ok"] = ok;
  return emit(o, report, text.str(), ok);
}

int cmd_oracle_check(const Options& o) {
  const ModuleContext ctx = load_context(o);
  const unsigned bound = o.degree_bound ? o.degree_bound : 3;
  std::vector<GeneratorWord> words;
  if (o.word.empty())
    for (const auto& g : chevalley_generators(o.n)) words.push_back({g});
  else
    words.push_back(load_word(o.word, o.n));
  std::vector<DistLabel> labels;
  if (!o.label.empty()) {
    const DistLabel raw = load_label(o.label, ctx);
    const auto canon = canonical_label(raw.pairs, raw.shift, ctx);
    if (!canon) throw ConfigError("--label is zero under the sign relations");
    labels.push_back(canon->label);
  } else {
    std::vector<VarIndex> positions;
    if (ctx.p() > 0)
      for (int r = 1; r <= ctx.p(); ++r) positions.push_back(ctx.cluster_var(r));
    else
      positions.push_back({o.n - 1, 1});
    labels = enumerate_labels(positions, o.window, ctx);
  }
  Json checks = Json::array();
  std::ostringstream text;
  std::size_t failures = 0;
  std::size_t inconclusive = 0;
  for (const auto& label : labels)
    for (const auto& w : words) {
      Json rec = {{"word", format_word(w)}, {"label", format_label(label)}};
      try {
        const auto res = oracle_cross_check(w, label, bound, ctx);
        rec["ok"] = res.ok;
        rec["conclusive"] = res.conclusive();
        rec["conclusive_bound"] = res.conclusive_bound;
        rec["expansion"] = to_json(res.expansion);
        if (!res.ok) {
          ++failures;
          rec["failure"] = res.failure;
          text << "FAIL " << format_word(w) << " on " << format_label(label) << ": " << res.failure << "\n";
        }
        if (!res.conclusive()) ++inconclusive;
      } catch (const std::exception& e) {
        ++failures;
        rec["ok"] = false;
        rec["failure"] = e.what();
        text << "FAIL " << format_word(w) << " on " << format_label(label) << ": " << e.what() << "\n";
      }
      checks.push_back(std::move(rec));
    }
  text << (failures ? "FAIL" : "PASS") << " oracle-check: " << checks.size() << " checks, " << failures << " failures, "
       << inconclusive << " below the conclusive bound (degree <= " << bound << ")\n";
  Json report = {{"command", "oracle-check"}, {"config", config_echo(o, &ctx)}, {"ok", failures == 0},
                 {"summary", {{"checks", checks.size()}, {"failures", failures}, {"inconclusive", inconclusive}}},
                 {"checks", checks}};
  return emit(o, report, text.str(), failures == 0);
}

int cmd_suite(const Options& o) {
  AcceptanceConfig cfg;
  cfg.seed = o.seed;
  if (o.degree_bound) {
    cfg.gl3_degree_bound = o.degree_bound;
    cfg.gl4_degree_bound = std::min(o.degree_bound, cfg.gl4_degree_bound);
  }
  Json criteria = Json::array();
  std::ostringstream text;
  bool ok = true;
  run_acceptance(cfg, [&](const CriterionResult& r) {
    ok = ok && r.ok;
    Json rec = {{"id", r.id}, {"title", r.title}, {"ok", r.ok}, {"summary", r.summary}, {"details", r.details}};
    if (o.timings) rec["seconds"] = r.seconds;
    criteria.push_back(std::move(rec));
    if (!o.json) std::cout << (r.ok ? "PASS " : "FAIL ") << r.id << ": " << r.title << " [" << r.summary << "]\n" << std::flush;
  });
  Json config = config_echo(o, nullptr);
  config.erase("n");
  config["gl3_degree_bound"] = cfg.gl3_degree_bound;
  config["gl4_degree_bound"] = cfg.gl4_degree_bound;
  Json report = {{"command", "suite"}, {"config", config}, {"ok", ok}, {"criteria", criteria}};
  text << (ok ? "PASS" : "FAIL") << " suite\n";
  return emit(o, report, text.str(), ok);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gelfand-Tsetlin modules at singular points: exact verification tools"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "rank of gl_n")->capture_default_str();
    sub->add_option("--max-n", o.max_n, "largest accepted rank")->capture_default_str();
    sub->add_option("--seed", o.seed, "seed for randomized suites")->capture_default_str();
    sub->add_option("--degree-bound", o.degree_bound, "largest monomial degree for oracle checks");
    sub->add_flag("--json", o.json, "print the JSON report instead of text");
    sub->add_option("--out", o.out, "also write the JSON report to this file");
  };
  auto module_flags = [&](CLI::App* sub) {
    sub->add_option("--point", o.point_file, "base point file, lines k,i=p/q");
    sub->add_option("--cluster", o.cluster, "cluster as k:i1,i2[,i3...]");
    sub->add_flag("--generic", o.generic, "use the generic demo point when no --point is given");
  };

  auto* hom = app.add_subcommand("verify-hom", "commutator identity for all matrix-unit pairs");
  common(hom);
  hom->add_flag("--flip-raising-sign", o.flip_raising_sign, "debug: negate the raising operators");

  auto* centers = app.add_subcommand("verify-centers", "central characters of the Gelfand-Tsetlin generators");
  common(centers);
  centers->add_option("--snapshot", o.snapshot, "compare against a snapshot file");
  centers->add_option("--write-snapshot", o.write_snapshot, "write the computed snapshot");

  auto* actc = app.add_subcommand("act", "expand word . D_label in the distribution basis");
  common(actc);
  module_flags(actc);
  actc->add_option("--word", o.word, "generator word, e.g. E12,E21 (leftmost acts last)");
  actc->add_option("--label", o.label, "label, e.g. \"I=12;off=2,1:+1\"")->required();
  actc->add_flag("--check", o.check, "cross-check the expansion against direct evaluation");

  auto* oracle = app.add_subcommand("oracle-check", "cross-check expansions against direct evaluation");
  common(oracle);
  module_flags(oracle);
  oracle->add_option("--word", o.word, "generator word (default: each Chevalley generator)");
  oracle->add_option("--label", o.label, "single label (default: all labels in the window)");
  oracle->add_option("--window", o.window, "offset window on the cluster positions")->capture_default_str();

  auto* suite = app.add_subcommand("suite", "run the acceptance matrix A1-A8");
  common(suite);
  suite->add_flag("--timings", o.timings, "include wall-clock timings in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (*hom) return cmd_verify_hom(o);
    if (*centers) return cmd_verify_centers(o);
    if (*actc) return cmd_act(o);
    if (*oracle) return cmd_oracle_check(o);
    if (*suite) return cmd_suite(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitConfig;
}
