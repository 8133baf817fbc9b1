#include "gtsing/report.hpp"

namespace gtsing {

Json to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [mono, c] : p.terms()) {
    Json exps = Json::array();
    for (const auto& [id, e] : mono.powers()) {
      const VarIndex v = VarIndex::from_id(id);
      exps.push_back({v.row, v.col, e});
    }
    terms.push_back({{"coeff", to_string(c)}, {"exps", exps}});
  }
  return terms;
}

Json to_json(const RationalFunction& f) {
  Json den = Json::array();
  for (const auto& [factor, mult] : f.denominator())
    den.push_back({{"factor", factor.str()}, {"multiplicity", mult}});
  return {{"scalar", to_string(f.scalar())},
          {"numerator", to_json(f.numerator())},
          {"denominator", den},
          {"text", f.str()}};
}

Json to_json(const Shift& m) {
  Json offs = Json::array();
  for (const auto& [id, off] : m.entries()) {
    const VarIndex v = VarIndex::from_id(id);
    offs.push_back({v.row, v.col, off});
  }
  return offs;
}

Json to_json(const SkewElement& a) {
  Json terms = Json::array();
  for (const auto& [m, f] : a.terms()) terms.push_back({{"shift", to_json(m)}, {"coeff", to_json(f)}});
  return terms;
}

Json to_json(const DistLabel& label) {
  Json pairs = Json::array();
  for (const auto& [r, t] : label.pairs) pairs.push_back({r, t});
  return {{"pairs", pairs}, {"offsets", to_json(label.shift)}, {"text", format_label(label)}};
}

Json to_json(const DistVector& d) {
  Json out = Json::array();
  for (const auto& [label, c] : d.coeffs()) {
    Json rec = to_json(label);
    rec["coeff"] = to_string(c);
    out.push_back(std::move(rec));
  }
  return out;
}

Json to_json(const TableauPoint& pt) {
  Json rows = Json::array();
  for (int k = 1; k <= pt.rank(); ++k) {
    Json row = Json::array();
    for (int i = 1; i <= k; ++i) row.push_back(to_string(pt[{k, i}]));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gtsing
