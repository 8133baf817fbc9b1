#include "gtsing/skew_ring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gtsing {

SkewElement SkewElement::term(const Shift& m, const RationalFunction& f) {
  SkewElement a;
  a.add_term(m, f);
  return a;
}

RationalFunction SkewElement::coefficient(const Shift& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? RationalFunction{} : it->second;
}

void SkewElement::add_term(const Shift& m, const RationalFunction& f) {
  if (f.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SkewElement& SkewElement::operator+=(const SkewElement& other) {
  for (const auto& [m, f] : other.terms_) add_term(m, f);
  return *this;
}

SkewElement& SkewElement::operator-=(const SkewElement& other) {
  for (const auto& [m, f] : other.terms_) add_term(m, -f);
  return *this;
}

SkewElement& SkewElement::operator*=(const RationalFunction& f) {
  if (f.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, g] : terms_) g = f * g;
  return *this;
}

SkewElement SkewElement::operator-() const {
  SkewElement r = *this;
  for (auto& [m, f] : r.terms_) f = -f;
  return r;
}

std::string SkewElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, f] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "[" << f.str() << "]";
    if (m.is_identity()) {
      os << "*id";
    } else {
      for (const auto& [id, off] : m.entries()) {
        const VarIndex v = VarIndex::from_id(id);
        os << "*s" << v.row << v.col;
        if (off != 1) os << "^" << off;
      }
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const SkewElement& a) { return os << a.str(); }

SkewElement compose(const SkewElement& a, const SkewElement& b) {
  SkewElement r;
  for (const auto& [ma, fa] : a.terms())
    for (const auto& [mb, fb] : b.terms()) r.add_term(ma + mb, fa * fb.shift_subst(ma));
  return r;
}

RationalFunction act_on_function(const SkewElement& a, const RationalFunction& F) {
  RationalFunction r;
  for (const auto& [m, f] : a.terms()) r += f * F.shift_subst(m);
  return r;
}

SkewElement permute_element(const RowPermutation& s, const SkewElement& a) {
  SkewElement r;
  for (const auto& [m, f] : a.terms()) r.add_term(conjugate_shift(s, m), f.permute(s));
  return r;
}

RowPermutation ClusterAction::embed(const std::vector<int>& perm) const {
  std::vector<int> images(static_cast<std::size_t>(row));
  std::iota(images.begin(), images.end(), 1);
  for (int r = 1; r <= p(); ++r) images[cluster[r - 1] - 1] = cluster[perm[r - 1] - 1];
  return RowPermutation::on_row(n, row, std::move(images));
}

RowPermutation ClusterAction::transposition(int r, int t) const {
  return RowPermutation::transposition(n, row, cluster.at(r - 1), cluster.at(t - 1));
}

ClusterAction cluster_action(const SingularSpec& spec) { return {spec.n, spec.row, spec.cluster}; }

bool is_invariant(const SkewElement& a, const ClusterAction& cl) {
  for (int r = 1; r < cl.p(); ++r)
    if (!(permute_element(cl.transposition(r, r + 1), a) == a)) return false;
  return true;
}

unsigned cluster_singularity_order(const SkewElement& a, const ClusterAction& cl) {
  std::vector<LinearFactor> cluster_factors;
  for (int r = 1; r <= cl.p(); ++r)
    for (int t = r + 1; t <= cl.p(); ++t)
      cluster_factors.push_back(
          LinearFactor::difference({cl.row, cl.cluster[r - 1]}, {cl.row, cl.cluster[t - 1]}).first);
  unsigned order = 0;
  for (const auto& [m, f] : a.terms())
    for (const auto& [factor, e] : f.denominator())
      if (std::find(cluster_factors.begin(), cluster_factors.end(), factor) != cluster_factors.end())
        order = std::max(order, e);
  return order;
}

}  // namespace gtsing
