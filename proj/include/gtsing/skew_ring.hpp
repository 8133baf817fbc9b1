#pragma once

#include "gtsing/rational_function.hpp"
#include "gtsing/tableau.hpp"

#include <map>
#include <string>

namespace gtsing {

// Finite sum  sum_i f_i sigma_i  of the skew group ring, with product
//   (f sigma) o (g tau) = f sigma(g) (sigma tau),  sigma(g) = g o sigma^{-1}.
class SkewElement {
 public:
  using Terms = std::map<Shift, RationalFunction>;

  SkewElement() = default;
  static SkewElement unit() { return term(Shift{}, RationalFunction(1)); }
  static SkewElement term(const Shift& m, const RationalFunction& f);
  static SkewElement scalar(const RationalFunction& f) { return term(Shift{}, f); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  RationalFunction coefficient(const Shift& m) const;
  std::size_t size() const { return terms_.size(); }

  SkewElement& operator+=(const SkewElement& other);
  SkewElement& operator-=(const SkewElement& other);
  SkewElement& operator*=(const RationalFunction& f);  // left multiplication by f
  SkewElement operator-() const;
  friend SkewElement operator+(SkewElement a, const SkewElement& b) { return a += b; }
  friend SkewElement operator-(SkewElement a, const SkewElement& b) { return a -= b; }
  friend bool operator==(const SkewElement&, const SkewElement&) = default;

  void add_term(const Shift& m, const RationalFunction& f);
  std::string str() const;

 private:
  Terms terms_;
};

// a o b
SkewElement compose(const SkewElement& a, const SkewElement& b);
// a * b := b o a
inline SkewElement star(const SkewElement& a, const SkewElement& b) { return compose(b, a); }

// sum_i f_i * F(x - m_i)
RationalFunction act_on_function(const SkewElement& a, const RationalFunction& F);

SkewElement permute_element(const RowPermutation& s, const SkewElement& a);

// Syntactic zero test on the canonical form.
inline bool skew_zero_test(const SkewElement& a) { return a.is_zero(); }

// Cluster permutation group embedded in G. Permutations are images of the
// 1-based cluster positions: perm[r-1] = tau(r).
struct ClusterAction {
  int n = 0;
  int row = 0;
  std::vector<int> cluster;

  int p() const { return static_cast<int>(cluster.size()); }
  RowPermutation embed(const std::vector<int>& perm) const;
  RowPermutation transposition(int r, int t) const;
};

ClusterAction cluster_action(const SingularSpec& spec);

// Invariance under the cluster symmetric group, checked on the adjacent
// transpositions that generate it.
bool is_invariant(const SkewElement& a, const ClusterAction& cl);

// Largest multiplicity of a denominator factor x_{k i_r} - x_{k i_t} (no
// constant part) over all terms.
unsigned cluster_singularity_order(const SkewElement& a, const ClusterAction& cl);

std::ostream& operator<<(std::ostream& os, const SkewElement& a);

}  // namespace gtsing
