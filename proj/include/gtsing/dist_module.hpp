#pragma once

#include "gtsing/gt_formulas.hpp"
#include "gtsing/skew_ring.hpp"

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gtsing {

// Subset of the cluster pairs, each stored as (r, t) with r < t, sorted.
using PairSubset = std::vector<ClusterPair>;

struct DistLabel {
  PairSubset pairs;
  Shift shift;

  friend auto operator<=>(const DistLabel&, const DistLabel&) = default;
  friend bool operator==(const DistLabel&, const DistLabel&) = default;
};

std::string format_label(const DistLabel& label);
// "I=12,13;off=2,1:+1;off=1,1:-1"; "I=" is the empty subset.
DistLabel parse_label(const std::string& text);

class DistVector {
 public:
  using Coeffs = std::map<DistLabel, Rational>;

  DistVector() = default;
  static DistVector basis(const DistLabel& label) {
    DistVector v;
    v.add(label, 1);
    return v;
  }

  const Coeffs& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }
  Rational coefficient(const DistLabel& label) const;

  void add(const DistLabel& label, const Rational& c);
  DistVector& operator+=(const DistVector& other);
  DistVector& operator-=(const DistVector& other);
  DistVector& operator*=(const Rational& c);
  friend DistVector operator+(DistVector a, const DistVector& b) { return a += b; }
  friend DistVector operator-(DistVector a, const DistVector& b) { return a -= b; }
  friend DistVector operator*(const Rational& c, DistVector a) { return a *= c; }
  friend bool operator==(const DistVector&, const DistVector&) = default;

  std::string str() const;

 private:
  Coeffs coeffs_;
};

struct ClusterPermutation {
  std::vector<int> images;  // tau(r) for r = 1..p
  int sign = 1;
  RowPermutation embedded;
};

// Everything the distribution machinery needs about the base point o.
//
// For a singular point: the cluster, its pairs T, the Vandermonde z_T and
// the group S_p. For a generic point the cluster is empty, T is empty,
// z_T = 1 and the group is trivial, so D_{0,sigma} = ev_o o sigma.
class ModuleContext {
 public:
  // How Taylor data of z_T h at o is turned into coefficients of D_{I,s}.
  // `literal` uses d_I(z_T h)(o) directly, which is exact only for p <= 2;
  // `dual` solves for the coefficients against the pairing
  // ev_o d_T(z_I .) = sum_K (d_K z_I) ev_o d_{T\K}, exact for every p.
  enum class Extraction { dual, literal };

  static ModuleContext singular(const SingularSpec& spec, Extraction rule = Extraction::dual);
  static ModuleContext generic(const TableauPoint& point);

  int rank() const { return n_; }
  int row() const { return cluster_.row; }
  int p() const { return cluster_.p(); }
  const TableauPoint& base() const { return base_; }
  const ClusterAction& cluster() const { return cluster_; }
  const std::vector<ClusterPair>& pairs() const { return pairs_; }
  const Polynomial& vandermonde() const { return vandermonde_; }
  const std::vector<ClusterPermutation>& group() const { return group_; }
  std::size_t group_order() const { return group_.size(); }
  const GtHomomorphism& phi() const { return *phi_; }
  Extraction extraction_rule() const { return rule_; }
  // Operator symbols (x-variables standing for d/dx), indexed by subset
  // bitmask over pairs(): pairing_symbol(I) is F -> ev_o d_T(z_I F) and
  // derivative_symbol(J) is F -> ev_o d_J F.
  const Polynomial& pairing_symbol(std::size_t mask) const { return pairing_symbols_.at(mask); }
  const Polynomial& derivative_symbol(std::size_t mask) const { return derivative_symbols_.at(mask); }
  PairSubset subset_of(std::size_t mask) const;
  VarIndex cluster_var(int r) const { return {cluster_.row, cluster_.cluster.at(r - 1)}; }

  // z_{rt} = x_{k i_r} - x_{k i_t}; z_I = prod over I.
  Polynomial z(const ClusterPair& pair) const;
  Polynomial z(const PairSubset& subset) const;

 private:
  ModuleContext() = default;
  void init_group();
  void init_extraction();

  int n_ = 0;
  TableauPoint base_;
  ClusterAction cluster_;
  std::vector<ClusterPair> pairs_;
  Polynomial vandermonde_{1};
  std::vector<ClusterPermutation> group_;
  std::shared_ptr<const GtHomomorphism> phi_;
  Extraction rule_ = Extraction::dual;
  std::vector<Polynomial> pairing_symbols_;
  std::vector<Polynomial> derivative_symbols_;
};

class SingularityExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The dual extraction found a point functional outside the span of the basis.
class ExtractionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PoleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// prod over z_pairs of (x_{k i_r} - x_{k i_t}).
Polynomial vandermonde_poly(const ClusterAction& cl);

// f = V_p * g with g symmetric, or nullopt when f is not alternating.
std::optional<Polynomial> alternating_quotient(const Polynomial& f, const ClusterAction& cl);

// 1/2 (d/dx_{k i_r} - d/dx_{k i_t})
RationalFunction z_derive(const RationalFunction& a, const ClusterPair& pair, const ModuleContext& ctx);
Polynomial z_derive(const Polynomial& a, const ClusterPair& pair, const ModuleContext& ctx);

struct SignedLabel {
  DistLabel label;
  int sign = 1;
};

// Canonical representative of D_{I,m} under D_{I,s} = (-1)^tau D_{tau(I),tau(s)}
// (pair reversals in tau(I) contribute their own sign), or nullopt when the
// relations force D_{I,m} = 0.
std::optional<SignedLabel> canonical_label(const PairSubset& subset, const Shift& m, const ModuleContext& ctx);
bool is_canonical(const DistLabel& label, const ModuleContext& ctx);

// B = sum_tau (-1)^tau tau(z_I m) / z_T, so that D_{I,m} = L o B.
SkewElement build_symmetrized_element(const PairSubset& subset, const Shift& m, const ModuleContext& ctx);

// R.D := D o R, expanded back into canonical labels via the
// derivative-extraction formula. Throws SingularityExceeded when R o B is not
// cluster-invariant, has more than a Vandermonde pole, or z_T h_i has a pole
// at o.
DistVector act_element(const SkewElement& r, const DistVector& d, const ModuleContext& ctx);
DistVector act(const GeneratorWord& w, const DistVector& d, const ModuleContext& ctx);
DistVector act(const GeneratorSymbol& g, const DistVector& d, const ModuleContext& ctx);

// Point evaluation of constant-coefficient derivatives:
// F -> sum_j c_j (d^alpha_j F)(base), multi-indices stored as monomials.
struct LocalDistribution {
  TableauPoint base;
  std::vector<std::pair<Rational, Monomial>> terms;

  unsigned order() const;
  Rational apply(const Polynomial& f) const;
};

std::vector<LocalDistribution> dist_as_local_distributions(const DistLabel& label, const ModuleContext& ctx);

// Direct evaluation D_{I,m}(F) = ev_o d_T( sum_tau (-1)^tau tau(z_I) F o tau(m)^{-1} ).
// Accepts non-canonical labels. Throws PoleError if the symmetrized function
// is singular at o.
Rational oracle_apply(const DistLabel& label, const RationalFunction& f, const ModuleContext& ctx);
Rational oracle_apply(const DistVector& d, const RationalFunction& f, const ModuleContext& ctx);
// D_{I,m}(R(F)) without materializing R(F).
Rational oracle_apply(const DistLabel& label, const SkewElement& r, const Polynomial& f, const ModuleContext& ctx);

// All monomials in the tableau coordinates of total degree <= bound.
std::vector<Monomial> monomials_up_to(int n, unsigned bound);

// Support points o - tau(m) of a vector, as shifts.
std::vector<Shift> support_shifts(const DistVector& d, const ModuleContext& ctx);
// Order + L-infinity diameter of the support + 1.
unsigned conclusive_degree_bound(const std::vector<Shift>& support, const ModuleContext& ctx);

struct CrossCheckResult {
  bool ok = true;
  unsigned degree_bound = 0;
  unsigned conclusive_bound = 0;
  std::size_t monomials_checked = 0;
  DistVector expansion;
  std::string failure;  // first mismatching monomial with both values
  bool conclusive() const { return degree_bound >= conclusive_bound; }
};

// (w.D)(F) == D(Phi(w)(F)) for every monomial F of degree <= bound.
CrossCheckResult oracle_cross_check(const GeneratorWord& w, const DistLabel& label, unsigned degree_bound,
                                    const ModuleContext& ctx);

// True iff d is the zero functional on all monomials up to the bound.
bool vanishes_as_distribution(const DistVector& d, unsigned degree_bound, const ModuleContext& ctx);

struct ModuleAxiomResult {
  bool ok = false;
  // Labelwise identity; when false but ok is true, the two sides agree as
  // distributions on all monomials up to `degree_bound`.
  bool syntactic = false;
  unsigned degree_bound = 0;
  DistVector defect;
};

// a.(b.D) - b.(a.D) == [a,b].D
ModuleAxiomResult verify_module_axiom(const GeneratorSymbol& a, const GeneratorSymbol& b, const DistVector& d,
                                      const ModuleContext& ctx);

struct P2Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct P2Report {
  bool ok = false;
  std::vector<P2Check> checks;
  std::vector<std::pair<std::string, std::string>> notation;
};

// Cluster size two: D_{{(1,2)},s} = L o (s + tau(s)), D_{0,s} = L o (s - tau(s))/z,
// their relations, D^1_id = 2 ev_o and D^2_id = 0.
P2Report p2_correspondence(const ModuleContext& ctx, unsigned degree_bound = 4, int window = 1);

// Canonical labels with offsets in {-window..window} on the given positions.
std::vector<DistLabel> enumerate_labels(const std::vector<VarIndex>& positions, int window,
                                        const ModuleContext& ctx);

}  // namespace gtsing
