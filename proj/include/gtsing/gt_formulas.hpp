#pragma once

#include "gtsing/skew_ring.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gtsing {

struct GeneratorSymbol {
  enum class Kind { raising, lowering, cartan, unit };
  Kind kind = Kind::unit;
  int a = 1;  // k for Chevalley kinds, s for units
  int b = 1;  // t for units

  static GeneratorSymbol raising(int k) { return {Kind::raising, k, 0}; }
  static GeneratorSymbol lowering(int k) { return {Kind::lowering, k, 0}; }
  static GeneratorSymbol cartan(int k) { return {Kind::cartan, k, 0}; }
  static GeneratorSymbol unit(int s, int t) { return {Kind::unit, s, t}; }

  // (s, t) with this symbol equal to E_{st}.
  std::pair<int, int> matrix_unit() const;
  bool is_chevalley() const;
  void validate(int n) const;
  std::string str() const;

  friend bool operator==(const GeneratorSymbol& x, const GeneratorSymbol& y) {
    return x.matrix_unit() == y.matrix_unit();
  }
};

using GeneratorWord = std::vector<GeneratorSymbol>;

// "E12,E21" (or "E1_2" when an index exceeds 9); empty string = empty word.
GeneratorWord parse_word(std::string_view text);
std::string format_word(const GeneratorWord& w);

// All Chevalley symbols E_{k,k+1}, E_{k+1,k}, E_{kk} of gl_n.
std::vector<GeneratorSymbol> chevalley_generators(int n);

// Image of U(gl_n) in the skew group ring under the classical
// Gelfand-Tsetlin formulas. Bracket convention, fixed everywhere:
//   Phi(Y) o Phi(X) - Phi(X) o Phi(Y) = Phi([X, Y]).
// All n^2 matrix units are computed on construction; instances are immutable.
class GtHomomorphism {
 public:
  struct Options {
    // Negative control: flips the sign of every raising operator.
    bool flip_raising_sign = false;
  };

  explicit GtHomomorphism(int n) : GtHomomorphism(n, Options{}) {}
  GtHomomorphism(int n, Options options);

  int rank() const { return n_; }

  // Direct image of a Chevalley generator.
  SkewElement chevalley(const GeneratorSymbol& g) const;
  const SkewElement& matrix_unit(int s, int t) const;
  const SkewElement& image(const GeneratorSymbol& g) const;
  // E_st = [E_sr, E_rt] for an arbitrary intermediate r not in {s, t}.
  SkewElement matrix_unit_via(int s, int t, int r) const;
  // Phi(X_m) o ... o Phi(X_1), so that (X_1...X_m).D = D o word(w).
  SkewElement word(const GeneratorWord& w) const;

 private:
  SkewElement build_unit(int s, int t) const;

  int n_;
  Options options_;
  std::vector<SkewElement> units_;  // (s-1)*n + (t-1)
};

// Phi-bracket under the pinned convention: y o x - x o y.
SkewElement phi_bracket(const SkewElement& x, const SkewElement& y);

// [E_ab, E_cd] = delta_bc E_ad - delta_ad E_cb as a list of (coeff, E_st).
std::vector<std::pair<int, std::pair<int, int>>> bracket_of_units(std::pair<int, int> x, std::pair<int, int> y);

// Phi(Y) o Phi(X) - Phi(X) o Phi(Y) - Phi([X,Y]); zero iff the identity holds.
SkewElement commutator_defect(const GtHomomorphism& phi, const GeneratorSymbol& x, const GeneratorSymbol& y);
inline bool verify_commutator_identity(const GtHomomorphism& phi, const GeneratorSymbol& x, const GeneratorSymbol& y) {
  return skew_zero_test(commutator_defect(phi, x, y));
}

// c_ij = sum over (s_1..s_j) in {1..i}^j of E_{s1 s2} E_{s2 s3} ... E_{sj s1}.
SkewElement gt_subalgebra_generator(const GtHomomorphism& phi, int i, int j);

struct CentralCharacter {
  bool ok = false;
  Polynomial value;
  std::string reason;  // empty when ok
};

// Checks that Phi(c_ij) = F id with F a polynomial invariant under G.
CentralCharacter verify_central_character(const GtHomomorphism& phi, int i, int j);

}  // namespace gtsing
