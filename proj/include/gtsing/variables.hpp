#pragma once

#include "gtsing/rational.hpp"

#include <compare>
#include <string>
#include <vector>

namespace gtsing {

// Coordinate x_{row,col} on the tableau space, 1 <= col <= row.
// Variables are totally ordered by (row, col); id() is the position in that
// order and does not depend on the rank n.
struct VarIndex {
  int row = 1;
  int col = 1;

  constexpr int id() const { return row * (row - 1) / 2 + (col - 1); }
  static VarIndex from_id(int id);

  friend constexpr auto operator<=>(const VarIndex&, const VarIndex&) = default;
};

inline constexpr int variable_count(int n) { return n * (n + 1) / 2; }

std::string variable_name(VarIndex v);

// Total assignment of rational values to the n(n+1)/2 coordinates.
class PointAssignment {
 public:
  PointAssignment() = default;
  explicit PointAssignment(int n);

  int rank() const { return n_; }
  const Rational& operator[](VarIndex v) const;
  const Rational& at_id(int id) const;
  void set(VarIndex v, const Rational& value);
  const std::vector<Rational>& values() const { return values_; }

  friend bool operator==(const PointAssignment&, const PointAssignment&) = default;

 private:
  int n_ = 0;
  std::vector<Rational> values_;
};

}  // namespace gtsing
