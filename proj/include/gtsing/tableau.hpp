#pragma once

#include "gtsing/variables.hpp"

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gtsing {

// Element of the shift group: integer offsets on rows 1..n-1, stored sparsely
// as (variable id, offset) with nonzero offsets sorted by id.
class Shift {
 public:
  using Entry = std::pair<int, int>;

  Shift() = default;
  static Shift unit(VarIndex v, int amount = 1);
  static Shift from_entries(std::vector<Entry> entries);

  int offset(VarIndex v) const;
  int offset_id(int id) const;
  const std::vector<Entry>& entries() const { return entries_; }
  bool is_identity() const { return entries_.empty(); }
  int max_row() const;

  Shift compose(const Shift& other) const;  // componentwise sum
  Shift inverse() const;

  friend auto operator<=>(const Shift&, const Shift&) = default;
  friend bool operator==(const Shift&, const Shift&) = default;

 private:
  std::vector<Entry> entries_;
};

inline Shift operator+(const Shift& a, const Shift& b) { return a.compose(b); }
inline Shift operator-(const Shift& a) { return a.inverse(); }

// s = (s_1, ..., s_n) in S_1 x ... x S_n. image(k, i) = s_k(i), 1-based.
class RowPermutation {
 public:
  RowPermutation() = default;
  static RowPermutation identity(int n);
  static RowPermutation transposition(int n, int row, int a, int b);
  // Row `row` gets `images` (images[i-1] = s_row(i)); identity elsewhere.
  static RowPermutation on_row(int n, int row, std::vector<int> images);

  int rank() const { return static_cast<int>(rows_.size()); }
  int image(int row, int col) const;
  RowPermutation inverse() const;
  RowPermutation compose(const RowPermutation& after) const;  // after o this
  bool is_identity() const;

  friend bool operator==(const RowPermutation&, const RowPermutation&) = default;

 private:
  std::vector<std::vector<int>> rows_;
};

// Point-level action of permutations is the left action
// (s.x)_{k,s_k(i)} = x_{k,i}; functions transform by f -> f o s^{-1}.
// Conjugation s o sigma o s^{-1} then moves offset m_{k,i} to (k, s_k(i)).
Shift conjugate_shift(const RowPermutation& s, const Shift& m);

struct TableauPoint {
  PointAssignment point;

  int rank() const { return point.rank(); }
  const Rational& operator[](VarIndex v) const { return point[v]; }
  friend bool operator==(const TableauPoint&, const TableauPoint&) = default;
};

TableauPoint apply_shift(const TableauPoint& pt, const Shift& m);
TableauPoint apply_permutation(const TableauPoint& pt, const RowPermutation& s);

// One cluster of p >= 2 equal entries in row `row` at columns `cluster`.
struct SingularSpec {
  int n = 0;
  int row = 0;
  std::vector<int> cluster;  // strictly increasing columns
  TableauPoint base;

  int p() const { return static_cast<int>(cluster.size()); }
  VarIndex cluster_var(int r) const { return {row, cluster.at(r - 1)}; }  // r is 1-based
};

struct Generic {};
struct Unsupported {
  std::string reason;
};
using PointClass = std::variant<Generic, SingularSpec, Unsupported>;

PointClass classify_point(const TableauPoint& pt);

// Validates a user-declared cluster against the point; throws
// std::invalid_argument naming the violated condition.
SingularSpec make_singular_spec(const TableauPoint& pt, int row, std::vector<int> cluster);

// (1,2), ..., (1,p), (2,3), ..., (p-1,p); 1-based cluster positions.
using ClusterPair = std::pair<int, int>;
std::vector<ClusterPair> z_pairs(int p);
inline std::vector<ClusterPair> z_pairs(const SingularSpec& spec) { return z_pairs(spec.p()); }

// Text form: one "k,i=p/q" per line; blank lines and '#' comments ignored.
TableauPoint parse_point(const std::string& text, int n);
std::string format_point(const TableauPoint& pt);

}  // namespace gtsing
