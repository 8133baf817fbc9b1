#include "gtsing/tableau.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gtsing {

// ---------------------------------------------------------------------------
// Variables and point assignments

VarIndex VarIndex::from_id(int id) {
  if (id < 0) throw std::invalid_argument("negative variable id");
  int row = 1;
  while (row * (row + 1) / 2 <= id) ++row;
  return {row, id - row * (row - 1) / 2 + 1};
}

std::string variable_name(VarIndex v) {
  if (v.row < 10 && v.col < 10) return "x" + std::to_string(v.row) + std::to_string(v.col);
  return "x" + std::to_string(v.row) + "_" + std::to_string(v.col);
}

PointAssignment::PointAssignment(int n) : n_(n), values_(static_cast<std::size_t>(variable_count(n))) {
  if (n < 1) throw std::invalid_argument("rank must be positive");
}

const Rational& PointAssignment::operator[](VarIndex v) const { return at_id(v.id()); }

const Rational& PointAssignment::at_id(int id) const {
  if (id < 0 || id >= static_cast<int>(values_.size()))
    throw std::out_of_range("variable " + variable_name(VarIndex::from_id(id)) + " outside rank " +
                            std::to_string(n_));
  return values_[static_cast<std::size_t>(id)];
}

void PointAssignment::set(VarIndex v, const Rational& value) {
  if (v.row < 1 || v.row > n_ || v.col < 1 || v.col > v.row)
    throw std::out_of_range("position outside the tableau");
  values_[static_cast<std::size_t>(v.id())] = value;
}

// ---------------------------------------------------------------------------
// Shift group

Shift Shift::unit(VarIndex v, int amount) { return from_entries({{v.id(), amount}}); }

Shift Shift::from_entries(std::vector<Entry> entries) {
  std::map<int, int> acc;
  for (const auto& [id, off] : entries) acc[id] += off;
  Shift s;
  for (const auto& [id, off] : acc)
    if (off != 0) s.entries_.emplace_back(id, off);
  return s;
}

int Shift::offset_id(int id) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{id, 0},
                             [](const Entry& a, const Entry& b) { return a.first < b.first; });
  return (it != entries_.end() && it->first == id) ? it->second : 0;
}

int Shift::offset(VarIndex v) const { return offset_id(v.id()); }

int Shift::max_row() const {
  return entries_.empty() ? 0 : VarIndex::from_id(entries_.back().first).row;
}

Shift Shift::compose(const Shift& other) const {
  std::vector<Entry> all = entries_;
  all.insert(all.end(), other.entries_.begin(), other.entries_.end());
  return from_entries(std::move(all));
}

Shift Shift::inverse() const {
  Shift s = *this;
  for (auto& e : s.entries_) e.second = -e.second;
  return s;
}

// ---------------------------------------------------------------------------
// Row permutations

RowPermutation RowPermutation::identity(int n) {
  RowPermutation s;
  for (int k = 1; k <= n; ++k) {
    std::vector<int> row(static_cast<std::size_t>(k));
    std::iota(row.begin(), row.end(), 1);
    s.rows_.push_back(std::move(row));
  }
  return s;
}

RowPermutation RowPermutation::transposition(int n, int row, int a, int b) {
  RowPermutation s = identity(n);
  if (row < 1 || row > n || a < 1 || a > row || b < 1 || b > row)
    throw std::out_of_range("transposition outside the tableau");
  std::swap(s.rows_[row - 1][a - 1], s.rows_[row - 1][b - 1]);
  return s;
}

RowPermutation RowPermutation::on_row(int n, int row, std::vector<int> images) {
  RowPermutation s = identity(n);
  if (row < 1 || row > n || static_cast<int>(images.size()) != row)
    throw std::invalid_argument("row permutation has wrong length");
  std::vector<int> sorted = images;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < row; ++i)
    if (sorted[i] != i + 1) throw std::invalid_argument("row permutation is not a bijection");
  s.rows_[row - 1] = std::move(images);
  return s;
}

int RowPermutation::image(int row, int col) const { return rows_.at(row - 1).at(col - 1); }

RowPermutation RowPermutation::inverse() const {
  RowPermutation s = *this;
  for (std::size_t k = 0; k < rows_.size(); ++k)
    for (std::size_t i = 0; i < rows_[k].size(); ++i) s.rows_[k][rows_[k][i] - 1] = static_cast<int>(i) + 1;
  return s;
}

RowPermutation RowPermutation::compose(const RowPermutation& after) const {
  if (after.rank() != rank()) throw std::invalid_argument("rank mismatch in permutation product");
  RowPermutation s = *this;
  for (std::size_t k = 0; k < rows_.size(); ++k)
    for (std::size_t i = 0; i < rows_[k].size(); ++i) s.rows_[k][i] = after.rows_[k][rows_[k][i] - 1];
  return s;
}

bool RowPermutation::is_identity() const {
  for (const auto& row : rows_)
    for (std::size_t i = 0; i < row.size(); ++i)
      if (row[i] != static_cast<int>(i) + 1) return false;
  return true;
}

Shift conjugate_shift(const RowPermutation& s, const Shift& m) {
  std::vector<Shift::Entry> moved;
  moved.reserve(m.entries().size());
  for (const auto& [id, off] : m.entries()) {
    const VarIndex v = VarIndex::from_id(id);
    if (v.row > s.rank()) throw std::invalid_argument("shift outside permutation rank");
    moved.emplace_back(VarIndex{v.row, s.image(v.row, v.col)}.id(), off);
  }
  return Shift::from_entries(std::move(moved));
}

// ---------------------------------------------------------------------------
// Points

TableauPoint apply_shift(const TableauPoint& pt, const Shift& m) {
  TableauPoint r = pt;
  for (const auto& [id, off] : m.entries()) {
    const VarIndex v = VarIndex::from_id(id);
    r.point.set(v, pt[v] + off);
  }
  return r;
}

TableauPoint apply_permutation(const TableauPoint& pt, const RowPermutation& s) {
  TableauPoint r = pt;
  const int n = pt.rank();
  for (int k = 1; k <= n; ++k)
    for (int i = 1; i <= k; ++i) r.point.set({k, s.image(k, i)}, pt[{k, i}]);
  return r;
}

PointClass classify_point(const TableauPoint& pt) {
  const int n = pt.rank();
  std::optional<SingularSpec> found;
  for (int k = 1; k <= n; ++k) {
    // Group equal entries; any other integer difference is unsupported.
    std::vector<std::vector<int>> groups;
    for (int i = 1; i <= k; ++i) {
      bool placed = false;
      for (auto& g : groups) {
        const Rational diff = pt[{k, i}] - pt[{k, g.front()}];
        if (diff == 0) {
          g.push_back(i);
          placed = true;
          break;
        }
        if (is_integer(diff))
          return Unsupported{"nonzero integer difference between " + variable_name({k, i}) + " and " +
                             variable_name({k, g.front()})};
      }
      if (!placed) groups.push_back({i});
    }
    for (auto& g : groups) {
      if (g.size() < 2) continue;
      if (found) return Unsupported{"more than one cluster of equal entries"};
      found = SingularSpec{n, k, g, pt};
    }
  }
  if (!found) return Generic{};
  return *found;
}

SingularSpec make_singular_spec(const TableauPoint& pt, int row, std::vector<int> cluster) {
  const int n = pt.rank();
  std::sort(cluster.begin(), cluster.end());
  if (cluster.size() < 2) throw std::invalid_argument("a cluster needs at least two columns");
  if (std::adjacent_find(cluster.begin(), cluster.end()) != cluster.end())
    throw std::invalid_argument("cluster columns must be distinct");
  if (row < 1 || row > n || cluster.front() < 1 || cluster.back() > row)
    throw std::invalid_argument("cluster outside the tableau");
  if (row == n)
    throw std::invalid_argument("cluster in row n: row-n entries never appear in a denominator, "
                                "so the point behaves as a generic one");
  if (row == 1) throw std::invalid_argument("row 1 has a single entry");
  const PointClass cls = classify_point(pt);
  if (const auto* u = std::get_if<Unsupported>(&cls)) throw std::invalid_argument(u->reason);
  if (std::holds_alternative<Generic>(cls))
    throw std::invalid_argument("point is generic: cluster entries are not equal");
  const auto& spec = std::get<SingularSpec>(cls);
  if (spec.row != row || spec.cluster != cluster)
    throw std::invalid_argument("declared cluster does not match the equal entries of the point (row " +
                                std::to_string(spec.row) + ")");
  return spec;
}

std::vector<ClusterPair> z_pairs(int p) {
  std::vector<ClusterPair> pairs;
  for (int r = 1; r <= p; ++r)
    for (int t = r + 1; t <= p; ++t) pairs.emplace_back(r, t);
  return pairs;
}

TableauPoint parse_point(const std::string& text, int n) {
  TableauPoint pt{PointAssignment(n)};
  std::vector<bool> seen(static_cast<std::size_t>(variable_count(n)), false);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto comma = line.find(',');
    const auto eq = line.find('=');
    if (comma == std::string::npos || eq == std::string::npos || comma > eq)
      throw std::invalid_argument("point line " + std::to_string(lineno) + ": expected k,i=p/q");
    int k = 0;
    int i = 0;
    try {
      k = std::stoi(line.substr(0, comma));
      i = std::stoi(line.substr(comma + 1, eq - comma - 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("point line " + std::to_string(lineno) + ": bad position");
    }
    if (k < 1 || k > n || i < 1 || i > k)
      throw std::invalid_argument("point line " + std::to_string(lineno) + ": position outside the tableau");
    pt.point.set({k, i}, parse_rational(line.substr(eq + 1)));
    seen[static_cast<std::size_t>(VarIndex{k, i}.id())] = true;
  }
  for (int id = 0; id < variable_count(n); ++id)
    if (!seen[static_cast<std::size_t>(id)])
      throw std::invalid_argument("point is missing " + variable_name(VarIndex::from_id(id)));
  return pt;
}

std::string format_point(const TableauPoint& pt) {
  std::ostringstream os;
  for (int k = 1; k <= pt.rank(); ++k)
    for (int i = 1; i <= k; ++i) os << k << "," << i << "=" << to_string(pt[{k, i}]) << "\n";
  return os.str();
}

}  // namespace gtsing
