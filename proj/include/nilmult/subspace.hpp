#pragma once

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "nilmult/errors.hpp"
#include "nilmult/rational.hpp"

namespace nilmult {

using Vec = std::vector<Rational>;

inline bool is_zero_vec(const Vec& v) {
  for (const Rational& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

/// x -= f * r, skipping zero entries of r.
inline void row_sub_mul(Vec& x, const Rational& f, const Vec& r) {
  for (std::size_t i = 0; i < r.size(); ++i)
    if (sgn(r[i]) != 0) sub_mul(x[i], f, r[i]);
}

/// Row-reduced echelon basis of a subspace of Q^ambient.
///
/// Pivot columns are chosen by scanning the declared `priority` order front
/// to back, so coordinates early in that order get eliminated first. Rows
/// are kept fully reduced (each pivot is 1 and is the only nonzero entry of
/// its column) and sorted by pivot priority, which makes the row set a
/// canonical invariant of the subspace for a fixed priority order.
class Subspace {
 public:
  explicit Subspace(int ambient) : Subspace(ambient, identity_priority(ambient)) {}

  Subspace(int ambient, std::vector<int> priority)
      : ambient_(ambient), priority_(std::move(priority)) {
    if (ambient_ < 0) throw DimensionMismatch("Subspace: negative ambient dimension");
    if ((int)priority_.size() != ambient_)
      throw DimensionMismatch("Subspace: priority order has wrong size");
    position_of_.assign(ambient_, -1);
    for (int p = 0; p < ambient_; ++p) {
      int col = priority_[p];
      if (col < 0 || col >= ambient_ || position_of_[col] != -1)
        throw DimensionMismatch("Subspace: priority order is not a permutation");
      position_of_[col] = p;
    }
  }

  static std::vector<int> identity_priority(int ambient) {
    std::vector<int> p(ambient);
    std::iota(p.begin(), p.end(), 0);
    return p;
  }

  int ambient() const { return ambient_; }
  int dim() const { return (int)rows_.size(); }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }
  const std::vector<int>& priority() const { return priority_; }

  /// Position of `col` in the priority order.
  int priority_position(int col) const { return position_of_.at(col); }

  /// Canonical representative of v modulo the subspace: subtract the unique
  /// combination of rows that clears every pivot coordinate of v.
  Vec reduce(Vec v) const {
    check_width(v);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational& c = v[pivots_[r]];
      if (sgn(c) != 0) {
        Rational f = c;  // copy: the axpy overwrites v[pivots_[r]]
        row_sub_mul(v, f, rows_[r]);
      }
    }
    return v;
  }

  bool contains(const Vec& v) const { return is_zero_vec(reduce(v)); }

  /// Insert a vector, keeping the basis reduced. Returns true if dim grew.
  bool insert(Vec v) { return insert_pivot(std::move(v)) >= 0; }

  /// Like insert, but reports the pivot column of the new row (-1 when the
  /// vector was already in the span).
  int insert_pivot(Vec v) {
    v = reduce(std::move(v));
    int pivot = leading_column(v);
    if (pivot < 0) return -1;
    if (v[pivot] != 1) {
      Rational inv = 1 / v[pivot];
      for (Rational& x : v)
        if (sgn(x) != 0) x *= inv;
    }
    // clear the new pivot column from the existing rows
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational& c = rows_[r][pivot];
      if (sgn(c) != 0) {
        Rational f = c;
        row_sub_mul(rows_[r], f, v);
      }
    }
    auto it = std::upper_bound(
        pivots_.begin(), pivots_.end(), pivot,
        [this](int a, int b) { return position_of_[a] < position_of_[b]; });
    std::size_t at = it - pivots_.begin();
    pivots_.insert(it, pivot);
    rows_.insert(rows_.begin() + at, std::move(v));
    return pivot;
  }

  /// Index of the row pivoted at the given column; -1 if none is.
  int row_index_of_pivot(int col) const {
    auto it = std::lower_bound(
        pivots_.begin(), pivots_.end(), col,
        [this](int a, int b) { return position_of_[a] < position_of_[b]; });
    if (it == pivots_.end() || *it != col) return -1;
    return (int)(it - pivots_.begin());
  }

  void insert_all(const std::vector<Vec>& vectors) {
    for (const Vec& v : vectors) insert(v);
  }

  bool operator==(const Subspace& other) const {
    return ambient_ == other.ambient_ && priority_ == other.priority_ &&
           rows_ == other.rows_;
  }

 private:
  void check_width(const Vec& v) const {
    if ((int)v.size() != ambient_)
      throw DimensionMismatch("Subspace: vector has wrong dimension");
  }

  /// First nonzero coordinate of v in priority order, -1 if v = 0.
  int leading_column(const Vec& v) const {
    int best = -1, best_pos = ambient_;
    for (int col = 0; col < ambient_; ++col)
      if (sgn(v[col]) != 0 && position_of_[col] < best_pos) {
        best = col;
        best_pos = position_of_[col];
      }
    return best;
  }

  int ambient_;
  std::vector<int> priority_;
  std::vector<int> position_of_;  // inverse of priority_
  std::vector<Vec> rows_;
  std::vector<int> pivots_;  // pivot column of each row
};

inline Subspace span(const std::vector<Vec>& vectors, int ambient) {
  Subspace s(ambient);
  s.insert_all(vectors);
  return s;
}

inline Subspace span(const std::vector<Vec>& vectors, int ambient,
                     std::vector<int> priority) {
  Subspace s(ambient, std::move(priority));
  s.insert_all(vectors);
  return s;
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient())
    throw DimensionMismatch("sum: ambient dimensions differ");
  Subspace s(a.ambient(), a.priority());
  s.insert_all(a.rows());
  s.insert_all(b.rows());
  return s;
}

/// Exact intersection via the Zassenhaus trick: echelonize rows (u|u) for u
/// in A and (w|0) for w in B, eliminating the left block first; rows whose
/// left block vanished carry a basis of A cap B in the right block.
inline Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient())
    throw DimensionMismatch("intersect: ambient dimensions differ");
  const int d = a.ambient();
  std::vector<int> prio(2 * d);
  for (int p = 0; p < d; ++p) {
    prio[p] = a.priority()[p];
    prio[d + p] = d + a.priority()[p];
  }
  Subspace z(2 * d, std::move(prio));
  for (const Vec& u : a.rows()) {
    Vec both(2 * d);
    for (int i = 0; i < d; ++i) both[i] = both[d + i] = u[i];
    z.insert(std::move(both));
  }
  for (const Vec& w : b.rows()) {
    Vec left(2 * d);
    for (int i = 0; i < d; ++i) left[i] = w[i];
    z.insert(std::move(left));
  }
  Subspace result(d, a.priority());
  for (int r = 0; r < z.dim(); ++r) {
    if (z.priority_position(z.pivots()[r]) < d) continue;  // pivot in left block
    Vec v(z.rows()[r].begin() + d, z.rows()[r].end());
    result.insert(std::move(v));
  }
  return result;
}

/// The part of A supported only on coordinates >= first_tail_col, read off
/// the echelon form. Requires A's priority order to eliminate every
/// coordinate < first_tail_col before any coordinate >= first_tail_col:
/// a row pivoted in the tail then has no head support at all, and any
/// member of A supported on the tail reduces to a combination of exactly
/// those rows.
inline Subspace coordinate_tail_intersection(const Subspace& a, int first_tail_col) {
  if (first_tail_col < 0 || first_tail_col > a.ambient())
    throw DimensionMismatch("coordinate_tail_intersection: column out of range");
  int max_head_pos = -1, min_tail_pos = a.ambient();
  for (int col = 0; col < a.ambient(); ++col) {
    if (col < first_tail_col)
      max_head_pos = std::max(max_head_pos, a.priority_position(col));
    else
      min_tail_pos = std::min(min_tail_pos, a.priority_position(col));
  }
  if (max_head_pos > min_tail_pos)
    throw DimensionMismatch(
        "coordinate_tail_intersection: priority order does not eliminate "
        "head coordinates first");
  Subspace result(a.ambient(), a.priority());
  for (int r = 0; r < a.dim(); ++r)
    if (a.pivots()[r] >= first_tail_col) result.insert(a.rows()[r]);
  return result;
}

/// Solution space of the homogeneous system (one constraint row per entry).
inline Subspace nullspace(const std::vector<Vec>& constraints, int ambient) {
  Subspace c(ambient);
  c.insert_all(constraints);
  std::vector<bool> is_pivot(ambient, false);
  for (int p : c.pivots()) is_pivot[p] = true;
  Subspace result(ambient);
  for (int col = 0; col < ambient; ++col) {
    if (is_pivot[col]) continue;
    Vec v(ambient);
    v[col] = 1;
    for (int r = 0; r < c.dim(); ++r) v[c.pivots()[r]] = -c.rows()[r][col];
    result.insert(std::move(v));
  }
  return result;
}

}  // namespace nilmult
