#pragma once

// Dense exact matrices over a coefficient field, with the handful of
// elimination routines the cohomology code needs: reduced row echelon form,
// rank, kernel bases, and coordinates relative to an independent family.

#include "lscat/field.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lscat {

template <class Field>
using Vec = std::vector<typename Field::value_type>;

template <class Field>
Vec<Field> zero_vector(const Field& field, std::size_t n) {
  return Vec<Field>(n, field.zero());
}

template <class Field>
bool is_zero_vector(const Field& field, const Vec<Field>& v) {
  for (const auto& x : v)
    if (!field.is_zero(x)) return false;
  return true;
}

template <class Field>
bool vectors_equal(const Field& field, const Vec<Field>& a, const Vec<Field>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!field.equal(a[i], b[i])) return false;
  return true;
}

/// y += c * x
template <class Field>
void axpy(const Field& field, const typename Field::value_type& c, const Vec<Field>& x, Vec<Field>& y) {
  if (field.is_zero(c)) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!field.is_zero(x[i])) y[i] = field.add(y[i], field.mul(c, x[i]));
}

template <class Field>
Vec<Field> scaled(const Field& field, const typename Field::value_type& c, Vec<Field> x) {
  for (auto& v : x) v = field.mul(c, v);
  return x;
}

template <class Field>
class Matrix {
public:
  using value_type = typename Field::value_type;

  Matrix(Field field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix identity(const Field& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  /// Builds a matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(const Field& field, std::size_t rows, const std::vector<Vec<Field>>& columns) {
    Matrix m(field, rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].size() != rows) throw std::invalid_argument("from_columns: column length mismatch");
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  value_type& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const value_type& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec<Field> column(std::size_t c) const {
    Vec<Field> v(rows_, field_.zero());
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  Vec<Field> apply(const Vec<Field>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
    Vec<Field> y(rows_, field_.zero());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (!field_.is_zero(x[c]) && !field_.is_zero((*this)(r, c)))
          y[r] = field_.add(y[r], field_.mul((*this)(r, c), x[c]));
    return y;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    const Field& f = a.field_;
    Matrix out(f, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto& aik = a(i, k);
        if (f.is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!f.is_zero(b(k, j))) out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
      }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (!a.field_.equal(a.data_[i], b.data_[i])) return false;
    return true;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!field_.is_zero(x)) return false;
    return true;
  }

private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<value_type> data_;
};

template <class Field>
struct RowEchelon {
  Matrix<Field> reduced;
  std::vector<std::size_t> pivot_columns;  // one per non-zero row, increasing
};

/// Gauss-Jordan elimination; pivots are chosen as the first non-zero entry
/// in column order so the result is the unique reduced row echelon form.
template <class Field>
RowEchelon<Field> rref(Matrix<Field> m) {
  const Field& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && f.is_zero(m(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    const auto inv = f.inv(m(row, col));
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = f.mul(m(row, c), inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || f.is_zero(m(r, col))) continue;
      const auto factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        m(r, c) = f.sub(m(r, c), f.mul(factor, m(row, c)));
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <class Field>
std::size_t rank(const Matrix<Field>& m) {
  return rref(m).pivot_columns.size();
}

/// Kernel basis read off the RREF: one vector per free column, in column order.
template <class Field>
std::vector<Vec<Field>> kernel_basis(const Matrix<Field>& m) {
  const Field& f = m.field();
  auto [r, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec<Field>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec<Field> v(m.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(r(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Incrementally maintained independent family with exact coordinate
/// extraction. Vectors are added one at a time; `try_add` rejects vectors
/// already in the span. `coordinates` expresses a vector of the span in
/// terms of the accepted family, in insertion order.
template <class Field>
class IndependentSet {
public:
  IndependentSet(Field field, std::size_t ambient_dim) : field_(std::move(field)), dim_(ambient_dim) {}

  std::size_t size() const { return members_.size(); }
  std::size_t ambient_dim() const { return dim_; }
  const std::vector<Vec<Field>>& members() const { return members_; }

  /// Returns true and records `v` iff it is independent of the current members.
  bool try_add(const Vec<Field>& v) {
    auto [residual, combo] = reduce(v);
    std::size_t pivot = dim_;
    for (std::size_t i = 0; i < dim_; ++i)
      if (!field_.is_zero(residual[i])) {
        pivot = i;
        break;
      }
    if (pivot == dim_) return false;
    // residual = v - sum combo_j members_j, expressed with a new unit coordinate for v.
    const std::size_t k = members_.size();
    for (auto& c : combo) c = field_.neg(c);
    combo.resize(k + 1, field_.zero());
    combo[k] = field_.one();
    const auto inv = field_.inv(residual[pivot]);
    for (auto& x : residual) x = field_.mul(x, inv);
    for (auto& c : combo) c = field_.mul(c, inv);
    // Keep earlier rows reduced at the new pivot column.
    for (auto& row : rows_) {
      if (field_.is_zero(row.vec[pivot])) continue;
      const auto factor = row.vec[pivot];
      for (std::size_t i = 0; i < dim_; ++i) row.vec[i] = field_.sub(row.vec[i], field_.mul(factor, residual[i]));
      row.combo.resize(k + 1, field_.zero());
      for (std::size_t j = 0; j <= k; ++j) row.combo[j] = field_.sub(row.combo[j], field_.mul(factor, combo[j]));
    }
    rows_.push_back({pivot, std::move(residual), std::move(combo)});
    members_.push_back(v);
    return true;
  }

  bool contains(const Vec<Field>& v) const { return is_zero_vector(field_, reduce(v).first); }

  /// Coordinates of `v` in the member family; nullopt if `v` is outside the span.
  std::optional<Vec<Field>> coordinates(const Vec<Field>& v) const {
    auto [residual, combo] = reduce(v);
    if (!is_zero_vector(field_, residual)) return std::nullopt;
    combo.resize(members_.size(), field_.zero());
    return combo;
  }

private:
  struct Row {
    std::size_t pivot;
    Vec<Field> vec;    // reduced basis vector, 1 at pivot, 0 at other pivots
    Vec<Field> combo;  // vec = sum combo_j members_j
  };

  // Returns (v - sum c_i rows_i.vec, coefficients on members).
  std::pair<Vec<Field>, Vec<Field>> reduce(const Vec<Field>& v) const {
    if (v.size() != dim_) throw std::invalid_argument("IndependentSet: dimension mismatch");
    Vec<Field> residual = v;
    Vec<Field> combo(members_.size(), field_.zero());
    for (const auto& row : rows_) {
      const auto c = residual[row.pivot];
      if (field_.is_zero(c)) continue;
      for (std::size_t i = 0; i < dim_; ++i)
        if (!field_.is_zero(row.vec[i])) residual[i] = field_.sub(residual[i], field_.mul(c, row.vec[i]));
      for (std::size_t j = 0; j < row.combo.size(); ++j)
        if (!field_.is_zero(row.combo[j])) combo[j] = field_.add(combo[j], field_.mul(c, row.combo[j]));
    }
    return {std::move(residual), std::move(combo)};
  }

  Field field_;
  std::size_t dim_;
  std::vector<Vec<Field>> members_;
  std::vector<Row> rows_;
};

template <class Field>
std::string format_vector(const Field& field, const Vec<Field>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += field.to_string(v[i]);
  }
  return s + ")";
}

}  // namespace lscat
