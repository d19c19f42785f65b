#pragma once

// Finite-dimensional graded algebras given by structure constants, and
// degree-preserving linear maps between graded spaces. Cohomology rings and
// their tensor powers are both presented this way, so the witness searches
// only ever see a GradedAlgebra.

#include "lscat/matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lscat {

/// Raised when elements or maps from incompatible rings are combined.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

template <class Field>
class GradedAlgebra {
public:
  using value_type = typename Field::value_type;
  using SparseVec = std::vector<std::pair<std::size_t, value_type>>;

  GradedAlgebra(Field field, std::vector<int> degrees, std::vector<std::string> names)
      : field_(std::move(field)), degrees_(std::move(degrees)), names_(std::move(names)) {
    if (names_.size() != degrees_.size()) throw std::invalid_argument("GradedAlgebra: names/degrees mismatch");
    if (!std::is_sorted(degrees_.begin(), degrees_.end()))
      throw std::invalid_argument("GradedAlgebra: basis must be ordered by degree");
  }

  const Field& field() const { return field_; }
  std::size_t dim() const { return degrees_.size(); }
  const std::vector<int>& degrees() const { return degrees_; }
  int degree(std::size_t i) const { return degrees_.at(i); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  /// Largest degree carrying a basis element, or -1 for the zero algebra.
  int top_degree() const { return degrees_.empty() ? -1 : degrees_.back(); }

  std::size_t dim_in_degree(int k) const {
    return static_cast<std::size_t>(std::count(degrees_.begin(), degrees_.end(), k));
  }

  /// Dimensions indexed by degree 0..top_degree().
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out(static_cast<std::size_t>(std::max(top_degree() + 1, 0)), 0);
    for (int d : degrees_) ++out[static_cast<std::size_t>(d)];
    return out;
  }

  /// Basis indices [first, last) of degree k.
  std::pair<std::size_t, std::size_t> degree_range(int k) const {
    auto lo = std::lower_bound(degrees_.begin(), degrees_.end(), k);
    auto hi = std::upper_bound(degrees_.begin(), degrees_.end(), k);
    return {static_cast<std::size_t>(lo - degrees_.begin()), static_cast<std::size_t>(hi - degrees_.begin())};
  }

  Vec<Field> basis_vector(std::size_t i) const {
    auto v = zero_vector(field_, dim());
    v.at(i) = field_.one();
    return v;
  }

  /// Degree of a non-zero homogeneous element; nullopt for zero or mixed-degree input.
  std::optional<int> homogeneous_degree(const Vec<Field>& v) const {
    std::optional<int> d;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (field_.is_zero(v[i])) continue;
      if (d && *d != degrees_[i]) return std::nullopt;
      d = degrees_[i];
    }
    return d;
  }

  bool has_products() const { return table_.size() == dim() * dim(); }

  void set_products(std::vector<SparseVec> table) {
    if (table.size() != dim() * dim()) throw std::invalid_argument("GradedAlgebra: product table has wrong size");
    table_ = std::move(table);
  }
  const SparseVec& product_of_basis(std::size_t i, std::size_t j) const { return table_.at(i * dim() + j); }

  Vec<Field> basis_product(std::size_t i, std::size_t j) const {
    auto out = zero_vector(field_, dim());
    for (const auto& [k, c] : product_of_basis(i, j)) out[k] = c;
    return out;
  }

  Vec<Field> multiply(const Vec<Field>& x, const Vec<Field>& y) const {
    if (!has_products()) throw std::logic_error("GradedAlgebra: structure constants not computed");
    if (x.size() != dim() || y.size() != dim()) throw DomainError("multiply: element does not belong to this algebra");
    auto out = zero_vector(field_, dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (field_.is_zero(x[i])) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (field_.is_zero(y[j])) continue;
        const auto xy = field_.mul(x[i], y[j]);
        for (const auto& [k, c] : product_of_basis(i, j)) out[k] = field_.add(out[k], field_.mul(xy, c));
      }
    }
    return out;
  }

  const std::optional<Vec<Field>>& unit() const { return unit_; }
  void set_unit(Vec<Field> u) { unit_ = std::move(u); }

private:
  Field field_;
  std::vector<int> degrees_;
  std::vector<std::string> names_;
  std::vector<SparseVec> table_;
  std::optional<Vec<Field>> unit_;
};

/// A linear map between graded spaces, stored as one matrix on the
/// degree-ordered bases. Construction rejects entries that change degree.
template <class Field>
class GradedLinearMap {
public:
  GradedLinearMap(std::vector<int> source_degrees, std::vector<int> target_degrees, Matrix<Field> matrix)
      : source_degrees_(std::move(source_degrees)), target_degrees_(std::move(target_degrees)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_degrees_.size() || matrix_.cols() != source_degrees_.size())
      throw std::invalid_argument("GradedLinearMap: matrix shape does not match bases");
    const auto& f = matrix_.field();
    for (std::size_t r = 0; r < matrix_.rows(); ++r)
      for (std::size_t c = 0; c < matrix_.cols(); ++c)
        if (!f.is_zero(matrix_(r, c)) && target_degrees_[r] != source_degrees_[c])
          throw std::invalid_argument("GradedLinearMap: entry changes degree");
  }

  const std::vector<int>& source_degrees() const { return source_degrees_; }
  const std::vector<int>& target_degrees() const { return target_degrees_; }
  const Matrix<Field>& matrix() const { return matrix_; }
  const Field& field() const { return matrix_.field(); }

  Vec<Field> apply(const Vec<Field>& x) const { return matrix_.apply(x); }

  /// Block of the matrix in degree k (rows: target basis of degree k, cols: source).
  Matrix<Field> block(int k) const {
    std::vector<std::size_t> rows, cols;
    for (std::size_t r = 0; r < target_degrees_.size(); ++r)
      if (target_degrees_[r] == k) rows.push_back(r);
    for (std::size_t c = 0; c < source_degrees_.size(); ++c)
      if (source_degrees_[c] == k) cols.push_back(c);
    Matrix<Field> out(field(), rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = matrix_(rows[i], cols[j]);
    return out;
  }

  /// (this ∘ inner): first apply `inner`, then this map.
  GradedLinearMap after(const GradedLinearMap& inner) const {
    if (inner.target_degrees_ != source_degrees_) throw DomainError("compose: graded bases do not match");
    return GradedLinearMap(inner.source_degrees_, target_degrees_, matrix_ * inner.matrix_);
  }

  /// Kernel basis, computed degree by degree so each vector is homogeneous.
  /// Ordered by degree, then by the RREF free-column order within a degree.
  std::vector<Vec<Field>> kernel() const {
    std::vector<Vec<Field>> out;
    const auto& f = field();
    std::vector<int> degs = source_degrees_;
    degs.erase(std::unique(degs.begin(), degs.end()), degs.end());
    for (int k : degs) {
      std::vector<std::size_t> cols;
      for (std::size_t c = 0; c < source_degrees_.size(); ++c)
        if (source_degrees_[c] == k) cols.push_back(c);
      std::vector<std::size_t> rows;
      for (std::size_t r = 0; r < target_degrees_.size(); ++r)
        if (target_degrees_[r] == k) rows.push_back(r);
      Matrix<Field> blk(f, rows.size(), cols.size());
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) blk(i, j) = matrix_(rows[i], cols[j]);
      for (const auto& v : kernel_basis(blk)) {
        auto full = zero_vector(f, source_degrees_.size());
        for (std::size_t j = 0; j < cols.size(); ++j) full[cols[j]] = v[j];
        out.push_back(std::move(full));
      }
    }
    return out;
  }

  friend bool operator==(const GradedLinearMap& a, const GradedLinearMap& b) {
    return a.source_degrees_ == b.source_degrees_ && a.target_degrees_ == b.target_degrees_ && a.matrix_ == b.matrix_;
  }

private:
  std::vector<int> source_degrees_;
  std::vector<int> target_degrees_;
  Matrix<Field> matrix_;
};

/// "2*a + -1*b" style rendering in the algebra's basis names; "0" for zero.
template <class Field>
std::string format_element(const GradedAlgebra<Field>& a, const Vec<Field>& v) {
  const auto& f = a.field();
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (f.is_zero(v[i])) continue;
    if (!s.empty()) s += " + ";
    if (!f.equal(v[i], f.one())) s += f.to_string(v[i]) + "*";
    s += a.name(i);
  }
  return s.empty() ? "0" : s;
}

}  // namespace lscat
