#pragma once

// Simplicial cochains, absolute and relative cohomology with explicit
// representative cocycles, and Alexander-Whitney cup products.

#include "lscat/algebra.hpp"
#include "lscat/simplicial.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lscat {

/// C^*(X, A) over a field. The basis in degree k is the list of k-simplices
/// of X outside A in lexicographic order; a relative cochain is implicitly
/// zero on A.
template <class Field>
class CochainComplex {
public:
  CochainComplex(Field field, ComplexPtr complex, Subcomplex pair)
      : field_(std::move(field)), complex_(std::move(complex)), pair_(std::move(pair)) {
    const int top = dimension(*complex_);
    basis_.resize(static_cast<std::size_t>(top + 1));
    index_.resize(basis_.size());
    for (std::size_t k = 0; k < basis_.size(); ++k)
      for (const auto& s : complex_->simplices_of_dim(k))
        if (!pair_.contains(s)) {
          index_[k].emplace(s, basis_[k].size());
          basis_[k].push_back(s);
        }
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      const std::size_t next = k + 1 < basis_.size() ? basis_[k + 1].size() : 0;
      Matrix<Field> d(field_, next, basis_[k].size());
      if (k + 1 < basis_.size()) {
        // (δφ)(σ) = Σ_i (-1)^i φ(d_i σ)
        for (std::size_t r = 0; r < basis_[k + 1].size(); ++r)
          detail::for_each_codim1_face(basis_[k + 1][r], [&](const Simplex& face, std::size_t i) {
            auto it = index_[k].find(face);
            if (it == index_[k].end()) return;
            d(r, it->second) = (i % 2 == 0) ? field_.one() : field_.neg(field_.one());
          });
      }
      coboundary_.push_back(std::move(d));
    }
  }

  const Field& field() const { return field_; }
  const ComplexPtr& complex() const { return complex_; }
  const Subcomplex& pair() const { return pair_; }
  bool is_relative() const { return !pair_.is_empty(); }

  /// Highest degree with a cochain group (the dimension of X).
  int top_degree() const { return static_cast<int>(basis_.size()) - 1; }
  std::size_t rank_in_degree(int k) const {
    return k >= 0 && k <= top_degree() ? basis_[static_cast<std::size_t>(k)].size() : 0;
  }
  const std::vector<Simplex>& basis(int k) const { return basis_.at(static_cast<std::size_t>(k)); }

  /// δ_k : C^k → C^{k+1}; the top one has zero rows.
  const Matrix<Field>& coboundary(int k) const { return coboundary_.at(static_cast<std::size_t>(k)); }

  /// Value of a degree-k cochain on a k-simplex (zero on A and on non-simplices).
  typename Field::value_type evaluate(int k, const Vec<Field>& cochain, const Simplex& s) const {
    if (k < 0 || k > top_degree()) return field_.zero();
    const auto& idx = index_[static_cast<std::size_t>(k)];
    auto it = idx.find(s);
    return it == idx.end() ? field_.zero() : cochain[it->second];
  }

  std::optional<std::size_t> position(int k, const Simplex& s) const {
    if (k < 0 || k > top_degree()) return std::nullopt;
    const auto& idx = index_[static_cast<std::size_t>(k)];
    auto it = idx.find(s);
    if (it == idx.end()) return std::nullopt;
    return it->second;
  }

private:
  Field field_;
  ComplexPtr complex_;
  Subcomplex pair_;
  std::vector<std::vector<Simplex>> basis_;
  std::vector<std::map<Simplex, std::size_t>> index_;
  std::vector<Matrix<Field>> coboundary_;
};

template <class Field>
using CochainPtr = std::shared_ptr<const CochainComplex<Field>>;

/// Fails with an InputError naming the first stray simplex if `a` is not a
/// subcomplex of `x`.
template <class Field>
CochainPtr<Field> build_cochain_complex(const ComplexPtr& x, const Subcomplex& a, const Field& field) {
  auto report = validate_subcomplex(*x, a);
  if (!report.ok()) throw InputError("not a subcomplex: " + report.violations.front());
  return std::make_shared<const CochainComplex<Field>>(field, x, a);
}

/// Alexander-Whitney product of cochains:
/// (α ⌣ β)(v_0…v_{p+q}) = α(v_0…v_p) · β(v_p…v_{p+q}).
/// The result lives in `out`, which must be the cochain complex of the same
/// simplicial complex relative to a subcomplex on which the product vanishes.
template <class Field>
Vec<Field> cup_cochains(const CochainComplex<Field>& ca, int p, const Vec<Field>& alpha, const CochainComplex<Field>& cb,
                        int q, const Vec<Field>& beta, const CochainComplex<Field>& out) {
  const auto& f = out.field();
  const int n = p + q;
  auto result = zero_vector(f, out.rank_in_degree(n));
  if (n > out.top_degree()) return result;
  const auto& basis = out.basis(n);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    const auto& s = basis[r];
    Simplex front(s.begin(), s.begin() + p + 1);
    Simplex back(s.begin() + p, s.end());
    const auto a = ca.evaluate(p, alpha, front);
    if (f.is_zero(a)) continue;
    const auto b = cb.evaluate(q, beta, back);
    if (f.is_zero(b)) continue;
    result[r] = f.mul(a, b);
  }
  return result;
}

/// H^*(X, A) with chosen representative cocycles and, once built, the cup
/// product structure constants on that basis.
template <class Field>
class CohomologyRing {
public:
  explicit CohomologyRing(CochainPtr<Field> cochains)
      : cochains_(std::move(cochains)), algebra_(cochains_->field(), {}, {}) {
    const auto& f = cochains_->field();
    std::vector<int> degrees;
    std::vector<std::string> names;
    for (int k = 0; k <= cochains_->top_degree(); ++k) {
      const std::size_t n = cochains_->rank_in_degree(k);
      IndependentSet<Field> span(f, n);
      std::size_t image_rank = 0;
      if (k > 0) {
        const auto& prev = cochains_->coboundary(k - 1);
        for (std::size_t c = 0; c < prev.cols(); ++c)
          if (span.try_add(prev.column(c))) ++image_rank;
      }
      std::vector<Vec<Field>> reps;
      for (auto& z : kernel_basis(cochains_->coboundary(k)))
        if (span.try_add(z)) reps.push_back(std::move(z));
      first_index_.push_back(degrees.size());
      for (std::size_t i = 0; i < reps.size(); ++i) {
        degrees.push_back(k);
        names.push_back("x" + std::to_string(k) + "_" + std::to_string(i));
      }
      image_rank_.push_back(image_rank);
      representatives_.push_back(std::move(reps));
      spans_.push_back(std::move(span));
    }
    algebra_ = GradedAlgebra<Field>(f, std::move(degrees), std::move(names));
    if (!cochains_->is_relative()) {
      // The unit is the class of the cocycle that is 1 on every vertex.
      Vec<Field> one(cochains_->rank_in_degree(0), f.one());
      algebra_.set_unit(embed(0, class_coordinates(0, one)));
    }
  }

  const Field& field() const { return cochains_->field(); }
  const CochainPtr<Field>& cochains() const { return cochains_; }
  const ComplexPtr& complex() const { return cochains_->complex(); }
  bool is_relative() const { return cochains_->is_relative(); }
  const GradedAlgebra<Field>& algebra() const { return algebra_; }
  std::size_t dim() const { return algebra_.dim(); }

  /// Betti numbers in degrees 0..dim X.
  std::vector<std::size_t> betti() const {
    std::vector<std::size_t> out;
    for (const auto& r : representatives_) out.push_back(r.size());
    return out;
  }

  std::string id() const {
    return complex()->name() + (is_relative() ? "," + cochains_->pair().name() : std::string()) + ";" + field().name();
  }

  const std::vector<Vec<Field>>& representatives(int k) const { return representatives_.at(static_cast<std::size_t>(k)); }

  /// Global basis index of the i-th class in degree k.
  std::size_t global_index(int k, std::size_t i) const { return first_index_.at(static_cast<std::size_t>(k)) + i; }

  /// Representative cocycle of a homogeneous degree-k element given in global coordinates.
  Vec<Field> representative(int k, const Vec<Field>& element) const {
    const auto& f = field();
    auto out = zero_vector(f, cochains_->rank_in_degree(k));
    const auto& reps = representatives(k);
    for (std::size_t i = 0; i < reps.size(); ++i) axpy(f, element.at(global_index(k, i)), reps[i], out);
    return out;
  }

  /// Coordinates (within degree k) of the class of a degree-k cocycle.
  /// Throws if `cocycle` is not closed.
  Vec<Field> class_coordinates(int k, const Vec<Field>& cocycle) const {
    const auto& f = field();
    if (!is_zero_vector(f, cochains_->coboundary(k).apply(cocycle)))
      throw std::invalid_argument("class_coordinates: cochain is not a cocycle");
    const auto& span = spans_.at(static_cast<std::size_t>(k));
    auto coords = span.coordinates(cocycle);
    if (!coords) throw std::logic_error("class_coordinates: cocycle outside kernel span");
    const std::size_t skip = image_rank_.at(static_cast<std::size_t>(k));
    return Vec<Field>(coords->begin() + static_cast<std::ptrdiff_t>(skip), coords->end());
  }

  /// Embeds per-degree coordinates into the global coordinate vector.
  Vec<Field> embed(int k, const Vec<Field>& coords) const {
    auto out = zero_vector(field(), dim());
    for (std::size_t i = 0; i < coords.size(); ++i) out[global_index(k, i)] = coords[i];
    return out;
  }

  /// Class of a degree-k cocycle, in global coordinates.
  Vec<Field> class_of(int k, const Vec<Field>& cocycle) const { return embed(k, class_coordinates(k, cocycle)); }

  /// Cup product through representatives and the Alexander-Whitney formula.
  /// Both arguments are global coordinate vectors; non-homogeneous inputs are
  /// split by degree.
  Vec<Field> cup(const Vec<Field>& a, const Vec<Field>& b) const {
    if (a.size() != dim() || b.size() != dim()) throw DomainError("cup: class does not belong to " + id());
    const auto& f = field();
    auto out = zero_vector(f, dim());
    for (int p = 0; p <= cochains_->top_degree(); ++p) {
      auto alpha = representative(p, a);
      if (is_zero_vector(f, alpha)) continue;
      for (int q = 0; p + q <= cochains_->top_degree(); ++q) {
        auto beta = representative(q, b);
        if (is_zero_vector(f, beta)) continue;
        auto prod = cup_cochains(*cochains_, p, alpha, *cochains_, q, beta, *cochains_);
        auto cls = class_of(p + q, prod);
        for (std::size_t i = 0; i < dim(); ++i) out[i] = f.add(out[i], cls[i]);
      }
    }
    return out;
  }

  /// Fills the structure-constant table from pairwise cup products of basis classes.
  void compute_products() {
    const std::size_t n = dim();
    std::vector<typename GradedAlgebra<Field>::SparseVec> table(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (algebra_.degree(i) + algebra_.degree(j) > cochains_->top_degree()) continue;
        auto c = cup(algebra_.basis_vector(i), algebra_.basis_vector(j));
        for (std::size_t k = 0; k < n; ++k)
          if (!field().is_zero(c[k])) table[i * n + j].emplace_back(k, c[k]);
      }
    algebra_.set_products(std::move(table));
  }

private:
  CochainPtr<Field> cochains_;
  GradedAlgebra<Field> algebra_;
  std::vector<std::vector<Vec<Field>>> representatives_;
  std::vector<IndependentSet<Field>> spans_;  // coboundaries first, then representatives
  std::vector<std::size_t> image_rank_;
  std::vector<std::size_t> first_index_;
};

/// Class-level cup product that first checks both classes come from the same ring.
template <class Field>
Vec<Field> cup(const CohomologyRing<Field>& ra, const Vec<Field>& a, const CohomologyRing<Field>& rb,
               const Vec<Field>& b) {
  if (&ra != &rb && (ra.cochains() != rb.cochains() || ra.id() != rb.id()))
    throw DomainError("cup: classes from different rings (" + ra.id() + " vs " + rb.id() + ")");
  return ra.cup(a, b);
}

template <class Field>
using RingPtr = std::shared_ptr<const CohomologyRing<Field>>;

/// Cohomology groups with representatives; no structure constants yet.
template <class Field>
CohomologyRing<Field> compute_cohomology(const CochainPtr<Field>& c) {
  return CohomologyRing<Field>(c);
}

template <class Field>
RingPtr<Field> build_ring(const CochainPtr<Field>& c) {
  auto ring = std::make_shared<CohomologyRing<Field>>(c);
  ring->compute_products();
  return ring;
}

template <class Field>
RingPtr<Field> build_ring(const ComplexPtr& x, const Subcomplex& a, const Field& field) {
  return build_ring(build_cochain_complex(x, a, field));
}

template <class Field>
RingPtr<Field> build_ring(const ComplexPtr& x, const Field& field) {
  return build_ring(x, Subcomplex::empty(), field);
}

/// Relative-by-absolute product H^*(X, A) ⊗ H^*(X) → H^*(X, A). A relative
/// cochain cupped with an absolute one vanishes on A, so the product is a
/// relative cocycle.
template <class Field>
Vec<Field> relative_cup(const CohomologyRing<Field>& rel, const Vec<Field>& a, const CohomologyRing<Field>& abs,
                        const Vec<Field>& b) {
  if (abs.is_relative()) throw DomainError("relative_cup: second ring must be absolute");
  if (rel.complex() != abs.complex() || !(rel.field() == abs.field()))
    throw DomainError("relative_cup: rings over different complexes or fields");
  if (a.size() != rel.dim() || b.size() != abs.dim()) throw DomainError("relative_cup: class dimension mismatch");
  const auto& f = rel.field();
  auto out = zero_vector(f, rel.dim());
  const int top = rel.cochains()->top_degree();
  for (int p = 0; p <= top; ++p) {
    auto alpha = rel.representative(p, a);
    if (is_zero_vector(f, alpha)) continue;
    for (int q = 0; p + q <= top; ++q) {
      auto beta = abs.representative(q, b);
      if (is_zero_vector(f, beta)) continue;
      auto prod = cup_cochains(*rel.cochains(), p, alpha, *abs.cochains(), q, beta, *rel.cochains());
      auto cls = rel.class_of(p + q, prod);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.add(out[i], cls[i]);
    }
  }
  return out;
}

}  // namespace lscat
