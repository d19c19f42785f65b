#pragma once

// H^*(X^n) over a field, modelled as the n-fold graded tensor power of
// H^*(X), together with the diagonal pullback Δ_n^*, the map-power pullback
// (f^n)^* and their composite g_n^* = Δ_n^* ∘ (f^n)^*.
//
// Sign convention: (x_1⊗…⊗x_n)(y_1⊗…⊗y_n) = (-1)^e (x_1y_1)⊗…⊗(x_ny_n)
// with e = Σ_{i>j} |x_i||y_j|.

#include "lscat/induced.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace lscat {

template <class Field>
class TensorPowerRing {
public:
  using Tuple = std::vector<std::size_t>;

  TensorPowerRing(GradedAlgebra<Field> base, int n) : base_(std::move(base)), n_(n), algebra_(base_.field(), {}, {}) {
    if (n < 2) throw std::invalid_argument("power_ring: n must be at least 2, got " + std::to_string(n));
    if (!base_.has_products()) throw std::invalid_argument("power_ring: base ring has no structure constants");
    enumerate_tuples();
    build_algebra();
  }

  const GradedAlgebra<Field>& base() const { return base_; }
  int power() const { return n_; }
  const GradedAlgebra<Field>& algebra() const { return algebra_; }
  const Field& field() const { return base_.field(); }
  std::size_t dim() const { return algebra_.dim(); }
  const std::vector<Tuple>& tuples() const { return tuples_; }
  const Tuple& tuple(std::size_t i) const { return tuples_.at(i); }

  std::size_t index_of(const Tuple& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) throw std::out_of_range("TensorPowerRing: unknown basis tuple");
    return it->second;
  }

  /// x_1 ⊗ … ⊗ x_n for base elements given in base coordinates.
  Vec<Field> tensor(const std::vector<Vec<Field>>& factors) const {
    if (factors.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("tensor: wrong number of factors");
    const auto& f = field();
    auto out = zero_vector(f, dim());
    for (std::size_t t = 0; t < tuples_.size(); ++t) {
      auto c = f.one();
      for (int i = 0; i < n_ && !f.is_zero(c); ++i) c = f.mul(c, factors[static_cast<std::size_t>(i)].at(tuples_[t][i]));
      out[t] = c;
    }
    return out;
  }

  /// x placed in tensor slot `slot`, units elsewhere.
  Vec<Field> in_slot(std::size_t slot, const Vec<Field>& x) const {
    if (!base_.unit()) throw std::logic_error("in_slot: base ring has no unit");
    std::vector<Vec<Field>> factors(static_cast<std::size_t>(n_), *base_.unit());
    factors.at(slot) = x;
    return tensor(factors);
  }

  std::string describe(std::size_t i) const {
    std::string s;
    for (std::size_t k = 0; k < tuples_[i].size(); ++k) {
      if (k) s += "⊗";
      s += base_.name(tuples_[i][k]);
    }
    return s;
  }

private:
  void enumerate_tuples() {
    const std::size_t b = base_.dim();
    if (b == 0) return;
    Tuple t(static_cast<std::size_t>(n_), 0);
    bool more = true;
    while (more) {
      tuples_.push_back(t);
      more = false;
      for (std::size_t pos = t.size(); pos-- > 0;) {
        if (++t[pos] < b) {
          more = true;
          break;
        }
        t[pos] = 0;
      }
    }
    auto degree_vector = [&](const Tuple& x) {
      std::vector<int> d;
      for (auto i : x) d.push_back(base_.degree(i));
      return d;
    };
    auto total = [&](const Tuple& x) {
      int s = 0;
      for (auto i : x) s += base_.degree(i);
      return s;
    };
    std::stable_sort(tuples_.begin(), tuples_.end(), [&](const Tuple& x, const Tuple& y) {
      const int tx = total(x), ty = total(y);
      if (tx != ty) return tx < ty;
      const auto dx = degree_vector(x), dy = degree_vector(y);
      if (dx != dy) return dx < dy;
      return x < y;
    });
    for (std::size_t i = 0; i < tuples_.size(); ++i) index_.emplace(tuples_[i], i);
  }

  void build_algebra() {
    const auto& f = field();
    std::vector<int> degrees;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < tuples_.size(); ++i) {
      int s = 0;
      for (auto k : tuples_[i]) s += base_.degree(k);
      degrees.push_back(s);
      names.push_back(describe(i));
    }
    algebra_ = GradedAlgebra<Field>(f, std::move(degrees), std::move(names));

    const std::size_t dim = tuples_.size();
    const std::size_t n = static_cast<std::size_t>(n_);
    std::vector<typename GradedAlgebra<Field>::SparseVec> table(dim * dim);
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b) {
        const auto& x = tuples_[a];
        const auto& y = tuples_[b];
        long exponent = 0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < i; ++j) exponent += static_cast<long>(base_.degree(x[i])) * base_.degree(y[j]);
        std::vector<const typename GradedAlgebra<Field>::SparseVec*> parts;
        bool zero = false;
        for (std::size_t i = 0; i < n; ++i) {
          parts.push_back(&base_.product_of_basis(x[i], y[i]));
          if (parts.back()->empty()) zero = true;
        }
        if (zero) continue;
        auto sign = exponent % 2 ? f.neg(f.one()) : f.one();
        // expand the tensor product of the n sparse factor products
        std::map<std::size_t, typename Field::value_type> acc;
        std::vector<std::size_t> cursor(n, 0);
        while (true) {
          Tuple t(n);
          auto c = sign;
          for (std::size_t i = 0; i < n; ++i) {
            const auto& [k, v] = (*parts[i])[cursor[i]];
            t[i] = k;
            c = f.mul(c, v);
          }
          const auto idx = index_.at(t);
          auto [it, fresh] = acc.emplace(idx, c);
          if (!fresh) it->second = f.add(it->second, c);
          std::size_t pos = n;
          bool done = true;
          while (pos > 0) {
            --pos;
            if (++cursor[pos] < parts[pos]->size()) {
              done = false;
              break;
            }
            cursor[pos] = 0;
          }
          if (done) break;
        }
        for (auto& [k, v] : acc)
          if (!f.is_zero(v)) table[a * dim + b].emplace_back(k, v);
      }
    algebra_.set_products(std::move(table));
    if (base_.unit()) algebra_.set_unit(tensor(std::vector<Vec<Field>>(n, *base_.unit())));
  }

  GradedAlgebra<Field> base_;
  int n_;
  std::vector<Tuple> tuples_;
  std::map<Tuple, std::size_t> index_;
  GradedAlgebra<Field> algebra_;
};

template <class Field>
TensorPowerRing<Field> power_ring(const GradedAlgebra<Field>& base, int n) {
  return TensorPowerRing<Field>(base, n);
}

template <class Field>
TensorPowerRing<Field> power_ring(const CohomologyRing<Field>& h, int n) {
  return TensorPowerRing<Field>(h.algebra(), n);
}

/// Δ_n^* : H^{⊗n} → H, x_1⊗…⊗x_n ↦ x_1 ⌣ … ⌣ x_n (left to right).
template <class Field>
GradedLinearMap<Field> diagonal_pullback(const TensorPowerRing<Field>& t) {
  const auto& base = t.base();
  const auto& f = t.field();
  Matrix<Field> m(f, base.dim(), t.dim());
  for (std::size_t c = 0; c < t.dim(); ++c) {
    const auto& tuple = t.tuple(c);
    auto prod = base.basis_vector(tuple[0]);
    for (std::size_t i = 1; i < tuple.size(); ++i) prod = base.multiply(prod, base.basis_vector(tuple[i]));
    for (std::size_t r = 0; r < base.dim(); ++r) m(r, c) = prod[r];
  }
  return GradedLinearMap<Field>(t.algebra().degrees(), base.degrees(), std::move(m));
}

/// φ^{⊗n} : H(Y)^{⊗n} → H(X)^{⊗n} for φ : H(Y) → H(X). φ has degree zero,
/// so no Koszul signs arise.
template <class Field>
GradedLinearMap<Field> map_power_pullback(const GradedLinearMap<Field>& phi, const TensorPowerRing<Field>& from,
                                          const TensorPowerRing<Field>& to) {
  if (!(from.field() == to.field()) || !(phi.field() == from.field()))
    throw DomainError("map_power_pullback: coefficient fields differ");
  if (from.power() != to.power()) throw DomainError("map_power_pullback: tensor powers differ");
  if (phi.source_degrees() != from.base().degrees() || phi.target_degrees() != to.base().degrees())
    throw DomainError("map_power_pullback: map does not match the base rings");
  const auto& f = to.field();
  Matrix<Field> m(f, to.dim(), from.dim());
  for (std::size_t c = 0; c < from.dim(); ++c) {
    std::vector<Vec<Field>> images;
    for (auto k : from.tuple(c)) images.push_back(phi.matrix().column(k));
    const auto col = to.tensor(images);
    for (std::size_t r = 0; r < to.dim(); ++r) m(r, c) = col[r];
  }
  return GradedLinearMap<Field>(from.algebra().degrees(), to.algebra().degrees(), std::move(m));
}

/// The tensor-power rings on both sides of f^* together with (f^n)^*.
template <class Field>
struct PowerPullback {
  TensorPowerRing<Field> codomain_power;  // H^*(Y)^{⊗n}
  TensorPowerRing<Field> domain_power;    // H^*(X)^{⊗n}
  GradedLinearMap<Field> map;
};

template <class Field>
PowerPullback<Field> map_power_pullback(const RingMap<Field>& phi, int n) {
  auto ty = power_ring(*phi.source(), n);
  auto tx = power_ring(*phi.target(), n);
  auto m = map_power_pullback(phi.linear(), ty, tx);
  return {std::move(ty), std::move(tx), std::move(m)};
}

/// g_n^* = Δ_n^* ∘ (f^n)^* : H^*(Y)^{⊗n} → H^*(X), for f : X → Y.
template <class Field>
GradedLinearMap<Field> g_pullback(const RingMap<Field>& phi, int n) {
  if (!phi.is_absolute()) throw DomainError("g_pullback: defined on absolute cohomology only");
  auto pp = map_power_pullback(phi, n);
  return diagonal_pullback(pp.domain_power).after(pp.map);
}

}  // namespace lscat
