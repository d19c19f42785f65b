#pragma once

// Ring homomorphisms induced on cohomology by simplicial maps.

#include "lscat/cohomology.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>

namespace lscat {

/// f^* : H^*(X, A) → H^*(B, C) for f : (B, C) → (X, A). `source()` is the
/// ring of the codomain pair (where f^* starts) and `target()` the ring of
/// the domain pair.
template <class Field>
class RingMap {
public:
  RingMap(RingPtr<Field> source, RingPtr<Field> target, GradedLinearMap<Field> map)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
    if (map_.source_degrees() != source_->algebra().degrees() || map_.target_degrees() != target_->algebra().degrees())
      throw DomainError("RingMap: matrix does not match the rings' bases");
  }

  static RingMap identity(const RingPtr<Field>& ring) {
    const auto& degs = ring->algebra().degrees();
    return RingMap(ring, ring, GradedLinearMap<Field>(degs, degs, Matrix<Field>::identity(ring->field(), degs.size())));
  }

  const RingPtr<Field>& source() const { return source_; }
  const RingPtr<Field>& target() const { return target_; }
  const GradedLinearMap<Field>& linear() const { return map_; }
  const Field& field() const { return source_->field(); }
  bool is_absolute() const { return !source_->is_relative() && !target_->is_relative(); }

  Vec<Field> apply(const Vec<Field>& x) const { return map_.apply(x); }

  /// Degree-k matrix (rows: target basis, columns: source basis).
  Matrix<Field> block(int k) const { return map_.block(k); }

  /// (this ∘ inner) as ring maps: inner : R1 → R2, this : R2 → R3.
  RingMap after(const RingMap& inner) const {
    if (inner.target_.get() != source_.get() && inner.target_->id() != source_->id())
      throw DomainError("RingMap compose: rings do not match");
    return RingMap(inner.source_, target_, map_.after(inner.map_));
  }

private:
  RingPtr<Field> source_;
  RingPtr<Field> target_;
  GradedLinearMap<Field> map_;
};

/// Cochain pullback (f^# φ)(σ) = sign · φ(f(σ)), zero when f collapses σ.
/// The sign is that of the permutation sorting the image vertices.
template <class Field>
Vec<Field> pullback_cochain(const SimplicialMap& f, const CochainComplex<Field>& from, const CochainComplex<Field>& to,
                            int k, const Vec<Field>& phi) {
  const auto& fld = to.field();
  auto out = zero_vector(fld, to.rank_in_degree(k));
  if (k > to.top_degree()) return out;
  const auto& basis = to.basis(k);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    Simplex img;
    for (int v : basis[r]) img.push_back(f.vertex_image()[static_cast<std::size_t>(v)]);
    // insertion sort, counting transpositions
    bool odd = false;
    bool degenerate = false;
    for (std::size_t i = 1; i < img.size() && !degenerate; ++i)
      for (std::size_t j = i; j > 0; --j) {
        if (img[j - 1] == img[j]) {
          degenerate = true;
          break;
        }
        if (img[j - 1] < img[j]) break;
        std::swap(img[j - 1], img[j]);
        odd = !odd;
      }
    if (degenerate) continue;
    const auto v = from.evaluate(k, phi, img);
    if (fld.is_zero(v)) continue;
    out[r] = odd ? fld.neg(v) : v;
  }
  return out;
}

/// Matrix of f^* on the chosen cohomology bases. `codomain_ring` must be
/// H^*(X, A) for the map's target pair and `domain_ring` H^*(B, C).
template <class Field>
RingMap<Field> induced_map(const SimplicialMap& f, const RingPtr<Field>& codomain_ring, const RingPtr<Field>& domain_ring) {
  auto report = validate_map(f);
  if (!report.ok()) throw InputError("invalid simplicial map: " + report.violations.front());
  if (codomain_ring->complex()->name() != f.target()->name() || domain_ring->complex()->name() != f.source()->name())
    throw DomainError("induced_map: rings are not built on the map's complexes");
  if (codomain_ring->is_relative() != f.target_pair().has_value() ||
      domain_ring->is_relative() != f.source_pair().has_value())
    throw DomainError("induced_map: ring pairs do not match the map's pairs");
  if (!(codomain_ring->field() == domain_ring->field())) throw DomainError("induced_map: rings over different fields");

  const auto& fld = codomain_ring->field();
  const auto& from = codomain_ring->algebra();
  const auto& to = domain_ring->algebra();
  Matrix<Field> m(fld, to.dim(), from.dim());
  for (std::size_t j = 0; j < from.dim(); ++j) {
    const int k = from.degree(j);
    const auto rep = codomain_ring->representative(k, from.basis_vector(j));
    if (k > domain_ring->cochains()->top_degree()) continue;
    const auto pulled = pullback_cochain(f, *codomain_ring->cochains(), *domain_ring->cochains(), k, rep);
    const auto cls = domain_ring->class_of(k, pulled);
    for (std::size_t i = 0; i < to.dim(); ++i) m(i, j) = cls[i];
  }
  return RingMap<Field>(codomain_ring, domain_ring, GradedLinearMap<Field>(from.degrees(), to.degrees(), std::move(m)));
}

/// Builds both rings (with products) and the induced map.
template <class Field>
RingMap<Field> induced_map(const SimplicialMap& f, const Field& field) {
  auto report = validate_map(f);
  if (!report.ok()) throw InputError("invalid simplicial map: " + report.violations.front());
  auto codomain = build_ring(f.target(), f.target_subcomplex(), field);
  auto domain = build_ring(f.source(), f.source_subcomplex(), field);
  return induced_map(f, codomain, domain);
}

}  // namespace lscat
