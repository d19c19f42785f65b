#pragma once

// Runs the cohomological searches for every entity that carries simplicial
// data and installs the resulting bounds as leaves of the fact graph.

#include "lscat/bounds.hpp"
#include "lscat/propagation.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace lscat {

/// Simplicial realisation of an entity. Spaces use `complex`; pairs use
/// `complex` and `subcomplex`; maps use `map`.
struct SimplicialData {
  ComplexPtr complex;
  std::string subcomplex;
  std::shared_ptr<const SimplicialMap> map;
};

template <class Field>
struct AttachedBound {
  std::string entity;
  Slot slot;
  Side side = Side::Lower;
  Value value = 0;
  std::string rule;
  std::optional<BoundReport<Field>> report;  // absent for bounds that need no search
};

namespace detail {

template <class Field>
CertPtr witness_certificate(const std::string& entity, const Slot& slot, const std::string& rule,
                            const BoundReport<Field>& r, const std::string& ring_name) {
  auto c = std::make_shared<Certificate>();
  c->entity = entity;
  c->slot = to_string(slot);
  c->side = Side::Lower;
  c->value = r.k;
  c->rule = rule;
  c->kind = r.kind;
  c->statement = r.rule;
  if (r.search.witness) {
    const auto& w = *r.search.witness;
    WitnessRecord rec;
    rec.length = w.length;
    for (const auto& f : w.factors) rec.factors.push_back(format_element(*r.ambient, f));
    rec.product = format_element(*r.ambient, w.product);
    rec.ring = ring_name;
    rec.exhaustive = w.exhaustive;
    auto ambient = r.ambient;
    rec.replay = [ambient, w] { return w.replay(*ambient); };
    c->witness = std::move(rec);
  }
  return c;
}

template <class Field>
class RingCache {
public:
  explicit RingCache(Field field) : field_(std::move(field)) {}

  RingPtr<Field> get(const ComplexPtr& x, const std::string& sub) {
    const auto key = x->name() + "|" + sub;
    auto it = rings_.find(key);
    if (it != rings_.end()) return it->second;
    auto ring = build_ring(x, sub.empty() ? Subcomplex::empty() : Subcomplex::named(*x, sub), field_);
    rings_.emplace(key, ring);
    return ring;
  }

private:
  Field field_;
  std::map<std::string, RingPtr<Field>> rings_;
};

}  // namespace detail

/// For each equipped entity: spaces get cat >= cup-length, cat <= dim (when
/// connected) and wTC_n >= zcl_n; pairs and maps of pairs get srelcat >=
/// nil(Im f^*); maps of spaces get cat(f) >= nil(Im f^*), wTC_n(f) >=
/// nil(ker g_n^*) and TC_n(f) >= the pulled-back zero-divisor length.
/// Zero lower bounds are reported but not installed.
template <class Field>
std::vector<AttachedBound<Field>> attach_cohomology_bounds(FactGraph& graph,
                                                           const std::map<std::string, SimplicialData>& data,
                                                           const Field& field, const SearchBudget& budget,
                                                           const std::vector<int>& grades) {
  for (int n : grades)
    if (n < kMinGrade || n > kMaxGrade) throw std::invalid_argument("grade " + std::to_string(n) + " outside [2, 9]");
  detail::RingCache<Field> cache(field);
  std::vector<AttachedBound<Field>> out;
  const std::string over = " over " + field.name();

  auto install = [&](const std::string& entity, Slot slot, const std::string& rule, BoundReport<Field> r,
                     const std::string& ring_name) {
    if (r.k > 0) graph.install(entity, slot, Side::Lower, detail::witness_certificate(entity, slot, rule, r, ring_name));
    out.push_back({entity, slot, Side::Lower, r.k, rule, std::move(r)});
  };

  for (const auto& e : graph.entities()) {
    auto it = data.find(e.name);
    if (it == data.end()) continue;
    const auto& d = it->second;

    if (e.kind == EntityKind::Space) {
      if (!d.complex) continue;
      auto ring = cache.get(d.complex, "");
      const std::string h = "H^*(" + d.complex->name() + ")";
      auto cl = cup_length(*ring, budget);
      install(e.name, Slot::cat(), "cup-length", std::move(cl), h + over);
      if (connected_components(*d.complex).count == 1) {
        const Value dim = dimension(*d.complex);
        auto c = std::make_shared<Certificate>();
        c->entity = e.name;
        c->slot = to_string(Slot::cat());
        c->side = Side::Upper;
        c->value = dim;
        c->factor = dim;
        c->rule = "R18";
        c->kind = RuleKind::Classical;
        c->statement = "cat(X) <= dim(X) for connected X";
        graph.install(e.name, Slot::cat(), Side::Upper, c);
        out.push_back({e.name, Slot::cat(), Side::Upper, dim, "R18", std::nullopt});
      }
      for (int n : grades)
        install(e.name, Slot::wtc(n), "zcl", zcl(*ring, n, budget), h + "^{(x)" + std::to_string(n) + "}" + over);
      continue;
    }

    if (e.kind == EntityKind::Pair) {
      if (!d.complex) continue;
      if (d.subcomplex.empty()) throw InputError("pair '" + e.name + "' needs a subcomplex");
      auto ring = cache.get(d.complex, d.subcomplex);
      auto r = nil_image(RingMap<Field>::identity(ring), budget);
      r.invariant = "srelcat(" + e.name + ")";
      install(e.name, Slot::srelcat(), "nil-image", std::move(r),
              "H^*(" + d.complex->name() + ", " + d.subcomplex + ")" + over);
      continue;
    }

    if (!d.map) continue;
    const auto& m = *d.map;
    if (m.is_relative() != e.of_pairs)
      throw InputError("map '" + e.name + "': simplicial map and entity disagree on being a map of pairs");
    auto codomain = cache.get(m.target(), m.target_pair().value_or(""));
    auto domain = cache.get(m.source(), m.source_pair().value_or(""));
    auto phi = induced_map(m, codomain, domain);
    const std::string hx = "H^*(" + m.source()->name() + (m.source_pair() ? ", " + *m.source_pair() : "") + ")";
    if (e.of_pairs) {
      auto r = nil_image(phi, budget);
      install(e.name, Slot::srelcat(), "nil-image", std::move(r), hx + over);
      continue;
    }
    auto r = nil_image(phi, budget);
    r.invariant = "cat(f)";
    r.rule = "nil(Im f^*) <= cat(f)";
    r.kind = RuleKind::Classical;
    install(e.name, Slot::cat(), "nil-image", std::move(r), hx + over);
    const std::string hy = "H^*(" + m.target()->name() + ")";
    for (int n : grades) {
      const auto pw = "^{(x)" + std::to_string(n) + "}";
      install(e.name, Slot::wtc(n), "nil-ker-g", nil_ker_g(phi, n, budget), hy + pw + over);
      install(e.name, Slot::tc(n), "map-zcl", map_zcl(phi, n, budget), hx + pw + over);
    }
  }
  return out;
}

}  // namespace lscat
