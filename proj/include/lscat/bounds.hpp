#pragma once

// Witness searches turning cohomology into certified lower bounds.
//
// Every search looks for the longest non-vanishing product of positive-degree
// elements drawn from a finite search space built over span(S). Products are
// enumerated as non-decreasing index sequences: the ambient rings are graded
// commutative, so reordering a product only changes its sign.

#include "lscat/kunneth.hpp"

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lscat {

enum class SearchMode { Basis, Combinations, ExhaustiveSmallField };

inline std::string to_string(SearchMode m) {
  switch (m) {
    case SearchMode::Basis: return "basis";
    case SearchMode::Combinations: return "combo";
    case SearchMode::ExhaustiveSmallField: return "exhaustive";
  }
  return "?";
}

inline SearchMode parse_search_mode(const std::string& s) {
  if (s == "basis") return SearchMode::Basis;
  if (s == "combo") return SearchMode::Combinations;
  if (s == "exhaustive") return SearchMode::ExhaustiveSmallField;
  throw std::invalid_argument("unknown search mode '" + s + "' (expected basis, combo or exhaustive)");
}

struct SearchBudget {
  int max_length = 8;
  SearchMode mode = SearchMode::Combinations;
  std::size_t max_nodes = 500000;  // per level; hitting it drops the exhaustive claim

  void check() const {
    if (max_length < 1) throw std::invalid_argument("search budget: max length must be at least 1");
  }
};

/// Total ring dimension up to which exhaustive-small-field enumeration is allowed.
inline constexpr std::size_t kExhaustiveDimLimit = 12;

template <class Field>
struct NilWitness {
  int length = 0;
  std::vector<Vec<Field>> factors;
  std::vector<std::string> factor_labels;  // how each factor was built from the generators
  Vec<Field> product;
  bool exhaustive = false;

  /// Re-multiplies the factors in `ring`; true iff the stored non-zero product is reproduced.
  bool replay(const GradedAlgebra<Field>& ring) const {
    if (length < 1 || factors.size() != static_cast<std::size_t>(length)) return false;
    auto p = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) p = ring.multiply(p, factors[i]);
    return vectors_equal(ring.field(), p, product) && !is_zero_vector(ring.field(), p);
  }
};

template <class Field>
struct NilResult {
  int k = 0;
  std::optional<NilWitness<Field>> witness;
  bool exhaustive = false;
  std::size_t search_space = 0;
};

namespace detail {

template <class Field>
struct SearchElement {
  Vec<Field> vec;
  int degree;
  std::string label;
};

template <class Field>
std::vector<SearchElement<Field>> build_search_space(const GradedAlgebra<Field>& ring,
                                                     const std::vector<Vec<Field>>& gens, const SearchBudget& budget) {
  const auto& f = ring.field();
  std::vector<SearchElement<Field>> space;
  auto push_unique = [&](Vec<Field> v, int d, std::string label) {
    if (is_zero_vector(f, v)) return;
    for (const auto& e : space)
      if (vectors_equal(f, e.vec, v)) return;
    space.push_back({std::move(v), d, std::move(label)});
  };

  std::vector<int> degs;
  for (const auto& g : gens) degs.push_back(*ring.homogeneous_degree(g));

  if (budget.mode == SearchMode::ExhaustiveSmallField) {
    const int p = f.characteristic();
    if (p != 2 && p != 3)
      throw std::invalid_argument("exhaustive search needs coefficients F2 or F3, got " + f.name());
    if (ring.dim() > kExhaustiveDimLimit)
      throw std::invalid_argument("exhaustive search limited to rings of dimension <= " +
                                  std::to_string(kExhaustiveDimLimit) + ", got " + std::to_string(ring.dim()));
    std::vector<int> distinct = degs;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int d : distinct) {
      IndependentSet<Field> span(f, ring.dim());
      for (std::size_t i = 0; i < gens.size(); ++i)
        if (degs[i] == d) span.try_add(gens[i]);
      const auto& basis = span.members();
      const std::size_t r = basis.size();
      // every coefficient vector whose first non-zero entry is 1
      std::vector<std::uint32_t> coeff(r, 0);
      while (true) {
        std::size_t pos = r;
        bool done = true;
        while (pos > 0) {
          --pos;
          if (++coeff[pos] < static_cast<std::uint32_t>(p)) {
            done = false;
            break;
          }
          coeff[pos] = 0;
        }
        if (done) break;
        std::size_t lead = 0;
        while (lead < r && coeff[lead] == 0) ++lead;
        if (coeff[lead] != 1) continue;
        auto v = zero_vector(f, ring.dim());
        std::string label;
        for (std::size_t i = 0; i < r; ++i) {
          if (coeff[i] == 0) continue;
          axpy(f, f.from_int(coeff[i]), basis[i], v);
          if (!label.empty()) label += "+";
          label += (coeff[i] == 1 ? "" : std::to_string(coeff[i]) + "*") + "b" + std::to_string(d) + "_" + std::to_string(i);
        }
        push_unique(std::move(v), d, std::move(label));
      }
    }
    return space;
  }

  for (std::size_t i = 0; i < gens.size(); ++i) push_unique(gens[i], degs[i], "s" + std::to_string(i));
  if (budget.mode == SearchMode::Combinations) {
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j) {
        if (degs[i] != degs[j]) continue;
        auto sum = gens[i];
        axpy(f, f.one(), gens[j], sum);
        push_unique(std::move(sum), degs[i], "s" + std::to_string(i) + "+s" + std::to_string(j));
        auto diff = gens[i];
        axpy(f, f.neg(f.one()), gens[j], diff);
        push_unique(std::move(diff), degs[i], "s" + std::to_string(i) + "-s" + std::to_string(j));
      }
  }
  return space;
}

}  // namespace detail

/// Longest non-vanishing product over the search space built from `gens`.
/// Zero generators are ignored; non-homogeneous or degree-0 generators are
/// rejected. The returned k is a lower bound for the nilpotency index of the
/// (non-unital) subring generated by `gens`; `exhaustive` is set when the
/// enumeration or the degree cutoff shows that no (k+1)-fold product survives.
template <class Field>
NilResult<Field> nil_index(const GradedAlgebra<Field>& ring, const std::vector<Vec<Field>>& gens,
                           const SearchBudget& budget = {}) {
  budget.check();
  const auto& f = ring.field();
  std::vector<Vec<Field>> s;
  for (const auto& g : gens) {
    if (g.size() != ring.dim()) throw DomainError("nil_index: generator does not belong to the ring");
    if (is_zero_vector(f, g)) continue;
    auto d = ring.homogeneous_degree(g);
    if (!d) throw std::invalid_argument("nil_index: generator is not homogeneous");
    if (*d <= 0) throw std::invalid_argument("nil_index: generator has degree 0");
    s.push_back(g);
  }

  NilResult<Field> result;
  if (s.empty()) {
    result.exhaustive = true;
    return result;
  }
  const auto space = detail::build_search_space(ring, s, budget);
  result.search_space = space.size();
  const int top = ring.top_degree();
  int min_degree = space.front().degree;
  for (const auto& e : space) min_degree = std::min(min_degree, e.degree);

  struct Node {
    std::size_t parent;  // index into the previous level
    std::size_t last;    // search-space index of the last factor
    int degree;
    Vec<Field> product;
  };
  std::vector<std::vector<Node>> levels;
  levels.emplace_back();
  for (std::size_t i = 0; i < space.size(); ++i) levels[0].push_back({0, i, space[i].degree, space[i].vec});

  bool truncated = false;
  while (static_cast<int>(levels.size()) < budget.max_length) {
    std::vector<Node> next;
    for (std::size_t n = 0; n < levels.back().size() && !truncated; ++n) {
      const auto& node = levels.back()[n];
      for (std::size_t j = node.last; j < space.size(); ++j) {
        const int d = node.degree + space[j].degree;
        if (d > top) continue;
        auto prod = ring.multiply(node.product, space[j].vec);
        if (is_zero_vector(f, prod)) continue;
        next.push_back({n, j, d, std::move(prod)});
        if (next.size() >= budget.max_nodes) {
          truncated = true;
          break;
        }
      }
    }
    if (next.empty()) break;
    levels.push_back(std::move(next));
    if (truncated) break;
  }

  result.k = static_cast<int>(levels.size());
  const bool enumerated_to_empty = static_cast<int>(levels.size()) < budget.max_length && !truncated;
  const bool degree_cutoff = static_cast<long>(result.k + 1) * min_degree > top;
  result.exhaustive = enumerated_to_empty || degree_cutoff;

  NilWitness<Field> w;
  w.length = result.k;
  w.exhaustive = result.exhaustive;
  std::size_t at = 0;
  for (std::size_t lvl = levels.size(); lvl-- > 0;) {
    const auto& node = levels[lvl][at];
    w.factors.push_back(space[node.last].vec);
    w.factor_labels.push_back(space[node.last].label);
    if (lvl + 1 == levels.size()) w.product = node.product;
    at = node.parent;
  }
  std::reverse(w.factors.begin(), w.factors.end());
  std::reverse(w.factor_labels.begin(), w.factor_labels.end());
  result.witness = std::move(w);
  return result;
}

enum class RuleKind { Rule, Classical, Derived, UserFact, Cohomology, Convention };

inline std::string to_string(RuleKind k) {
  switch (k) {
    case RuleKind::Rule: return "RULE";
    case RuleKind::Classical: return "CLASSICAL-RULE";
    case RuleKind::Derived: return "DERIVED-RULE";
    case RuleKind::UserFact: return "USER-FACT";
    case RuleKind::Cohomology: return "COHOMOLOGY";
    case RuleKind::Convention: return "CONVENTION";
  }
  return "?";
}

/// A lower bound "invariant >= k" with the search that produced it. The
/// ambient ring is kept so the witness can be replayed later.
template <class Field>
struct BoundReport {
  std::string invariant;  // e.g. "srelcat(f)", "wTC_2(X)"
  std::string rule;       // inequality the bound instantiates
  RuleKind kind = RuleKind::Cohomology;
  std::string note;
  int k = 0;
  NilResult<Field> search;
  std::shared_ptr<const GradedAlgebra<Field>> ambient;
  std::vector<std::size_t> dims;         // ambient dims by degree
  std::vector<std::size_t> kernel_dims;  // for zero-divisor searches: kernel dims by degree

  std::string relation() const { return invariant + " >= " + std::to_string(k); }
  bool certified() const { return true; }
  bool replay() const {
    if (!search.witness) return k == 0;
    return search.witness->length == k && search.witness->replay(*ambient);
  }
};

namespace detail {

template <class Field>
std::vector<Vec<Field>> positive_part(const GradedAlgebra<Field>& ring, const std::vector<Vec<Field>>& vs) {
  std::vector<Vec<Field>> out;
  for (const auto& v : vs) {
    auto d = ring.homogeneous_degree(v);
    if (d && *d > 0) out.push_back(v);
  }
  return out;
}

template <class Field>
std::vector<std::size_t> degree_histogram(const GradedAlgebra<Field>& ring, const std::vector<Vec<Field>>& vs) {
  std::vector<std::size_t> out(static_cast<std::size_t>(std::max(ring.top_degree() + 1, 0)), 0);
  for (const auto& v : vs)
    if (auto d = ring.homogeneous_degree(v)) ++out[static_cast<std::size_t>(*d)];
  return out;
}

template <class Field>
BoundReport<Field> make_report(std::string invariant, std::string rule, RuleKind kind, std::string note,
                               const GradedAlgebra<Field>& ambient, const std::vector<Vec<Field>>& gens,
                               const SearchBudget& budget) {
  BoundReport<Field> r;
  r.invariant = std::move(invariant);
  r.rule = std::move(rule);
  r.kind = kind;
  r.note = std::move(note);
  r.ambient = std::make_shared<const GradedAlgebra<Field>>(ambient);
  r.dims = ambient.dims();
  r.search = nil_index(*r.ambient, gens, budget);
  r.k = r.search.k;
  return r;
}

}  // namespace detail

/// nil of the image of f^* on positive degrees; bounds srelcat(f) from below.
template <class Field>
BoundReport<Field> nil_image(const RingMap<Field>& phi, const SearchBudget& budget = {}) {
  const auto& from = phi.source()->algebra();
  std::vector<Vec<Field>> gens;
  for (std::size_t j = 0; j < from.dim(); ++j)
    if (from.degree(j) > 0) gens.push_back(phi.apply(from.basis_vector(j)));
  return detail::make_report("srelcat(f)", "nil(Im f^*) <= srelcat(f)", RuleKind::Cohomology,
                             "products of images of positive-degree classes, formed in the domain ring",
                             phi.target()->algebra(), gens, budget);
}

/// Grade-n zero-divisor cup-length of X; bounds wTC_n(X) from below.
template <class Field>
BoundReport<Field> zcl(const CohomologyRing<Field>& h, int n, const SearchBudget& budget = {}) {
  if (h.is_relative()) throw DomainError("zcl: needs an absolute cohomology ring");
  auto t = power_ring(h, n);
  auto kernel = detail::positive_part(t.algebra(), diagonal_pullback(t).kernel());
  auto r = detail::make_report("wTC_" + std::to_string(n) + "(X)", "zcl_n(X) <= wTC_n(X)", RuleKind::Cohomology,
                               "products of kernel classes of the diagonal pullback in H^*(X)^{(x)n}", t.algebra(),
                               kernel, budget);
  r.kernel_dims = detail::degree_histogram(t.algebra(), kernel);
  return r;
}

/// nil(ker g_n^*) with products formed in H^*(Y)^{⊗n}; bounds wTC_n(f) from below.
template <class Field>
BoundReport<Field> nil_ker_g(const RingMap<Field>& phi, int n, const SearchBudget& budget = {}) {
  auto g = g_pullback(phi, n);
  auto ty = power_ring(*phi.source(), n);
  auto kernel = detail::positive_part(ty.algebra(), g.kernel());
  auto r = detail::make_report("wTC_" + std::to_string(n) + "(f)", "nil(ker g_n^*) <= wTC_n(f)", RuleKind::Cohomology,
                               "products of kernel classes of g_n^* = Delta_n^* (f^n)^*, formed in H^*(Y)^{(x)n}",
                               ty.algebra(), kernel, budget);
  r.kernel_dims = detail::degree_histogram(ty.algebra(), kernel);
  return r;
}

/// Zero-divisors of Y pulled back along f^n; bounds TC_n(f) from below. This is
/// the sectional-category cup-length argument applied to qscat of the map of
/// pairs, so the report is tagged as a derived rule.
template <class Field>
BoundReport<Field> map_zcl(const RingMap<Field>& phi, int n, const SearchBudget& budget = {}) {
  if (!phi.is_absolute()) throw DomainError("map_zcl: defined on absolute cohomology only");
  auto pp = map_power_pullback(phi, n);
  auto kernel = detail::positive_part(pp.codomain_power.algebra(), diagonal_pullback(pp.codomain_power).kernel());
  std::vector<Vec<Field>> images;
  for (const auto& u : kernel) images.push_back(pp.map.apply(u));
  auto r = detail::make_report(
      "TC_" + std::to_string(n) + "(f)", "nil((f^n)^* ker Delta_n^*) <= TC_n(f)", RuleKind::Derived,
      "classes of H^*(Y^n, Delta Y) pull back to H^*(X^n) and vanish on each open set of a qscat covering, so "
      "(k+1)-fold products vanish when qscat <= k",
      pp.domain_power.algebra(), images, budget);
  r.kernel_dims = detail::degree_histogram(pp.codomain_power.algebra(), kernel);
  return r;
}

/// Classical cup-length of X; bounds cat(X) from below.
template <class Field>
BoundReport<Field> cup_length(const CohomologyRing<Field>& h, const SearchBudget& budget = {}) {
  if (h.is_relative()) throw DomainError("cup_length: needs an absolute cohomology ring");
  const auto& a = h.algebra();
  std::vector<Vec<Field>> gens;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a.degree(i) > 0) gens.push_back(a.basis_vector(i));
  return detail::make_report("cat(X)", "cup-length(X) <= cat(X)", RuleKind::Classical,
                             "products of positive-degree basis classes", a, gens, budget);
}

}  // namespace lscat
