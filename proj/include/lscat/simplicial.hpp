#pragma once

// Finite simplicial complexes, marked subcomplexes and simplicial maps.
//
// Vertices carry string labels but all computation uses their index in the
// declared vertex order. A simplex is the sorted vector of its vertex
// indices; sorting by that fixed order is what makes the Alexander-Whitney
// formula and pullback signs well defined downstream.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lscat {

using Simplex = std::vector<int>;

/// Thrown for inputs that cannot even be represented (unknown vertex label,
/// missing subcomplex name). Structural problems are reported as data by the
/// validate_* functions instead.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string v) { violations.push_back(std::move(v)); }
  void merge(const ValidationReport& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
};

/// Orders simplices by dimension first, then lexicographically.
struct SimplexOrder {
  bool operator()(const Simplex& a, const Simplex& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

class SimplicialComplex {
public:
  SimplicialComplex(std::string name, std::vector<std::string> vertices, std::vector<Simplex> simplices)
      : name_(std::move(name)), labels_(std::move(vertices)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) index_of_label_.emplace(labels_[i], static_cast<int>(i));
    for (auto s : simplices) {
      for (int v : s)
        if (v < 0 || static_cast<std::size_t>(v) >= labels_.size())
          throw InputError("complex '" + name_ + "': vertex index " + std::to_string(v) + " out of range");
      std::sort(s.begin(), s.end());
      raw_.push_back(s);
      simplices_.insert(std::move(s));
    }
    build_index();
  }

  /// Convenience constructor from labelled simplices.
  static SimplicialComplex from_labels(std::string name, std::vector<std::string> vertices,
                                       const std::vector<std::vector<std::string>>& simplices) {
    std::map<std::string, int> idx;
    for (std::size_t i = 0; i < vertices.size(); ++i) idx.emplace(vertices[i], static_cast<int>(i));
    std::vector<Simplex> out;
    for (const auto& s : simplices) {
      Simplex t;
      for (const auto& l : s) {
        auto it = idx.find(l);
        if (it == idx.end()) throw InputError("complex '" + name + "': unknown vertex label '" + l + "'");
        t.push_back(it->second);
      }
      out.push_back(std::move(t));
    }
    return SimplicialComplex(std::move(name), std::move(vertices), std::move(out));
  }

  const std::string& name() const { return name_; }
  std::size_t vertex_count() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int v) const { return labels_.at(static_cast<std::size_t>(v)); }

  std::optional<int> vertex_index(const std::string& label) const {
    auto it = index_of_label_.find(label);
    if (it == index_of_label_.end()) return std::nullopt;
    return it->second;
  }

  /// All simplices in (dimension, lexicographic) order, duplicates removed.
  const std::set<Simplex, SimplexOrder>& simplices() const { return simplices_; }
  /// Simplices exactly as supplied (sorted internally, duplicates kept).
  const std::vector<Simplex>& raw_simplices() const { return raw_; }

  bool contains(const Simplex& s) const { return simplices_.count(s) != 0; }

  /// k-simplices in lexicographic order; empty beyond the dimension.
  const std::vector<Simplex>& simplices_of_dim(std::size_t k) const {
    static const std::vector<Simplex> none;
    return k < by_dim_.size() ? by_dim_[k] : none;
  }

  /// Position of `s` within simplices_of_dim(s.size() - 1).
  std::optional<std::size_t> position(const Simplex& s) const {
    auto it = position_.find(s);
    if (it == position_.end()) return std::nullopt;
    return it->second;
  }

  std::string format(const Simplex& s) const {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ",";
      out += s[i] >= 0 && static_cast<std::size_t>(s[i]) < labels_.size() ? labels_[s[i]] : "?";
    }
    return out + "}";
  }

  Simplex parse_simplex(const std::vector<std::string>& labels) const {
    Simplex s;
    for (const auto& l : labels) {
      auto v = vertex_index(l);
      if (!v) throw InputError("complex '" + name_ + "': unknown vertex label '" + l + "'");
      s.push_back(*v);
    }
    std::sort(s.begin(), s.end());
    return s;
  }

  void add_subcomplex(const std::string& sub_name, std::vector<Simplex> simplices) {
    for (auto& s : simplices) std::sort(s.begin(), s.end());
    subcomplexes_[sub_name] = std::move(simplices);
  }
  bool has_subcomplex(const std::string& sub_name) const { return subcomplexes_.count(sub_name) != 0; }
  const std::vector<Simplex>& subcomplex(const std::string& sub_name) const {
    auto it = subcomplexes_.find(sub_name);
    if (it == subcomplexes_.end())
      throw InputError("complex '" + name_ + "' has no subcomplex named '" + sub_name + "'");
    return it->second;
  }
  const std::map<std::string, std::vector<Simplex>>& subcomplexes() const { return subcomplexes_; }

private:
  void build_index() {
    for (const auto& s : simplices_) {
      if (s.empty()) continue;
      const std::size_t k = s.size() - 1;
      if (by_dim_.size() <= k) by_dim_.resize(k + 1);
      position_.emplace(s, by_dim_[k].size());
      by_dim_[k].push_back(s);
    }
  }

  std::string name_;
  std::vector<std::string> labels_;
  std::map<std::string, int> index_of_label_;
  std::vector<Simplex> raw_;
  std::set<Simplex, SimplexOrder> simplices_;
  std::vector<std::vector<Simplex>> by_dim_;
  std::map<Simplex, std::size_t> position_;
  std::map<std::string, std::vector<Simplex>> subcomplexes_;
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

/// A face-closed set of simplices of a parent complex; the empty set models
/// the absolute case.
class Subcomplex {
public:
  Subcomplex() = default;
  Subcomplex(std::string name, std::vector<Simplex> simplices) : name_(std::move(name)) {
    for (auto& s : simplices) {
      std::sort(s.begin(), s.end());
      members_.insert(std::move(s));
    }
  }

  static Subcomplex empty() { return Subcomplex{}; }
  static Subcomplex named(const SimplicialComplex& k, const std::string& sub_name) {
    return Subcomplex(sub_name, k.subcomplex(sub_name));
  }

  const std::string& name() const { return name_; }
  bool is_empty() const { return members_.empty(); }
  bool contains(const Simplex& s) const { return members_.count(s) != 0; }
  const std::set<Simplex, SimplexOrder>& simplices() const { return members_; }

private:
  std::string name_;
  std::set<Simplex, SimplexOrder> members_;
};

namespace detail {

inline void for_each_codim1_face(const Simplex& s, const auto& fn) {
  if (s.size() < 2) return;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Simplex face;
    face.reserve(s.size() - 1);
    for (std::size_t j = 0; j < s.size(); ++j)
      if (j != i) face.push_back(s[j]);
    fn(face, i);
  }
}

inline bool has_repeat(const Simplex& sorted) {
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

}  // namespace detail

inline ValidationReport validate_complex(const SimplicialComplex& k) {
  ValidationReport report;
  if (k.simplices().empty()) {
    report.add("complex is empty");
    return report;
  }
  {
    std::set<std::string> seen;
    for (const auto& l : k.labels())
      if (!seen.insert(l).second) report.add("vertex label '" + l + "' is declared twice");
  }
  std::vector<bool> used(k.vertex_count(), false);
  for (const auto& s : k.simplices()) {
    if (s.empty()) {
      report.add("empty simplex listed");
      continue;
    }
    if (detail::has_repeat(s)) {
      report.add("simplex " + k.format(s) + " repeats a vertex");
      continue;
    }
    for (int v : s) used[static_cast<std::size_t>(v)] = true;
    // Checking codimension-one faces of every listed simplex is enough:
    // closure then follows by induction on dimension.
    detail::for_each_codim1_face(s, [&](const Simplex& face, std::size_t) {
      if (!k.contains(face)) report.add("face " + k.format(face) + " of " + k.format(s) + " missing");
    });
  }
  for (std::size_t v = 0; v < k.vertex_count(); ++v)
    if (!used[v]) report.add("vertex '" + k.label(static_cast<int>(v)) + "' appears in no simplex");
  return report;
}

/// Checks that `a` consists of simplices of `k` and is face-closed.
inline ValidationReport validate_subcomplex(const SimplicialComplex& k, const Subcomplex& a) {
  ValidationReport report;
  const std::string tag = a.name().empty() ? "subcomplex" : "subcomplex '" + a.name() + "'";
  for (const auto& s : a.simplices()) {
    if (!k.contains(s)) {
      report.add(tag + ": simplex " + k.format(s) + " is not a simplex of '" + k.name() + "'");
      continue;
    }
    detail::for_each_codim1_face(s, [&](const Simplex& face, std::size_t) {
      if (!a.contains(face)) report.add(tag + ": face " + k.format(face) + " of " + k.format(s) + " missing");
    });
  }
  return report;
}

class SimplicialMap {
public:
  SimplicialMap(std::string name, ComplexPtr source, ComplexPtr target, std::vector<int> vertex_image,
                std::optional<std::string> source_pair = std::nullopt,
                std::optional<std::string> target_pair = std::nullopt)
      : name_(std::move(name)),
        source_(std::move(source)),
        target_(std::move(target)),
        image_(std::move(vertex_image)),
        source_pair_(std::move(source_pair)),
        target_pair_(std::move(target_pair)) {
    if (!source_ || !target_) throw InputError("map '" + name_ + "': null complex");
  }

  static SimplicialMap identity(const ComplexPtr& k, std::optional<std::string> pair = std::nullopt) {
    std::vector<int> img(k->vertex_count());
    std::iota(img.begin(), img.end(), 0);
    return SimplicialMap("id_" + k->name(), k, k, std::move(img), pair, pair);
  }

  const std::string& name() const { return name_; }
  const ComplexPtr& source() const { return source_; }
  const ComplexPtr& target() const { return target_; }
  const std::vector<int>& vertex_image() const { return image_; }
  const std::optional<std::string>& source_pair() const { return source_pair_; }
  const std::optional<std::string>& target_pair() const { return target_pair_; }
  bool is_relative() const { return source_pair_.has_value() || target_pair_.has_value(); }

  Subcomplex source_subcomplex() const {
    return source_pair_ ? Subcomplex::named(*source_, *source_pair_) : Subcomplex::empty();
  }
  Subcomplex target_subcomplex() const {
    return target_pair_ ? Subcomplex::named(*target_, *target_pair_) : Subcomplex::empty();
  }

  /// Image vertex set of `s`, sorted with duplicates collapsed.
  Simplex image_of(const Simplex& s) const {
    Simplex out;
    for (int v : s) out.push_back(image_.at(static_cast<std::size_t>(v)));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

private:
  std::string name_;
  ComplexPtr source_;
  ComplexPtr target_;
  std::vector<int> image_;
  std::optional<std::string> source_pair_;
  std::optional<std::string> target_pair_;
};

inline ValidationReport validate_map(const SimplicialMap& f) {
  ValidationReport report;
  const auto& src = *f.source();
  const auto& tgt = *f.target();
  const std::string tag = "map '" + f.name() + "'";
  if (f.vertex_image().size() != src.vertex_count()) {
    report.add(tag + ": vertex image has " + std::to_string(f.vertex_image().size()) + " entries, source has " +
               std::to_string(src.vertex_count()) + " vertices");
    return report;
  }
  for (std::size_t v = 0; v < f.vertex_image().size(); ++v) {
    const int w = f.vertex_image()[v];
    if (w < 0 || static_cast<std::size_t>(w) >= tgt.vertex_count()) {
      report.add(tag + ": vertex '" + src.label(static_cast<int>(v)) + "' has no valid image");
      return report;
    }
  }
  for (const auto& s : src.simplices()) {
    const auto img = f.image_of(s);
    if (!tgt.contains(img))
      report.add(tag + ": image " + tgt.format(img) + " of simplex " + src.format(s) + " is not a simplex of '" +
                 tgt.name() + "'");
  }
  std::optional<Subcomplex> c, a;
  try {
    if (f.source_pair()) c = f.source_subcomplex();
    if (f.target_pair()) a = f.target_subcomplex();
  } catch (const InputError& e) {
    report.add(tag + ": " + e.what());
    return report;
  }
  if (c) report.merge(validate_subcomplex(src, *c));
  if (a) report.merge(validate_subcomplex(tgt, *a));
  if (c && !c->is_empty()) {
    for (const auto& s : c->simplices()) {
      const auto img = f.image_of(s);
      if (!a || !a->contains(img))
        report.add(tag + ": simplex " + src.format(s) + " of the source subcomplex maps outside the target subcomplex");
    }
  }
  return report;
}

/// g after f; requires f.target() and g.source() to be the same complex.
inline SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
  if (f.target() != g.source() && f.target()->name() != g.source()->name())
    throw InputError("cannot compose '" + g.name() + "' after '" + f.name() + "': complexes differ");
  std::vector<int> img;
  for (int w : f.vertex_image()) img.push_back(g.vertex_image().at(static_cast<std::size_t>(w)));
  return SimplicialMap(g.name() + "∘" + f.name(), f.source(), g.target(), std::move(img), f.source_pair(),
                       g.target_pair());
}

struct Components {
  std::size_t count = 0;
  std::vector<int> label;  // component id per vertex, numbered by first vertex
};

inline Components connected_components(const SimplicialComplex& k) {
  std::vector<int> parent(k.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : k.simplices_of_dim(1)) {
    const int a = find(e[0]), b = find(e[1]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  Components out;
  out.label.assign(k.vertex_count(), -1);
  std::map<int, int> ids;
  for (std::size_t v = 0; v < k.vertex_count(); ++v) {
    auto [it, fresh] = ids.emplace(find(static_cast<int>(v)), static_cast<int>(ids.size()));
    out.label[v] = it->second;
  }
  out.count = ids.size();
  return out;
}

inline int dimension(const SimplicialComplex& k) {
  std::size_t top = 0;
  for (const auto& s : k.simplices()) top = std::max(top, s.size());
  return static_cast<int>(top) - 1;
}

}  // namespace lscat
