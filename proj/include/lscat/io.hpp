#pragma once

// JSON formats for complexes, maps and scenarios, the scenario pipeline
// (load, attach cohomology bounds, assert, propagate) and report output.

#include "lscat/attach.hpp"
#include "lscat/field.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lscat {

using Json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

namespace detail {

inline const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

inline std::vector<std::string> string_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected a list of strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw InputError(where + ": expected a list of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

inline std::optional<std::string> optional_string(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_string()) throw InputError(std::string("\"") + key + "\" must be a string or null");
  return j.at(key).get<std::string>();
}

}  // namespace detail

// ---------------------------------------------------------------- complexes and maps

/// {"name", "vertices", "simplices", "subcomplexes"}. Labels are resolved
/// here; structural validity is left to validate_complex.
inline SimplicialComplex complex_from_json(const Json& j) {
  const std::string where = "complex";
  const auto name = detail::require(j, "name", where).get<std::string>();
  const auto vertices = detail::string_list(detail::require(j, "vertices", where), "complex '" + name + "' vertices");
  std::vector<std::vector<std::string>> simplices;
  for (const auto& s : detail::require(j, "simplices", where))
    simplices.push_back(detail::string_list(s, "complex '" + name + "' simplices"));
  auto k = SimplicialComplex::from_labels(name, vertices, simplices);
  if (j.contains("subcomplexes")) {
    for (const auto& [sub, list] : j.at("subcomplexes").items()) {
      std::vector<Simplex> members;
      for (const auto& s : list) members.push_back(k.parse_simplex(detail::string_list(s, "subcomplex '" + sub + "'")));
      k.add_subcomplex(sub, std::move(members));
    }
  }
  return k;
}

inline Json complex_to_json(const SimplicialComplex& k) {
  auto labels = [&](const Simplex& s) {
    Json out = Json::array();
    for (int v : s) out.push_back(k.label(v));
    return out;
  };
  Json j;
  j["name"] = k.name();
  j["vertices"] = k.labels();
  j["simplices"] = Json::array();
  for (const auto& s : k.simplices()) j["simplices"].push_back(labels(s));
  j["subcomplexes"] = Json::object();
  for (const auto& [name, list] : k.subcomplexes()) {
    Json l = Json::array();
    for (const auto& s : list) l.push_back(labels(s));
    j["subcomplexes"][name] = l;
  }
  return j;
}

inline ComplexPtr load_complex(const std::filesystem::path& path) {
  return std::make_shared<const SimplicialComplex>(complex_from_json(read_json(path)));
}

using ComplexRegistry = std::map<std::string, ComplexPtr>;

/// {"map": {"name"?, "source", "target", "source_pair", "target_pair", "vertex_image"}};
/// source and target name complexes in `complexes`.
inline SimplicialMap map_from_json(const Json& j, const ComplexRegistry& complexes, const std::string& fallback_name) {
  const auto& m = detail::require(j, "map", "map file");
  const auto name = m.contains("name") ? m.at("name").get<std::string>() : fallback_name;
  const std::string where = "map '" + name + "'";
  auto lookup = [&](const char* key) {
    const auto c = detail::require(m, key, where).get<std::string>();
    auto it = complexes.find(c);
    if (it == complexes.end()) throw InputError(where + ": unknown complex '" + c + "'");
    return it->second;
  };
  auto source = lookup("source");
  auto target = lookup("target");
  const auto& image = detail::require(m, "vertex_image", where);
  if (!image.is_object()) throw InputError(where + ": vertex_image must be an object");
  std::vector<int> img(source->vertex_count(), -1);
  for (const auto& [from, to] : image.items()) {
    auto v = source->vertex_index(from);
    if (!v) throw InputError(where + ": unknown source vertex '" + from + "'");
    auto w = target->vertex_index(to.get<std::string>());
    if (!w) throw InputError(where + ": unknown target vertex '" + to.get<std::string>() + "'");
    img[static_cast<std::size_t>(*v)] = *w;
  }
  for (std::size_t v = 0; v < img.size(); ++v)
    if (img[v] < 0) throw InputError(where + ": vertex '" + source->label(static_cast<int>(v)) + "' has no image");
  return SimplicialMap(name, source, target, std::move(img), detail::optional_string(m, "source_pair"),
                       detail::optional_string(m, "target_pair"));
}

inline std::shared_ptr<const SimplicialMap> load_map(const std::filesystem::path& path,
                                                     const ComplexRegistry& complexes) {
  return std::make_shared<const SimplicialMap>(map_from_json(read_json(path), complexes, path.stem().string()));
}

// ---------------------------------------------------------------- certificates

inline Json to_json(const Certificate& c) {
  Json j;
  j["entity"] = c.entity;
  j["slot"] = c.slot;
  j["side"] = to_string(c.side);
  j["value"] = c.value == kInfinity ? Json(nullptr) : Json(c.value);
  j["rule"] = c.rule;
  j["kind"] = to_string(c.kind);
  if (!c.statement.empty()) j["statement"] = c.statement;
  j["op"] = to_string(c.op);
  if (c.op == CertOp::Scale || c.op == CertOp::CeilDiv || c.factor != 0) j["factor"] = c.factor;
  if (!c.label.empty()) j["label"] = c.label;
  if (c.witness) {
    const auto& w = *c.witness;
    j["witness"] = {{"length", w.length},   {"factors", w.factors},       {"product", w.product},
                    {"ring", w.ring},       {"exhaustive", w.exhaustive}};
  }
  j["premises"] = Json::array();
  for (const auto& p : c.premises) j["premises"].push_back(to_json(*p));
  return j;
}

inline RuleKind parse_rule_kind(const std::string& s) {
  for (auto k : {RuleKind::Rule, RuleKind::Classical, RuleKind::Derived, RuleKind::UserFact, RuleKind::Cohomology,
                 RuleKind::Convention})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown rule kind '" + s + "'");
}

inline CertPtr certificate_from_json(const Json& j) {
  auto c = std::make_shared<Certificate>();
  c->entity = j.at("entity").get<std::string>();
  c->slot = j.at("slot").get<std::string>();
  c->side = j.at("side").get<std::string>() == "lower" ? Side::Lower : Side::Upper;
  c->value = j.at("value").is_null() ? kInfinity : j.at("value").get<Value>();
  c->rule = j.at("rule").get<std::string>();
  c->kind = parse_rule_kind(j.at("kind").get<std::string>());
  c->statement = j.value("statement", "");
  c->op = parse_cert_op(j.at("op").get<std::string>());
  c->factor = j.value("factor", Value{0});
  c->label = j.value("label", "");
  if (j.contains("witness")) {
    const auto& w = j.at("witness");
    WitnessRecord rec;
    rec.length = w.at("length").get<int>();
    rec.factors = w.at("factors").get<std::vector<std::string>>();
    rec.product = w.at("product").get<std::string>();
    rec.ring = w.at("ring").get<std::string>();
    rec.exhaustive = w.at("exhaustive").get<bool>();
    c->witness = std::move(rec);
  }
  for (const auto& p : j.at("premises")) c->premises.push_back(certificate_from_json(p));
  return c;
}

inline Json interval_json(const Interval& iv) {
  return {{"lo", iv.lo}, {"hi", iv.hi == kInfinity ? Json(nullptr) : Json(iv.hi)}};
}

inline Json contradiction_json(const Contradiction& c) {
  Json j;
  j["entity"] = c.entity;
  j["slot"] = c.slot;
  j["lower"] = c.lower ? to_json(*c.lower) : Json(nullptr);
  j["upper"] = c.upper ? to_json(*c.upper) : Json(nullptr);
  return j;
}

inline Json facts_json(const FactGraph& g) {
  Json out = Json::array();
  for (const auto& [ref, f] : g.facts()) {
    Json j;
    j["entity"] = g.entity(ref.entity).name;
    j["slot"] = to_string(ref.slot);
    j["lo"] = f.interval.lo;
    j["hi"] = f.interval.hi == kInfinity ? Json(nullptr) : Json(f.interval.hi);
    j["certificate"] = {{"lower", f.lower ? to_json(*f.lower) : Json(nullptr)},
                        {"upper", f.upper ? to_json(*f.upper) : Json(nullptr)}};
    out.push_back(std::move(j));
  }
  return out;
}

/// Re-derives every interval in a serialized fact list from its certificates.
/// Returns the first failure, or nullopt when everything replays.
inline std::optional<std::string> replay_facts_json(const Json& facts) {
  for (const auto& f : facts) {
    const auto tag = f.at("slot").get<std::string>() + "(" + f.at("entity").get<std::string>() + ")";
    const Value lo = f.at("lo").get<Value>();
    const Value hi = f.at("hi").is_null() ? kInfinity : f.at("hi").get<Value>();
    const auto& cert = f.at("certificate");
    if (cert.at("lower").is_null()) {
      if (lo != 0) return tag + ": lower bound without certificate";
    } else {
      auto c = certificate_from_json(cert.at("lower"));
      if (c->value != lo || !replay(*c)) return tag + ": lower certificate does not replay";
    }
    if (cert.at("upper").is_null()) {
      if (hi != kInfinity) return tag + ": upper bound without certificate";
    } else {
      auto c = certificate_from_json(cert.at("upper"));
      if (c->value != hi || !replay(*c)) return tag + ": upper certificate does not replay";
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- scenarios

struct Assertion {
  std::string entity;
  Slot slot;
  Interval interval;
  std::string label;
};

struct Request {
  std::string entity;
  Slot slot;
};

struct ScenarioOptions {
  CoefficientField field = CoefficientField::rationals();
  std::vector<int> grades = {2};
  SearchBudget budget;
};

struct Scenario {
  ComplexRegistry complexes;
  std::map<std::string, std::shared_ptr<const SimplicialMap>> maps;
  std::vector<Entity> entities;
  std::map<std::string, SimplicialData> data;
  struct HomotopyDecl {
    std::string a, b;
    bool relative;
  };
  std::vector<HomotopyDecl> homotopies;
  std::vector<Assertion> assertions;
  std::vector<Request> requests;
  ScenarioOptions options;
};

inline std::vector<int> parse_grades(const Json& j) {
  std::vector<int> out;
  for (const auto& g : j) {
    const int n = g.get<int>();
    if (n < kMinGrade || n > kMaxGrade) throw std::invalid_argument("grade " + std::to_string(n) + " outside [2, 9]");
    out.push_back(n);
  }
  return out;
}

inline ScenarioOptions options_from_json(const Json& j) {
  ScenarioOptions o;
  if (j.contains("field")) o.field = CoefficientField::parse(j.at("field").get<std::string>());
  if (j.contains("grades")) o.grades = parse_grades(j.at("grades"));
  if (j.contains("max_len")) o.budget.max_length = j.at("max_len").get<int>();
  if (j.contains("search")) o.budget.mode = parse_search_mode(j.at("search").get<std::string>());
  o.budget.check();
  return o;
}

inline Scenario scenario_from_json(const Json& j, const std::filesystem::path& base) {
  Scenario sc;
  if (j.contains("complexes"))
    for (const auto& ref : j.at("complexes")) {
      auto k = load_complex(base / ref.get<std::string>());
      auto report = validate_complex(*k);
      for (const auto& [sub, members] : k->subcomplexes())
        report.merge(validate_subcomplex(*k, Subcomplex(sub, members)));
      if (!report.ok()) throw InputError("complex '" + k->name() + "': " + report.violations.front());
      if (!sc.complexes.emplace(k->name(), k).second) throw InputError("duplicate complex '" + k->name() + "'");
    }
  if (j.contains("maps"))
    for (const auto& ref : j.at("maps")) {
      auto m = load_map(base / ref.get<std::string>(), sc.complexes);
      auto report = validate_map(*m);
      if (!report.ok()) throw InputError(report.violations.front());
      sc.maps.emplace(m->name(), m);
    }

  std::map<std::string, const Entity*> seen;
  auto kind_of = [&](const std::string& name) -> const Entity& {
    auto it = seen.find(name);
    if (it == seen.end()) throw InputError("unknown entity '" + name + "'");
    return *it->second;
  };
  sc.entities.reserve(j.value("entities", Json::array()).size());
  for (const auto& e : j.value("entities", Json::array())) {
    Entity ent;
    ent.name = detail::require(e, "name", "entity").get<std::string>();
    const std::string where = "entity '" + ent.name + "'";
    const auto kind = detail::require(e, "kind", where).get<std::string>();
    if (kind == "space") ent.kind = EntityKind::Space;
    else if (kind == "pair") ent.kind = EntityKind::Pair;
    else if (kind == "map") ent.kind = EntityKind::Map;
    else throw InputError(where + ": unknown kind '" + kind + "'");
    ent.source = e.value("source", "");
    ent.target = e.value("target", "");

    if (e.contains("relation")) {
      const auto& r = e.at("relation");
      const auto type = detail::require(r, "type", where).get<std::string>();
      if (r.contains("args")) ent.relation.args = r.at("args").get<std::vector<std::string>>();
      if (r.contains("of")) ent.relation.args = {r.at("of").get<std::string>()};
      ent.relation.n = r.value("n", 0);
      if (type == "composition") ent.relation.type = RelationType::Composition;
      else if (type == "product") ent.relation.type = RelationType::Product;
      else if (type == "power") ent.relation.type = RelationType::Power;
      else if (type == "pair_of_powers") ent.relation.type = RelationType::PairOfPowers;
      else if (type == "identity") ent.relation.type = RelationType::Identity;
      else throw InputError(where + ": unknown relation '" + type + "'");
      if (type == "identity" && ent.source.empty()) ent.source = ent.target = ent.relation.args.at(0);
    }

    if (ent.kind == EntityKind::Map) {
      if (e.contains("pairs")) ent.of_pairs = e.at("pairs").get<bool>();
      else if (!ent.source.empty()) ent.of_pairs = kind_of(ent.source).kind == EntityKind::Pair;
      else if (ent.relation.type == RelationType::PairOfPowers) ent.of_pairs = true;
      else if (!ent.relation.args.empty()) ent.of_pairs = kind_of(ent.relation.args[0]).of_pairs;
    } else if (!ent.relation.args.empty()) {
      ent.of_pairs = kind_of(ent.relation.args[0]).of_pairs;
    }

    SimplicialData d;
    if (e.contains("complex")) {
      const auto c = e.at("complex").get<std::string>();
      auto it = sc.complexes.find(c);
      if (it == sc.complexes.end()) throw InputError(where + ": unknown complex '" + c + "'");
      d.complex = it->second;
      d.subcomplex = e.value("subcomplex", "");
      if (!d.subcomplex.empty() && !d.complex->has_subcomplex(d.subcomplex))
        throw InputError(where + ": complex '" + c + "' has no subcomplex '" + d.subcomplex + "'");
    }
    if (e.contains("simplicial_map")) {
      const auto m = e.at("simplicial_map").get<std::string>();
      auto it = sc.maps.find(m);
      if (it == sc.maps.end()) throw InputError(where + ": unknown map '" + m + "'");
      d.map = it->second;
    }
    if (d.complex || d.map) sc.data.emplace(ent.name, d);
    sc.entities.push_back(std::move(ent));
    seen[sc.entities.back().name] = &sc.entities.back();
  }

  for (const auto& h : j.value("homotopies", Json::array()))
    sc.homotopies.push_back({h.at("a").get<std::string>(), h.at("b").get<std::string>(), h.value("relative", false)});
  for (const auto& a : j.value("assertions", Json::array())) {
    Assertion as;
    as.entity = a.at("entity").get<std::string>();
    as.slot = parse_slot(a.at("slot").get<std::string>());
    as.interval.lo = a.value("lo", Value{0});
    as.interval.hi = (!a.contains("hi") || a.at("hi").is_null()) ? kInfinity : a.at("hi").get<Value>();
    as.label = a.value("label", "user assertion");
    if (as.interval.lo < 0 || as.interval.hi < 0) throw std::invalid_argument("assertion bounds must be non-negative");
    sc.assertions.push_back(std::move(as));
  }
  for (const auto& r : j.value("requests", Json::array()))
    sc.requests.push_back({r.at("entity").get<std::string>(), parse_slot(r.at("slot").get<std::string>())});
  if (j.contains("options")) sc.options = options_from_json(j.at("options"));
  return sc;
}

inline Scenario load_scenario(const std::filesystem::path& path) {
  return scenario_from_json(read_json(path), path.parent_path());
}

/// One cohomology search as it ran, independent of the coefficient field.
struct SearchSummary {
  std::string entity;
  std::string slot;
  std::string side;
  Value value = 0;
  std::string rule;
  std::string relation;
  bool exhaustive = false;
  bool replayed = true;
};

struct ScenarioOutcome {
  FactGraph graph;
  std::vector<SearchSummary> searches;
  std::optional<Contradiction> contradiction;
  std::size_t passes = 0;
};

/// Builds the graph, attaches cohomology bounds, asserts user facts and
/// propagates. A contradiction at any stage stops the run and is returned.
inline ScenarioOutcome run_scenario(const Scenario& sc) {
  ScenarioOutcome out;
  for (const auto& e : sc.entities) out.graph.add(e);
  for (const auto& h : sc.homotopies) out.graph.declare_homotopy(h.a, h.b, h.relative);
  for (const auto& r : sc.requests) {
    const auto& e = out.graph.entity(r.entity);
    if (!slot_allowed(e, r.slot))
      throw std::invalid_argument("request " + to_string(r.slot) + "(" + r.entity + "): slot does not apply");
  }
  try {
    with_field(sc.options.field, [&](const auto& field) {
      auto bounds = attach_cohomology_bounds(out.graph, sc.data, field, sc.options.budget, sc.options.grades);
      for (const auto& b : bounds) {
        SearchSummary s{b.entity, to_string(b.slot), to_string(b.side), b.value, b.rule, "", false, true};
        if (b.report) {
          s.relation = b.report->relation();
          s.exhaustive = b.report->search.exhaustive;
          s.replayed = b.report->replay();
        } else {
          s.relation = to_string(b.slot) + "(" + b.entity + ") <= " + std::to_string(b.value);
        }
        out.searches.push_back(std::move(s));
      }
    });
    for (const auto& a : sc.assertions) out.graph.assert_fact(a.entity, a.slot, a.interval, a.label);
  } catch (const ContradictionError& e) {
    out.contradiction = e.contradiction();
    return out;
  }
  auto res = out.graph.propagate();
  out.passes = res.passes;
  out.contradiction = res.contradiction;
  return out;
}

inline std::string request_line(const FactGraph& g, const Request& r) {
  const auto iv = g.interval(r.entity, r.slot);
  return to_string(r.slot) + "(" + r.entity + ") ∈ [" + value_string(iv.lo) + ", " + value_string(iv.hi) + "]";
}

inline Json scenario_report_json(const Scenario& sc, const ScenarioOutcome& out) {
  Json j;
  j["field"] = sc.options.field.name();
  j["grades"] = sc.options.grades;
  j["search"] = {{"mode", to_string(sc.options.budget.mode)}, {"max_len", sc.options.budget.max_length}};
  j["status"] = out.contradiction ? "contradiction" : "ok";
  j["contradiction"] = out.contradiction ? contradiction_json(*out.contradiction) : Json(nullptr);
  Json searches = Json::array();
  for (const auto& s : out.searches)
    searches.push_back({{"entity", s.entity},
                        {"slot", s.slot},
                        {"side", s.side},
                        {"value", s.value},
                        {"rule", s.rule},
                        {"relation", s.relation},
                        {"exhaustive", s.exhaustive},
                        {"replayed", s.replayed}});
  j["searches"] = searches;
  Json requests = Json::array();
  for (const auto& r : sc.requests) {
    auto iv = out.graph.interval(r.entity, r.slot);
    Json x = {{"entity", r.entity}, {"slot", to_string(r.slot)}};
    x.update(interval_json(iv));
    requests.push_back(std::move(x));
  }
  j["requests"] = requests;
  j["facts"] = facts_json(out.graph);
  return j;
}

}  // namespace lscat
