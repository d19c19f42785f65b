#pragma once

// Command implementations for the lscat executable. Kept in a header so the
// test suite can drive them in-process with captured streams.

#include "lscat/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

namespace lscat::cli {

enum ExitCode { kOk = 0, kInvalid = 1, kContradiction = 2, kIoOrArgument = 3 };

struct CommonOptions {
  std::string field = "q";
  std::vector<int> grades;
  int max_len = 8;
  std::string search = "combo";
  bool json = false;
  bool certificates = false;

  SearchBudget budget() const {
    SearchBudget b;
    b.max_length = max_len;
    b.mode = parse_search_mode(search);
    b.check();
    return b;
  }
  std::vector<int> grade_list() const { return grades.empty() ? std::vector<int>{2} : grades; }
};

namespace detail {

inline std::vector<std::filesystem::path> expand(const std::vector<std::string>& inputs) {
  std::vector<std::filesystem::path> out;
  for (const auto& in : inputs) {
    std::filesystem::path p(in);
    if (std::filesystem::is_directory(p)) {
      std::vector<std::filesystem::path> found;
      for (const auto& e : std::filesystem::recursive_directory_iterator(p))
        if (e.is_regular_file() && e.path().extension() == ".json") found.push_back(e.path());
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

inline ComplexRegistry load_complexes(const std::vector<std::string>& files) {
  ComplexRegistry reg;
  for (const auto& f : files) {
    auto k = load_complex(f);
    reg[k->name()] = k;
  }
  return reg;
}

template <class Field>
Json bound_json(const BoundReport<Field>& r) {
  Json j;
  j["relation"] = r.relation();
  j["rule"] = r.rule;
  j["kind"] = to_string(r.kind);
  j["k"] = r.k;
  j["exhaustive"] = r.search.exhaustive;
  j["label"] = r.search.exhaustive ? "exact nil of the searched subring" : "certified lower bound on nil";
  j["search_space"] = r.search.search_space;
  j["ambient_dims"] = r.dims;
  if (!r.kernel_dims.empty()) j["kernel_dims"] = r.kernel_dims;
  if (r.search.witness) {
    const auto& w = *r.search.witness;
    Json f = Json::array();
    for (const auto& x : w.factors) f.push_back(format_element(*r.ambient, x));
    j["witness"] = {{"factors", f}, {"product", format_element(*r.ambient, w.product)}, {"replays", r.replay()}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

template <class Field>
void print_bound(std::ostream& out, const BoundReport<Field>& r) {
  out << r.relation() << "  ("
      << (r.search.exhaustive ? "exact nil of the searched subring" : "certified lower bound on nil") << "; "
      << to_string(r.kind) << ": " << r.rule << ")\n";
  if (r.search.witness) {
    const auto& w = *r.search.witness;
    out << "  witness:";
    for (const auto& x : w.factors) out << " [" << format_element(*r.ambient, x) << "]";
    out << "\n  product: " << format_element(*r.ambient, w.product) << "\n";
  }
}

template <class Field>
Json ring_json(const CohomologyRing<Field>& h) {
  const auto& a = h.algebra();
  Json j;
  j["complex"] = h.complex()->name();
  j["relative"] = h.is_relative();
  j["field"] = h.field().name();
  j["betti"] = h.betti();
  Json basis = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) basis.push_back({{"name", a.name(i)}, {"degree", a.degree(i)}});
  j["basis"] = basis;
  Json products = Json::array();
  for (std::size_t x = 0; x < a.dim(); ++x)
    for (std::size_t y = 0; y < a.dim(); ++y) {
      if (a.degree(x) == 0 || a.degree(y) == 0) continue;
      products.push_back({{"left", a.name(x)}, {"right", a.name(y)}, {"product", format_element(a, a.basis_product(x, y))}});
    }
  j["products"] = products;
  return j;
}

}  // namespace detail

inline int cmd_validate(const std::vector<std::string>& inputs, const CommonOptions& opt, std::ostream& out,
                        std::ostream& err) {
  const auto files = detail::expand(inputs);
  std::vector<std::pair<std::filesystem::path, Json>> complexes, maps, scenarios;
  for (const auto& f : files) {
    auto j = read_json(f);
    if (j.contains("map")) maps.emplace_back(f, std::move(j));
    else if (j.contains("entities")) scenarios.emplace_back(f, std::move(j));
    else complexes.emplace_back(f, std::move(j));
  }
  bool ok = true;
  Json report = Json::array();
  auto record = [&](const std::filesystem::path& f, const std::vector<std::string>& violations) {
    if (!violations.empty()) ok = false;
    if (opt.json) {
      report.push_back({{"file", f.string()}, {"ok", violations.empty()}, {"violations", violations}});
      return;
    }
    if (violations.empty()) {
      out << "ok       " << f.string() << "\n";
    } else {
      out << "invalid  " << f.string() << "\n";
      for (const auto& v : violations) out << "  - " << v << "\n";
    }
  };
  ComplexRegistry reg;
  for (const auto& [f, j] : complexes) {
    try {
      auto k = std::make_shared<const SimplicialComplex>(complex_from_json(j));
      auto r = validate_complex(*k);
      for (const auto& [sub, members] : k->subcomplexes()) r.merge(validate_subcomplex(*k, Subcomplex(sub, members)));
      record(f, r.violations);
      reg[k->name()] = k;
    } catch (const InputError& e) {
      record(f, {e.what()});
    }
  }
  for (const auto& [f, j] : maps) {
    try {
      record(f, validate_map(map_from_json(j, reg, f.stem().string())).violations);
    } catch (const InputError& e) {
      record(f, {e.what()});
    }
  }
  for (const auto& [f, j] : scenarios) {
    try {
      scenario_from_json(j, f.parent_path());
      record(f, {});
    } catch (const InputError& e) {
      record(f, {e.what()});
    }
  }
  if (opt.json) out << report.dump(2) << "\n";
  (void)err;
  return ok ? kOk : kInvalid;
}

inline int cmd_ring(const std::string& file, const std::string& pair, const CommonOptions& opt, std::ostream& out) {
  auto k = load_complex(file);
  auto report = validate_complex(*k);
  if (!report.ok()) throw InputError(report.violations.front());
  const auto sub = pair.empty() ? Subcomplex::empty() : Subcomplex::named(*k, pair);
  if (!pair.empty()) {
    auto r = validate_subcomplex(*k, sub);
    if (!r.ok()) throw InputError(r.violations.front());
  }
  return with_field(CoefficientField::parse(opt.field), [&](const auto& field) {
    auto h = build_ring(k, sub, field);
    auto j = detail::ring_json(*h);
    if (opt.json) {
      out << j.dump(2) << "\n";
      return kOk;
    }
    out << "H^*(" << k->name() << (pair.empty() ? "" : ", " + pair) << "; " << field.name() << ")\n";
    out << "betti:";
    for (auto b : h->betti()) out << " " << b;
    out << "\nbasis:";
    for (const auto& b : j["basis"]) out << " " << b["name"].template get<std::string>() << "(" << b["degree"] << ")";
    out << "\nproducts:\n";
    for (const auto& p : j["products"])
      out << "  " << p["left"].template get<std::string>() << " * " << p["right"].template get<std::string>() << " = "
          << p["product"].template get<std::string>() << "\n";
    return kOk;
  });
}

inline std::shared_ptr<const SimplicialMap> load_checked_map(const std::string& file, const ComplexRegistry& reg) {
  auto m = load_map(file, reg);
  auto report = validate_map(*m);
  if (!report.ok()) throw InputError(report.violations.front());
  return m;
}

inline int cmd_induced(const std::string& map_file, const std::vector<std::string>& complex_files,
                       const CommonOptions& opt, std::ostream& out) {
  auto reg = detail::load_complexes(complex_files);
  auto m = load_checked_map(map_file, reg);
  return with_field(CoefficientField::parse(opt.field), [&](const auto& field) {
    auto phi = induced_map(*m, field);
    const auto& from = phi.source()->algebra();
    const auto& to = phi.target()->algebra();
    Json blocks = Json::array();
    for (int k = 0; k <= std::max(from.top_degree(), to.top_degree()); ++k) {
      auto b = phi.block(k);
      Json rows = Json::array();
      for (std::size_t r = 0; r < b.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < b.cols(); ++c) row.push_back(field.to_string(b(r, c)));
        rows.push_back(row);
      }
      blocks.push_back({{"degree", k}, {"rows", b.rows()}, {"cols", b.cols()}, {"matrix", rows}});
    }
    if (opt.json) {
      out << Json{{"map", m->name()}, {"field", field.name()}, {"blocks", blocks}}.dump(2) << "\n";
      return kOk;
    }
    out << "f^* for " << m->name() << " over " << field.name() << "\n";
    for (const auto& b : blocks) {
      out << "degree " << b["degree"] << " (" << b["rows"] << "x" << b["cols"] << ")\n";
      for (const auto& row : b["matrix"]) {
        out << "  [";
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? " " : "") << row[c].template get<std::string>();
        out << "]\n";
      }
    }
    return kOk;
  });
}

/// nil(Im f^*) for a map, or for the identity of a complex/pair when no map is given.
inline int cmd_nil_image(const std::string& map_file, const std::vector<std::string>& complex_files,
                         const std::string& pair, const CommonOptions& opt, std::ostream& out) {
  auto reg = detail::load_complexes(complex_files);
  std::shared_ptr<const SimplicialMap> m;
  if (!map_file.empty()) {
    m = load_checked_map(map_file, reg);
  } else {
    if (reg.size() != 1) throw std::invalid_argument("nil-image without a map needs exactly one complex");
    auto k = reg.begin()->second;
    m = std::make_shared<const SimplicialMap>(
        SimplicialMap::identity(k, pair.empty() ? std::nullopt : std::optional<std::string>(pair)));
    auto report = validate_map(*m);
    if (!report.ok()) throw InputError(report.violations.front());
  }
  const auto budget = opt.budget();
  return with_field(CoefficientField::parse(opt.field), [&](const auto& field) {
    auto r = nil_image(induced_map(*m, field), budget);
    if (!m->is_relative()) r.invariant = "cat(f)";
    if (opt.json) out << detail::bound_json(r).dump(2) << "\n";
    else detail::print_bound(out, r);
    return kOk;
  });
}

/// zcl_n of a complex, or for a map the kernel bound nil(ker g_n^*) and the
/// pulled-back zero-divisor bound.
inline int cmd_zcl(const std::string& file, const std::string& map_file, const std::vector<std::string>& complex_files,
                   const CommonOptions& opt, std::ostream& out) {
  const auto budget = opt.budget();
  const auto grades = opt.grade_list();
  return with_field(CoefficientField::parse(opt.field), [&](const auto& field) {
    Json all = Json::array();
    auto emit = [&](const auto& r) {
      if (opt.json) all.push_back(detail::bound_json(r));
      else detail::print_bound(out, r);
    };
    if (!map_file.empty()) {
      auto reg = detail::load_complexes(complex_files);
      auto phi = induced_map(*load_checked_map(map_file, reg), field);
      for (int n : grades) {
        emit(nil_ker_g(phi, n, budget));
        emit(map_zcl(phi, n, budget));
      }
    } else {
      auto k = load_complex(file);
      auto report = validate_complex(*k);
      if (!report.ok()) throw InputError(report.violations.front());
      auto h = build_ring(k, field);
      for (int n : grades) emit(zcl(*h, n, budget));
    }
    if (opt.json) out << all.dump(2) << "\n";
    return kOk;
  });
}

inline int cmd_bounds(const std::string& file, const CommonOptions& opt, const CLI::App& sub, std::ostream& out) {
  auto sc = load_scenario(file);
  if (sub.count("--field")) sc.options.field = CoefficientField::parse(opt.field);
  if (sub.count("--grade")) sc.options.grades = opt.grades;
  if (sub.count("--max-len")) sc.options.budget.max_length = opt.max_len;
  if (sub.count("--search")) sc.options.budget.mode = parse_search_mode(opt.search);
  sc.options.budget.check();
  for (int n : sc.options.grades)
    if (n < kMinGrade || n > kMaxGrade) throw std::invalid_argument("grade " + std::to_string(n) + " outside [2, 9]");

  auto outcome = run_scenario(sc);
  if (opt.json) {
    out << scenario_report_json(sc, outcome).dump(2) << "\n";
  } else if (outcome.contradiction) {
    out << outcome.contradiction->describe() << "\n";
    if (outcome.contradiction->lower) out << print_certificate(*outcome.contradiction->lower);
    if (outcome.contradiction->upper) out << print_certificate(*outcome.contradiction->upper);
  } else {
    std::vector<Request> requests = sc.requests;
    if (requests.empty())
      for (const auto& [ref, f] : outcome.graph.facts())
        requests.push_back({outcome.graph.entity(ref.entity).name, ref.slot});
    for (const auto& r : requests) {
      out << request_line(outcome.graph, r) << "\n";
      if (!opt.certificates) continue;
      const auto f = outcome.graph.fact(r.entity, r.slot);
      if (f.lower) out << print_certificate(*f.lower);
      if (f.upper) out << print_certificate(*f.upper);
    }
  }
  return outcome.contradiction ? kContradiction : kOk;
}

/// Parses argv and dispatches; all diagnostics go to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified bounds for category-type invariants of simplicial maps"};
  app.require_subcommand(1);
  CommonOptions opt;
  auto common = [&](CLI::App* s) {
    s->add_option("--field", opt.field, "coefficient field: q, f2, f3, f5, ...");
    s->add_option("--grade", opt.grades, "grade n for zero-divisor searches (repeatable)");
    s->add_option("--max-len", opt.max_len, "longest product to search for");
    s->add_option("--search", opt.search, "search mode: basis, combo or exhaustive");
    s->add_flag("--json", opt.json, "machine-readable output");
    s->add_flag("--certificates", opt.certificates, "print derivation trees");
  };

  std::vector<std::string> files, complexes;
  std::string file, map_file, pair;

  auto* validate = app.add_subcommand("validate", "check complexes, maps and scenarios (files or directories)");
  validate->add_option("files", files, "inputs")->required();
  common(validate);

  auto* ring = app.add_subcommand("ring", "cohomology ring of a complex or pair");
  ring->add_option("complex", file, "complex file")->required();
  ring->add_option("--pair", pair, "subcomplex name");
  common(ring);

  auto* induced = app.add_subcommand("induced", "matrices of the induced map on cohomology");
  induced->add_option("map", map_file, "map file")->required();
  induced->add_option("-c,--complex", complexes, "complex files the map refers to")->required();
  common(induced);

  auto* nil = app.add_subcommand("nil-image", "nilpotency of the image of f^*");
  nil->add_option("map", map_file, "map file (omit for the identity of --complex)");
  nil->add_option("-c,--complex", complexes, "complex files")->required();
  nil->add_option("--pair", pair, "subcomplex for the identity map");
  common(nil);

  auto* zc = app.add_subcommand("zcl", "zero-divisor cup-length of a complex, or kernel bounds for a map");
  zc->add_option("file", file, "complex file");
  zc->add_option("--map", map_file, "map file");
  zc->add_option("-c,--complex", complexes, "complex files the map refers to");
  common(zc);

  auto* bounds = app.add_subcommand("bounds", "run a scenario and report intervals");
  bounds->add_option("scenario", file, "scenario file")->required();
  common(bounds);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kIoOrArgument;
  }

  try {
    if (*validate) return cmd_validate(files, opt, out, err);
    if (*ring) return cmd_ring(file, pair, opt, out);
    if (*induced) return cmd_induced(map_file, complexes, opt, out);
    if (*nil) return cmd_nil_image(map_file, complexes, pair, opt, out);
    if (*zc) {
      if (file.empty() == map_file.empty()) throw std::invalid_argument("zcl needs either a complex or --map");
      return cmd_zcl(file, map_file, complexes, opt, out);
    }
    if (*bounds) return cmd_bounds(file, opt, *bounds, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoOrArgument;
  } catch (const InputError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const ContradictionError& e) {
    err << e.what() << "\n";
    return kContradiction;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
    return kIoOrArgument;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoOrArgument;
  }
  return kIoOrArgument;
}

}  // namespace lscat::cli
