#pragma once

// Interval facts about category-type invariants of spaces, pairs and maps,
// narrowed to a fixpoint by a table of inequalities. Every finite end of an
// interval carries a certificate: a derivation tree whose leaves are user
// facts, cohomology witnesses or classical bounds.

#include "lscat/bounds.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lscat {

using Value = std::int64_t;
inline constexpr Value kInfinity = std::numeric_limits<Value>::max();

inline Value sat_add(Value a, Value b) {
  if (a == kInfinity || b == kInfinity) return kInfinity;
  return a + b;
}

inline Value sat_mul(Value n, Value a) {
  if (a == kInfinity) return n == 0 ? 0 : kInfinity;
  return n * a;
}

inline std::string value_string(Value v) { return v == kInfinity ? "inf" : std::to_string(v); }

struct Interval {
  Value lo = 0;
  Value hi = kInfinity;

  static Interval exactly(Value v) { return {v, v}; }
  static Interval at_least(Value v) { return {v, kInfinity}; }
  bool empty() const { return lo > hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

inline std::string to_string(const Interval& i) { return "[" + value_string(i.lo) + ", " + value_string(i.hi) + "]"; }

// ---------------------------------------------------------------- slots

enum class SlotName { Cat, Relcat, Qscat, Srelcat, CatPair, CatComplement, TC, WTC, Wcat };

inline constexpr int kMinGrade = 2;
inline constexpr int kMaxGrade = 9;

struct Slot {
  SlotName name = SlotName::Cat;
  int n = 0;  // grade for TC_n / wTC_n, 0 otherwise

  static Slot cat() { return {SlotName::Cat, 0}; }
  static Slot relcat() { return {SlotName::Relcat, 0}; }
  static Slot qscat() { return {SlotName::Qscat, 0}; }
  static Slot srelcat() { return {SlotName::Srelcat, 0}; }
  static Slot cat_pair() { return {SlotName::CatPair, 0}; }
  static Slot cat_complement() { return {SlotName::CatComplement, 0}; }
  static Slot wcat() { return {SlotName::Wcat, 0}; }
  static Slot tc(int n) { return {SlotName::TC, n}; }
  static Slot wtc(int n) { return {SlotName::WTC, n}; }

  friend auto operator<=>(const Slot&, const Slot&) = default;
};

inline std::string to_string(const Slot& s) {
  switch (s.name) {
    case SlotName::Cat: return "cat";
    case SlotName::Relcat: return "relcat";
    case SlotName::Qscat: return "qscat";
    case SlotName::Srelcat: return "srelcat";
    case SlotName::CatPair: return "catPair";
    case SlotName::CatComplement: return "catComplement";
    case SlotName::TC: return "TC_" + std::to_string(s.n);
    case SlotName::WTC: return "wTC_" + std::to_string(s.n);
    case SlotName::Wcat: return "wcat";
  }
  return "?";
}

inline Slot parse_slot(const std::string& s) {
  static const std::map<std::string, Slot> plain = {
      {"cat", Slot::cat()},         {"relcat", Slot::relcat()},
      {"qscat", Slot::qscat()},     {"srelcat", Slot::srelcat()},
      {"catPair", Slot::cat_pair()}, {"catComplement", Slot::cat_complement()},
      {"wcat", Slot::wcat()}};
  if (auto it = plain.find(s); it != plain.end()) return it->second;
  auto graded = [&](const std::string& prefix, SlotName name) -> std::optional<Slot> {
    if (s.rfind(prefix, 0) != 0 || s.size() == prefix.size()) return std::nullopt;
    const auto digits = s.substr(prefix.size());
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }) || digits.size() > 2)
      return std::nullopt;
    const int n = std::stoi(digits);
    if (n < kMinGrade || n > kMaxGrade)
      throw std::invalid_argument("slot " + s + ": grade must lie in [" + std::to_string(kMinGrade) + ", " +
                                  std::to_string(kMaxGrade) + "]");
    return Slot{name, n};
  };
  if (auto t = graded("TC_", SlotName::TC)) return *t;
  if (auto t = graded("wTC_", SlotName::WTC)) return *t;
  throw std::invalid_argument("unknown invariant slot '" + s + "'");
}

// ---------------------------------------------------------------- entities

enum class EntityKind { Space, Pair, Map };

inline std::string to_string(EntityKind k) {
  switch (k) {
    case EntityKind::Space: return "space";
    case EntityKind::Pair: return "pair";
    case EntityKind::Map: return "map";
  }
  return "?";
}

enum class RelationType { None, Composition, Product, Power, PairOfPowers, Identity };

struct Relation {
  RelationType type = RelationType::None;
  std::vector<std::string> args;  // composition: {g, f} for g∘f
  int n = 0;
};

struct Entity {
  std::string name;
  EntityKind kind = EntityKind::Space;
  bool of_pairs = false;  // maps only: a map of pairs rather than of spaces
  std::string source;     // maps only, optional
  std::string target;
  Relation relation;
};

inline bool slot_allowed(const Entity& e, const Slot& s) {
  if ((s.name == SlotName::TC || s.name == SlotName::WTC) && (s.n < kMinGrade || s.n > kMaxGrade)) return false;
  switch (e.kind) {
    case EntityKind::Space:
      return s.name == SlotName::Cat || s.name == SlotName::TC || s.name == SlotName::WTC || s.name == SlotName::Wcat;
    case EntityKind::Pair:
      return s.name == SlotName::CatPair || s.name == SlotName::Relcat || s.name == SlotName::Qscat ||
             s.name == SlotName::Srelcat || s.name == SlotName::CatComplement;
    case EntityKind::Map:
      if (e.of_pairs) return s.name == SlotName::Relcat || s.name == SlotName::Qscat || s.name == SlotName::Srelcat;
      return s.name == SlotName::Cat || s.name == SlotName::TC || s.name == SlotName::WTC;
  }
  return false;
}

// ---------------------------------------------------------------- certificates

enum class Side { Lower, Upper };
inline std::string to_string(Side s) { return s == Side::Lower ? "lower" : "upper"; }

/// How a certificate's value follows from its premises' values.
enum class CertOp { Leaf, Copy, Sum, Diff, Scale, CeilDiv, AddOne, SubOne };

inline std::string to_string(CertOp op) {
  switch (op) {
    case CertOp::Leaf: return "leaf";
    case CertOp::Copy: return "copy";
    case CertOp::Sum: return "sum";
    case CertOp::Diff: return "diff";
    case CertOp::Scale: return "scale";
    case CertOp::CeilDiv: return "ceildiv";
    case CertOp::AddOne: return "add1";
    case CertOp::SubOne: return "sub1";
  }
  return "?";
}

inline CertOp parse_cert_op(const std::string& s) {
  for (auto op : {CertOp::Leaf, CertOp::Copy, CertOp::Sum, CertOp::Diff, CertOp::Scale, CertOp::CeilDiv, CertOp::AddOne,
                  CertOp::SubOne})
    if (to_string(op) == s) return op;
  throw std::invalid_argument("unknown certificate op '" + s + "'");
}

inline std::optional<Value> apply_cert_op(CertOp op, Value factor, const std::vector<Value>& p) {
  auto need = [&](std::size_t k) { return p.size() == k; };
  switch (op) {
    case CertOp::Leaf: return std::nullopt;
    case CertOp::Copy: return need(1) ? std::optional<Value>(p[0]) : std::nullopt;
    case CertOp::Sum: return need(2) ? std::optional<Value>(sat_add(p[0], p[1])) : std::nullopt;
    case CertOp::Diff:
      if (!need(2) || p[0] == kInfinity || p[1] == kInfinity) return std::nullopt;
      return p[0] - p[1];
    case CertOp::Scale: return need(1) ? std::optional<Value>(sat_mul(factor, p[0])) : std::nullopt;
    case CertOp::CeilDiv:
      if (!need(1) || factor <= 0 || p[0] == kInfinity) return std::nullopt;
      return (p[0] + factor - 1) / factor;
    case CertOp::AddOne: return need(1) ? std::optional<Value>(sat_add(p[0], 1)) : std::nullopt;
    case CertOp::SubOne:
      if (!need(1) || p[0] == kInfinity) return std::nullopt;
      return p[0] - 1;
  }
  return std::nullopt;
}

struct WitnessRecord {
  int length = 0;
  std::vector<std::string> factors;
  std::string product;
  std::string ring;
  bool exhaustive = false;
  std::function<bool()> replay;  // re-multiplies in the live ring; empty after deserialization
};

struct Certificate;
using CertPtr = std::shared_ptr<const Certificate>;

struct Certificate {
  std::string entity;
  std::string slot;
  Side side = Side::Lower;
  Value value = 0;
  std::string rule;       // R1..R21, ID, HTPY, USER, or the name of a cohomology bound
  RuleKind kind = RuleKind::Rule;
  std::string statement;  // the inequality applied, in plain notation
  CertOp op = CertOp::Leaf;
  Value factor = 0;
  std::string label;      // user-supplied source label for USER-FACT leaves
  std::optional<WitnessRecord> witness;
  std::vector<CertPtr> premises;

  std::string conclusion() const {
    return slot + "(" + entity + ") " + (side == Side::Lower ? ">= " : "<= ") + value_string(value);
  }
};

/// Re-derives every node of the tree. Leaves are accepted when they are user
/// facts, classical constants, or carry a witness of the stated length that
/// replays (when a live ring is attached).
inline bool replay(const Certificate& c) {
  if (c.op == CertOp::Leaf) {
    if (!c.premises.empty()) return false;
    if (c.witness) {
      if (c.side != Side::Lower || c.witness->length != c.value) return false;
      if (c.value > 0 && c.witness->product.empty()) return false;
      return !c.witness->replay || c.witness->replay();
    }
    if (c.kind == RuleKind::UserFact) return true;
    if (c.kind == RuleKind::Classical) return c.factor == c.value;
    // a zero-length cohomology bound carries no witness
    return c.kind == RuleKind::Cohomology && c.side == Side::Lower && c.value == 0;
  }
  std::vector<Value> values;
  for (const auto& p : c.premises) {
    if (!p || !replay(*p)) return false;
    values.push_back(p->value);
  }
  const auto v = apply_cert_op(c.op, c.factor, values);
  return v && *v == c.value;
}

inline void print_certificate(const Certificate& c, std::string& out, int depth = 0) {
  out += std::string(static_cast<std::size_t>(depth) * 2, ' ');
  out += c.conclusion() + "  [" + c.rule + ", " + to_string(c.kind) + "]";
  if (!c.statement.empty()) out += " " + c.statement;
  if (!c.label.empty()) out += " (" + c.label + ")";
  if (c.witness) {
    out += " witness:";
    for (const auto& f : c.witness->factors) out += " " + f;
    if (c.witness->exhaustive) out += " (exhaustive)";
  }
  out += "\n";
  for (const auto& p : c.premises) print_certificate(*p, out, depth + 1);
}

inline std::string print_certificate(const Certificate& c) {
  std::string out;
  print_certificate(c, out);
  return out;
}

/// Flattens the set of rule ids used anywhere in a tree.
inline void collect_rules(const Certificate& c, std::vector<std::string>& out) {
  if (std::find(out.begin(), out.end(), c.rule) == out.end()) out.push_back(c.rule);
  for (const auto& p : c.premises) collect_rules(*p, out);
}

struct Fact {
  Interval interval;
  CertPtr lower;  // null while lo is the default 0
  CertPtr upper;  // null while hi is the default infinity
};

struct Contradiction {
  std::string entity;
  std::string slot;
  CertPtr lower;
  CertPtr upper;

  std::string describe() const {
    std::string s = "contradiction on " + slot + "(" + entity + "): ";
    s += (lower ? lower->conclusion() : "lower bound 0");
    s += " vs ";
    s += (upper ? upper->conclusion() : "upper bound inf");
    return s;
  }
};

class ContradictionError : public std::runtime_error {
public:
  explicit ContradictionError(Contradiction c) : std::runtime_error(c.describe()), contradiction_(std::move(c)) {}
  const Contradiction& contradiction() const { return contradiction_; }

private:
  Contradiction contradiction_;
};

class NotFoundError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

// ---------------------------------------------------------------- constraints

struct SlotRef {
  std::size_t entity = 0;
  Slot slot;
  friend auto operator<=>(const SlotRef&, const SlotRef&) = default;
};

enum class ConstraintOp {
  LessEq,  // lhs <= rhs[0]
  Sum,     // lhs <= rhs[0] + rhs[1]
  Scale,   // lhs <= factor * rhs[0]
  PlusOne  // lhs <= rhs[0] + 1
};

struct Constraint {
  std::string rule;
  RuleKind kind = RuleKind::Rule;
  std::string statement;
  ConstraintOp op = ConstraintOp::LessEq;
  SlotRef lhs;
  std::vector<SlotRef> rhs;
  Value factor = 1;
};

struct PropagateOptions {
  std::optional<std::uint64_t> shuffle_seed;  // permutes the rule order
  std::size_t max_passes = 100000;
};

struct PropagateResult {
  std::size_t passes = 0;
  std::size_t narrowings = 0;
  std::optional<Contradiction> contradiction;
  bool ok() const { return !contradiction; }
};

class FactGraph {
public:
  // ---- construction

  std::size_t add(Entity e) {
    if (e.name.empty()) throw std::invalid_argument("entity needs a name");
    if (index_.count(e.name)) throw std::invalid_argument("duplicate entity '" + e.name + "'");
    for (const auto& a : e.relation.args)
      if (!index_.count(a)) throw std::invalid_argument("entity '" + e.name + "': unknown relation argument '" + a + "'");
    check_relation(e);
    if (e.kind == EntityKind::Map) {
      for (const auto* end : {&e.source, &e.target}) {
        if (end->empty()) continue;
        const auto& other = entity(*end);
        const EntityKind want = e.of_pairs ? EntityKind::Pair : EntityKind::Space;
        if (other.kind != want)
          throw std::invalid_argument("map '" + e.name + "': '" + *end + "' must be a " + to_string(want));
      }
    } else if (!e.source.empty() || !e.target.empty()) {
      throw std::invalid_argument("entity '" + e.name + "': only maps have a source and target");
    }
    index_.emplace(e.name, entities_.size());
    entities_.push_back(std::move(e));
    return entities_.size() - 1;
  }

  std::size_t add_space(const std::string& name) { return add({name, EntityKind::Space, false, "", "", {}}); }
  std::size_t add_pair(const std::string& name) { return add({name, EntityKind::Pair, false, "", "", {}}); }
  std::size_t add_map(const std::string& name, const std::string& source, const std::string& target, bool of_pairs) {
    return add({name, EntityKind::Map, of_pairs, source, target, {}});
  }
  std::size_t add_identity(const std::string& name, const std::string& of) {
    const auto& x = entity(of);
    const bool pairs = x.kind == EntityKind::Pair;
    return add({name, EntityKind::Map, pairs, of, of, {RelationType::Identity, {of}, 0}});
  }
  std::size_t add_composition(const std::string& name, const std::string& g, const std::string& f) {
    const auto& ge = entity(g);
    const auto& fe = entity(f);
    return add({name, EntityKind::Map, ge.of_pairs, fe.source, ge.target, {RelationType::Composition, {g, f}, 0}});
  }
  std::size_t add_product(const std::string& name, const std::string& a, const std::string& b) {
    const auto& ae = entity(a);
    return add({name, ae.kind, ae.of_pairs, "", "", {RelationType::Product, {a, b}, 0}});
  }
  std::size_t add_power(const std::string& name, const std::string& a, int n) {
    const auto& ae = entity(a);
    return add({name, ae.kind, ae.of_pairs, "", "", {RelationType::Power, {a}, n}});
  }
  std::size_t add_pair_of_powers(const std::string& name, const std::string& f, int n, const std::string& source = "",
                                 const std::string& target = "") {
    return add({name, EntityKind::Map, true, source, target, {RelationType::PairOfPowers, {f}, n}});
  }

  void declare_homotopy(const std::string& a, const std::string& b, bool relative) {
    const auto& ea = entity(a);
    const auto& eb = entity(b);
    if (ea.kind != EntityKind::Map || eb.kind != EntityKind::Map || ea.of_pairs != eb.of_pairs)
      throw std::invalid_argument("homotopy " + a + " ~ " + b + ": both must be maps of the same kind");
    homotopies_.push_back({index_.at(a), index_.at(b), relative});
  }

  // ---- access

  bool has(const std::string& name) const { return index_.count(name) != 0; }
  std::size_t index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw NotFoundError("unknown entity '" + name + "'");
    return it->second;
  }
  const Entity& entity(const std::string& name) const { return entities_[index_of(name)]; }
  const Entity& entity(std::size_t i) const { return entities_.at(i); }
  const std::vector<Entity>& entities() const { return entities_; }

  Fact fact(const std::string& name, const Slot& s) const { return fact({index_of(name), s}); }
  Fact fact(const SlotRef& r) const {
    auto it = facts_.find(r);
    return it == facts_.end() ? Fact{} : it->second;
  }
  Interval interval(const std::string& name, const Slot& s) const { return fact(name, s).interval; }

  /// Narrowed facts in (entity insertion order, slot order).
  std::vector<std::pair<SlotRef, Fact>> facts() const { return {facts_.begin(), facts_.end()}; }

  /// The derivation of the stored interval; `side` picks the end.
  CertPtr certificate_of(const std::string& name, const Slot& s, Side side) const {
    const auto f = fact(name, s);
    auto c = side == Side::Lower ? f.lower : f.upper;
    if (!c) throw NotFoundError("no " + to_string(side) + " bound recorded for " + to_string(s) + "(" + name + ")");
    return c;
  }

  // ---- facts

  /// Intersects the stored interval with `iv`; throws ContradictionError when
  /// the result is empty.
  void assert_fact(const std::string& name, const Slot& s, Interval iv, const std::string& label) {
    const SlotRef r{index_of(name), s};
    check_slot(r);
    if (iv.lo == kInfinity) throw std::invalid_argument("lower bounds must be finite");
    auto make = [&](Side side, Value v) {
      auto c = std::make_shared<Certificate>();
      c->entity = name;
      c->slot = to_string(s);
      c->side = side;
      c->value = v;
      c->rule = "USER";
      c->kind = RuleKind::UserFact;
      c->label = label;
      return CertPtr(c);
    };
    if (iv.empty()) throw ContradictionError({name, to_string(s), make(Side::Lower, iv.lo), make(Side::Upper, iv.hi)});
    if (iv.lo > 0) raise_or_throw(r, Side::Lower, iv.lo, make(Side::Lower, iv.lo));
    if (iv.hi != kInfinity) raise_or_throw(r, Side::Upper, iv.hi, make(Side::Upper, iv.hi));
  }

  /// Installs an externally certified bound (cohomology, classical rules).
  void install(const std::string& name, const Slot& s, Side side, CertPtr cert) {
    const SlotRef r{index_of(name), s};
    check_slot(r);
    const Value v = cert->value;
    raise_or_throw(r, side, v, std::move(cert));
  }

  // ---- rules

  std::vector<Constraint> constraints() const {
    std::vector<Constraint> out;
    for (std::size_t i = 0; i < entities_.size(); ++i) entity_rules(i, out);
    for (const auto& h : homotopies_) homotopy_rules(h, out);
    return out;
  }

  PropagateResult propagate(const PropagateOptions& options = {}) {
    auto rules = constraints();
    if (options.shuffle_seed) {
      std::mt19937_64 rng(*options.shuffle_seed);
      std::shuffle(rules.begin(), rules.end(), rng);
    }
    PropagateResult result;
    bool changed = true;
    while (changed) {
      if (result.passes >= options.max_passes) throw std::logic_error("propagate: pass limit exceeded");
      ++result.passes;
      changed = false;
      for (const auto& c : rules) {
        std::size_t n = 0;
        if (auto bad = apply(c, n)) {
          result.contradiction = std::move(bad);
          result.narrowings += n;
          return result;
        }
        result.narrowings += n;
        if (n) changed = true;
      }
    }
    return result;
  }

  /// Checks every stored end against its certificate and replays the trees.
  bool verify() const {
    for (const auto& [r, f] : facts_) {
      if (f.interval.empty()) return false;
      if (f.lower && (f.lower->value != f.interval.lo || !replay(*f.lower))) return false;
      if (f.upper && (f.upper->value != f.interval.hi || !replay(*f.upper))) return false;
      if (!f.lower && f.interval.lo != 0) return false;
      if (!f.upper && f.interval.hi != kInfinity) return false;
    }
    return true;
  }

private:
  struct Homotopy {
    std::size_t a, b;
    bool relative;
  };

  void check_slot(const SlotRef& r) const {
    const auto& e = entities_.at(r.entity);
    if (!slot_allowed(e, r.slot))
      throw std::invalid_argument("slot " + to_string(r.slot) + " does not apply to " + to_string(e.kind) + " '" +
                                  e.name + "'");
  }

  void check_relation(const Entity& e) const {
    const auto& rel = e.relation;
    auto arg = [&](std::size_t i) -> const Entity& { return entities_[index_.at(rel.args.at(i))]; };
    auto fail = [&](const std::string& why) { throw std::invalid_argument("entity '" + e.name + "': " + why); };
    switch (rel.type) {
      case RelationType::None: break;
      case RelationType::Composition:
        if (rel.args.size() != 2) fail("composition takes two maps");
        for (std::size_t i = 0; i < 2; ++i)
          if (arg(i).kind != EntityKind::Map || arg(i).of_pairs != e.of_pairs || e.kind != EntityKind::Map)
            fail("composition arguments must be maps of the same kind as the result");
        break;
      case RelationType::Product:
        if (rel.args.size() != 2) fail("product takes two arguments");
        for (std::size_t i = 0; i < 2; ++i)
          if (arg(i).kind != e.kind || arg(i).of_pairs != e.of_pairs) fail("product arguments must match its kind");
        break;
      case RelationType::Power:
        if (rel.args.size() != 1) fail("power takes one argument");
        if (rel.n < 2) fail("power exponent must be at least 2");
        if (arg(0).kind != e.kind || arg(0).of_pairs != e.of_pairs) fail("power argument must match its kind");
        break;
      case RelationType::PairOfPowers:
        if (rel.args.size() != 1) fail("pair_of_powers takes one argument");
        if (rel.n < kMinGrade || rel.n > kMaxGrade) fail("pair_of_powers grade must lie in [2, 9]");
        if (e.kind != EntityKind::Map || !e.of_pairs) fail("pair_of_powers is a map of pairs");
        if (arg(0).kind == EntityKind::Pair || (arg(0).kind == EntityKind::Map && arg(0).of_pairs))
          fail("pair_of_powers needs a space or a map of spaces");
        break;
      case RelationType::Identity:
        if (rel.args.size() != 1) fail("identity takes one argument");
        if (e.kind != EntityKind::Map) fail("identity is a map");
        if (arg(0).kind == EntityKind::Map) fail("identity of a space or pair");
        if (e.of_pairs != (arg(0).kind == EntityKind::Pair)) fail("identity kind does not match its argument");
        break;
    }
  }

  std::optional<std::size_t> find_power(const std::string& of, int n, EntityKind kind) const {
    for (std::size_t i = 0; i < entities_.size(); ++i) {
      const auto& e = entities_[i];
      if (e.kind == kind && e.relation.type == RelationType::Power && e.relation.n == n && e.relation.args[0] == of)
        return i;
    }
    return std::nullopt;
  }

  static void leq(std::vector<Constraint>& out, std::string rule, RuleKind kind, std::string statement, SlotRef lhs,
                  SlotRef rhs) {
    out.push_back({std::move(rule), kind, std::move(statement), ConstraintOp::LessEq, lhs, {rhs}, 1});
  }

  void entity_rules(std::size_t i, std::vector<Constraint>& out) const {
    const auto& e = entities_[i];
    const auto& rel = e.relation;
    auto at = [&](const std::string& name) { return index_.at(name); };
    auto self = [&](Slot s) { return SlotRef{i, s}; };
    const RuleKind R = RuleKind::Rule;

    auto graded_chain = [&](SlotName name) {
      for (int n = kMinGrade; n < kMaxGrade; ++n)
        leq(out, "R12", R, "TC_n <= TC_{n+1}", self({name, n}), self({name, n + 1}));
    };

    if (e.kind == EntityKind::Space) {
      graded_chain(SlotName::TC);
      for (int n = kMinGrade; n <= kMaxGrade; ++n) {
        if (auto p = find_power(e.name, n, EntityKind::Space)) {
          leq(out, "R16", R, "TC_n(X) <= cat(X^n)", self(Slot::tc(n)), {*p, Slot::cat()});
          leq(out, "R20", R, "wTC_n(X) <= wcat(X^n)", self(Slot::wtc(n)), {*p, Slot::wcat()});
        }
      }
      if (rel.type == RelationType::Product)
        out.push_back({"R19", RuleKind::Classical, "cat(X x Y) <= cat(X) + cat(Y)", ConstraintOp::Sum, self(Slot::cat()),
                       {{at(rel.args[0]), Slot::cat()}, {at(rel.args[1]), Slot::cat()}}, 1});
      if (rel.type == RelationType::Power)
        out.push_back({"R19", RuleKind::Classical, "cat(X^n) <= n cat(X)", ConstraintOp::Scale, self(Slot::cat()),
                       {{at(rel.args[0]), Slot::cat()}}, rel.n});
      return;
    }

    if (e.kind == EntityKind::Pair) {
      leq(out, "ID", RuleKind::Convention, "relcat(id) = cat(X, A)", self(Slot::relcat()), self(Slot::cat_pair()));
      leq(out, "ID", RuleKind::Convention, "relcat(id) = cat(X, A)", self(Slot::cat_pair()), self(Slot::relcat()));
      leq(out, "R10", R, "qscat <= srelcat", self(Slot::qscat()), self(Slot::srelcat()));
      out.push_back({"R5", R, "cat(X, A) <= cat(X - A) + 1", ConstraintOp::PlusOne, self(Slot::cat_pair()),
                     {self(Slot::cat_complement())}, 1});
      return;
    }

    // maps
    if (e.of_pairs) {
      leq(out, "R10", R, "qscat(f) <= srelcat(f)", self(Slot::qscat()), self(Slot::srelcat()));
      for (const auto* end : {&e.source, &e.target}) {
        if (end->empty()) continue;
        leq(out, "R2", R, "relcat(f) <= min(cat(X, A), cat(Y, B))", self(Slot::relcat()), {at(*end), Slot::cat_pair()});
        leq(out, "R7", R, "srelcat(f) <= min(srelcat(B, C), srelcat(X, A))", self(Slot::srelcat()),
            {at(*end), Slot::srelcat()});
      }
      struct Triple {
        const char* comp;
        const char* prod;
        Slot slot;
      };
      const Triple triples[] = {{"R1", "R3", Slot::relcat()}, {"R4", "R6", Slot::qscat()}, {"R8", "R9", Slot::srelcat()}};
      for (const auto& t : triples) {
        const auto name = to_string(t.slot);
        if (rel.type == RelationType::Composition)
          for (const auto& a : rel.args)
            leq(out, t.comp, R, name + "(g o f) <= min(" + name + "(f), " + name + "(g))", self(t.slot), {at(a), t.slot});
        if (rel.type == RelationType::Product)
          out.push_back({t.prod, R, name + "(f x g) <= " + name + "(f) + " + name + "(g)", ConstraintOp::Sum, self(t.slot),
                         {{at(rel.args[0]), t.slot}, {at(rel.args[1]), t.slot}}, 1});
        if (rel.type == RelationType::Power)
          out.push_back({t.prod, R, name + "(f^n) <= n " + name + "(f)", ConstraintOp::Scale, self(t.slot),
                         {{at(rel.args[0]), t.slot}}, rel.n});
      }
      if (rel.type == RelationType::PairOfPowers) {
        const SlotRef tc{at(rel.args[0]), Slot::tc(rel.n)};
        leq(out, "R11", R, "TC_n(f) = qscat(fbar^n)", tc, self(Slot::qscat()));
        leq(out, "R11", R, "TC_n(f) = qscat(fbar^n)", self(Slot::qscat()), tc);
      }
      if (rel.type == RelationType::Identity) {
        const auto x = at(rel.args[0]);
        for (Slot s : {Slot::relcat(), Slot::qscat(), Slot::srelcat()}) {
          leq(out, "ID", RuleKind::Convention, to_string(s) + "(id) = " + to_string(s) + "(X, A)", self(s), {x, s});
          leq(out, "ID", RuleKind::Convention, to_string(s) + "(id) = " + to_string(s) + "(X, A)", {x, s}, self(s));
        }
      }
      return;
    }

    if (rel.type == RelationType::Identity) {
      const auto x = at(rel.args[0]);
      std::vector<Slot> same = {Slot::cat()};
      for (int n = kMinGrade; n <= kMaxGrade; ++n) {
        same.push_back(Slot::tc(n));
        same.push_back(Slot::wtc(n));
      }
      for (Slot s : same) {
        leq(out, "ID", RuleKind::Convention, to_string(s) + "(id_X) = " + to_string(s) + "(X)", self(s), {x, s});
        leq(out, "ID", RuleKind::Convention, to_string(s) + "(id_X) = " + to_string(s) + "(X)", {x, s}, self(s));
      }
    }
    graded_chain(SlotName::TC);
    for (int n = kMinGrade; n <= kMaxGrade; ++n) {
      out.push_back(
          {"R13", R, "TC_n(f) <= n cat(f)", ConstraintOp::Scale, self(Slot::tc(n)), {self(Slot::cat())}, n});
      if (auto p = find_power(e.name, n, EntityKind::Map))
        leq(out, "R13", R, "TC_n(f) <= cat(f^n)", self(Slot::tc(n)), {*p, Slot::cat()});
      if (!e.target.empty())
        if (auto p = find_power(e.target, n, EntityKind::Space))
          leq(out, "R20", R, "wTC_n(f) <= wcat(Y^n)", self(Slot::wtc(n)), {*p, Slot::wcat()});
    }
    for (const auto* end : {&e.source, &e.target}) {
      if (end->empty()) continue;
      const auto x = at(*end);
      leq(out, "R21", R, "cat(f) <= min(cat(X), cat(Y))", self(Slot::cat()), {x, Slot::cat()});
      for (int n = kMinGrade; n <= kMaxGrade; ++n) {
        leq(out, "R14", R, "TC_n(f) <= min(TC_n(X), TC_n(Y))", self(Slot::tc(n)), {x, Slot::tc(n)});
        out.push_back({"R15", R, "TC_n(f) <= min(n cat(X), n cat(Y))", ConstraintOp::Scale, self(Slot::tc(n)),
                       {{x, Slot::cat()}}, n});
      }
    }
    if (rel.type == RelationType::Composition)
      for (const auto& a : rel.args)
        leq(out, "R17", R, "cat(g o f) <= min(cat(f), cat(g))", self(Slot::cat()), {at(a), Slot::cat()});
    if (rel.type == RelationType::Product)
      out.push_back({"R17", R, "cat(f x g) <= cat(f) + cat(g)", ConstraintOp::Sum, self(Slot::cat()),
                     {{at(rel.args[0]), Slot::cat()}, {at(rel.args[1]), Slot::cat()}}, 1});
    if (rel.type == RelationType::Power)
      out.push_back({"R17", R, "cat(f^n) <= n cat(f)", ConstraintOp::Scale, self(Slot::cat()),
                     {{at(rel.args[0]), Slot::cat()}}, rel.n});
  }

  void homotopy_rules(const Homotopy& h, std::vector<Constraint>& out) const {
    const auto& e = entities_[h.a];
    std::vector<Slot> slots;
    if (e.of_pairs) {
      slots = {Slot::relcat(), Slot::qscat()};
      if (h.relative) slots.push_back(Slot::srelcat());
    } else {
      slots = {Slot::cat()};
      for (int n = kMinGrade; n <= kMaxGrade; ++n) slots.push_back(Slot::tc(n));
    }
    const std::string statement = h.relative ? "invariant under relative homotopy" : "invariant under homotopy";
    for (Slot s : slots) {
      leq(out, "HTPY", RuleKind::Rule, statement, {h.a, s}, {h.b, s});
      leq(out, "HTPY", RuleKind::Rule, statement, {h.b, s}, {h.a, s});
    }
  }

  CertPtr derive(const Constraint& c, const SlotRef& at, Side side, Value value, CertOp op, Value factor,
                 std::vector<CertPtr> premises) const {
    auto cert = std::make_shared<Certificate>();
    cert->entity = entities_[at.entity].name;
    cert->slot = to_string(at.slot);
    cert->side = side;
    cert->value = value;
    cert->rule = c.rule;
    cert->kind = c.kind;
    cert->statement = c.statement;
    cert->op = op;
    cert->factor = factor;
    cert->premises = std::move(premises);
    return cert;
  }

  /// Narrows one end; returns a contradiction instead of storing an empty interval.
  std::optional<Contradiction> narrow(const SlotRef& r, Side side, Value v, CertPtr cert, std::size_t& count) {
    auto it = facts_.find(r);
    Fact f = it == facts_.end() ? Fact{} : it->second;
    if (side == Side::Lower) {
      if (v <= f.interval.lo) return std::nullopt;
      if (v > f.interval.hi) return Contradiction{entities_[r.entity].name, to_string(r.slot), cert, f.upper};
      f.interval.lo = v;
      f.lower = std::move(cert);
    } else {
      if (v >= f.interval.hi) return std::nullopt;
      if (v < f.interval.lo) return Contradiction{entities_[r.entity].name, to_string(r.slot), f.lower, cert};
      f.interval.hi = v;
      f.upper = std::move(cert);
    }
    facts_[r] = std::move(f);
    ++count;
    return std::nullopt;
  }

  void raise_or_throw(const SlotRef& r, Side side, Value v, CertPtr cert) {
    std::size_t n = 0;
    if (auto bad = narrow(r, side, v, std::move(cert), n)) throw ContradictionError(std::move(*bad));
  }

  std::optional<Contradiction> apply(const Constraint& c, std::size_t& count) {
    const Fact lhs = fact(c.lhs);
    std::vector<Fact> rhs;
    for (const auto& r : c.rhs) rhs.push_back(fact(r));

    // upper bound of the left side from the right side
    switch (c.op) {
      case ConstraintOp::LessEq:
        if (rhs[0].interval.hi < lhs.interval.hi)
          if (auto bad = narrow(c.lhs, Side::Upper, rhs[0].interval.hi,
                                derive(c, c.lhs, Side::Upper, rhs[0].interval.hi, CertOp::Copy, 0, {rhs[0].upper}), count))
            return bad;
        break;
      case ConstraintOp::Sum: {
        const Value v = sat_add(rhs[0].interval.hi, rhs[1].interval.hi);
        if (v < lhs.interval.hi)
          if (auto bad = narrow(c.lhs, Side::Upper, v,
                                derive(c, c.lhs, Side::Upper, v, CertOp::Sum, 0, {rhs[0].upper, rhs[1].upper}), count))
            return bad;
        break;
      }
      case ConstraintOp::Scale: {
        const Value v = sat_mul(c.factor, rhs[0].interval.hi);
        if (v < lhs.interval.hi)
          if (auto bad = narrow(c.lhs, Side::Upper, v,
                                derive(c, c.lhs, Side::Upper, v, CertOp::Scale, c.factor, {rhs[0].upper}), count))
            return bad;
        break;
      }
      case ConstraintOp::PlusOne: {
        const Value v = sat_add(rhs[0].interval.hi, 1);
        if (v < lhs.interval.hi)
          if (auto bad = narrow(c.lhs, Side::Upper, v,
                                derive(c, c.lhs, Side::Upper, v, CertOp::AddOne, 0, {rhs[0].upper}), count))
            return bad;
        break;
      }
    }

    // lower bounds of the right side from the left side
    const Fact l = fact(c.lhs);
    if (l.interval.lo == 0) return std::nullopt;
    switch (c.op) {
      case ConstraintOp::LessEq:
        return narrow(c.rhs[0], Side::Lower, l.interval.lo,
                      derive(c, c.rhs[0], Side::Lower, l.interval.lo, CertOp::Copy, 0, {l.lower}), count);
      case ConstraintOp::Sum:
        for (std::size_t k = 0; k < 2; ++k) {
          const Fact other = fact(c.rhs[1 - k]);
          if (other.interval.hi == kInfinity || l.interval.lo <= other.interval.hi) continue;
          const Value v = l.interval.lo - other.interval.hi;
          if (auto bad = narrow(c.rhs[k], Side::Lower, v,
                                derive(c, c.rhs[k], Side::Lower, v, CertOp::Diff, 0, {l.lower, other.upper}), count))
            return bad;
        }
        return std::nullopt;
      case ConstraintOp::Scale: {
        if (c.factor <= 0) return std::nullopt;
        const Value v = (l.interval.lo + c.factor - 1) / c.factor;
        return narrow(c.rhs[0], Side::Lower, v, derive(c, c.rhs[0], Side::Lower, v, CertOp::CeilDiv, c.factor, {l.lower}),
                      count);
      }
      case ConstraintOp::PlusOne: {
        const Value v = l.interval.lo - 1;
        return narrow(c.rhs[0], Side::Lower, v, derive(c, c.rhs[0], Side::Lower, v, CertOp::SubOne, 0, {l.lower}), count);
      }
    }
    return std::nullopt;
  }

  std::vector<Entity> entities_;
  std::map<std::string, std::size_t> index_;
  std::vector<Homotopy> homotopies_;
  std::map<SlotRef, Fact> facts_;
};

}  // namespace lscat
