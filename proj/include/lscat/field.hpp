#pragma once

// Coefficient fields for exact linear algebra.
//
// A field is a small value type that owns no element storage; elements are
// plain `value_type`s and every operation goes through the field object.
// Two models are provided: `Rationals` (arbitrary precision) and `PrimeField`
// (integers modulo a runtime prime).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace lscat {

class Rationals {
public:
  using value_type = boost::multiprecision::cpp_rational;

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type from_int(std::int64_t n) const { return value_type(n); }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw std::domain_error("division by zero in Q");
    return 1 / a;
  }
  bool is_zero(const value_type& a) const { return a == 0; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }

  int characteristic() const { return 0; }
  std::string name() const { return "Q"; }
  std::string to_string(const value_type& a) const { return a.str(); }

  friend bool operator==(const Rationals&, const Rationals&) { return true; }
};

class PrimeField {
public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("F_p requires a prime p, got " + std::to_string(p));
  }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t n) const {
    auto r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<value_type>(r);
  }

  value_type add(value_type a, value_type b) const { return static_cast<value_type>((std::uint64_t{a} + b) % p_); }
  value_type sub(value_type a, value_type b) const { return static_cast<value_type>((std::uint64_t{a} + p_ - b) % p_); }
  value_type mul(value_type a, value_type b) const { return static_cast<value_type>((std::uint64_t{a} * b) % p_); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const {
    if (a == 0) throw std::domain_error("division by zero in F_" + std::to_string(p_));
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a, e = p_ - 2;
    while (e) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<value_type>(result);
  }
  bool is_zero(value_type a) const { return a == 0; }
  bool equal(value_type a, value_type b) const { return a == b; }

  int characteristic() const { return static_cast<int>(p_); }
  std::string name() const { return "F" + std::to_string(p_); }
  std::string to_string(value_type a) const { return std::to_string(a); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

private:
  std::uint32_t p_;
};

/// Runtime description of a coefficient field: characteristic 0 means Q.
struct CoefficientField {
  int characteristic = 0;

  static CoefficientField rationals() { return {0}; }
  static CoefficientField prime(int p) {
    if (p < 2 || !PrimeField::is_prime(static_cast<std::uint32_t>(p)))
      throw std::invalid_argument("F_p requires a prime p, got " + std::to_string(p));
    return {p};
  }

  /// Accepts "q", "Q", "f2", "F3", ...
  static CoefficientField parse(const std::string& s) {
    if (s == "q" || s == "Q") return rationals();
    if (s.size() >= 2 && (s[0] == 'f' || s[0] == 'F')) {
      try {
        std::size_t used = 0;
        int p = std::stoi(s.substr(1), &used);
        if (used == s.size() - 1) return prime(p);
      } catch (const std::logic_error&) {
      }
    }
    throw std::invalid_argument("unknown field '" + s + "' (expected q, f2, f3, f5, ...)");
  }

  std::string name() const { return characteristic == 0 ? "Q" : "F" + std::to_string(characteristic); }

  friend bool operator==(const CoefficientField&, const CoefficientField&) = default;
};

/// Calls `fn` with a concrete field object matching `desc`.
template <class Fn>
decltype(auto) with_field(const CoefficientField& desc, Fn&& fn) {
  if (desc.characteristic == 0) return std::forward<Fn>(fn)(Rationals{});
  return std::forward<Fn>(fn)(PrimeField(static_cast<std::uint32_t>(desc.characteristic)));
}

template <class Field>
CoefficientField describe(const Field& field) {
  return CoefficientField{field.characteristic()};
}

}  // namespace lscat
