#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <variant>

#include "detabp/error.hpp"

namespace detabp {

// Default prime field modulus (Mersenne, 2^61 - 1) and the fallback used when a
// rational coefficient's denominator is divisible by the active modulus.
inline constexpr std::uint64_t default_prime = 2305843009213693951ull;
inline constexpr std::uint64_t fallback_prime = 9223372036854775783ull;

enum class field_kind { rational, prime };

struct field_spec {
  field_kind kind = field_kind::rational;
  std::uint64_t p = 0;  // modulus, meaningful only for prime fields

  static field_spec rationals() { return {field_kind::rational, 0}; }
  static field_spec prime(std::uint64_t p);

  bool operator==(const field_spec&) const = default;
};

// Exact field element tagged with its field. Rationals are GMP-backed and kept
// in lowest terms with positive denominator; prime-field elements are residues
// in [0, p) with p < 2^63.
class scalar {
 public:
  scalar() : field_(field_spec::rationals()), v_(mpq_class(0)) {}

  static scalar zero(const field_spec& f);
  static scalar one(const field_spec& f);
  static scalar from_int(const field_spec& f, long v);
  static scalar from_rational(mpq_class q);
  static scalar from_residue(const field_spec& f, std::uint64_t r);
  // Parses the serialized form: decimal integer, "num/den", or a residue.
  static scalar parse(const field_spec& f, const std::string& text);

  const field_spec& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  scalar operator-() const;
  scalar inv() const;

  friend scalar operator+(const scalar& a, const scalar& b);
  friend scalar operator-(const scalar& a, const scalar& b);
  friend scalar operator*(const scalar& a, const scalar& b);
  friend scalar operator/(const scalar& a, const scalar& b);
  scalar& operator+=(const scalar& b) { return *this = *this + b; }
  scalar& operator-=(const scalar& b) { return *this = *this - b; }
  scalar& operator*=(const scalar& b) { return *this = *this * b; }

  bool operator==(const scalar& b) const;
  bool operator!=(const scalar& b) const { return !(*this == b); }

  std::string str() const;

  // Rational payload (valid only for rational scalars).
  const mpq_class& rat() const { return std::get<mpq_class>(v_); }
  // Residue payload (valid only for prime-field scalars).
  std::uint64_t residue() const { return std::get<std::uint64_t>(v_); }

  // Maps this scalar into the given prime field. Rational inputs reduce
  // num/den mod p; throws division_by_zero if the denominator vanishes mod p.
  scalar to_prime(const field_spec& target) const;

 private:
  scalar(field_spec f, mpq_class q) : field_(f), v_(std::move(q)) {}
  scalar(field_spec f, std::uint64_t r) : field_(f), v_(r) {}

  void check_same_field(const scalar& b) const;

  field_spec field_;
  std::variant<mpq_class, std::uint64_t> v_;
};

// Residue arithmetic helpers for p < 2^63.
std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p);

}  // namespace detabp
