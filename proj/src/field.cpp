#include "detabp/field.hpp"

namespace detabp {

field_spec field_spec::prime(std::uint64_t p) {
  if (p < (1ull << 31)) fail(errc::invalid_argument, "prime modulus must be at least 2^31");
  if (p >= (1ull << 63)) fail(errc::invalid_argument, "prime modulus must be below 2^63");
  return {field_kind::prime, p};
}

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;  // no overflow: a, b < 2^63
  return s >= p ? s - p : s;
}

std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
  if (a == 0) fail(errc::division_by_zero, "inverse of zero");
  // Extended Euclid on signed 128-bit, p < 2^63 keeps everything in range.
  __int128 r0 = static_cast<__int128>(p), r1 = static_cast<__int128>(a);
  __int128 t0 = 0, t1 = 1;
  while (r1 != 0) {
    __int128 q = r0 / r1;
    __int128 r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    __int128 t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (t0 < 0) t0 += static_cast<__int128>(p);
  return static_cast<std::uint64_t>(t0);
}

scalar scalar::zero(const field_spec& f) {
  return f.kind == field_kind::rational ? scalar(f, mpq_class(0)) : scalar(f, std::uint64_t{0});
}

scalar scalar::one(const field_spec& f) {
  return f.kind == field_kind::rational ? scalar(f, mpq_class(1)) : scalar(f, std::uint64_t{1});
}

scalar scalar::from_int(const field_spec& f, long v) {
  if (f.kind == field_kind::rational) return scalar(f, mpq_class(v));
  std::uint64_t r;
  if (v >= 0) {
    r = static_cast<std::uint64_t>(v) % f.p;
  } else {
    r = f.p - (static_cast<std::uint64_t>(-(v + 1)) + 1) % f.p;
    if (r == f.p) r = 0;
  }
  return scalar(f, r);
}

scalar scalar::from_rational(mpq_class q) {
  q.canonicalize();
  return scalar(field_spec::rationals(), std::move(q));
}

scalar scalar::from_residue(const field_spec& f, std::uint64_t r) {
  if (f.kind != field_kind::prime) fail(errc::invalid_argument, "residue scalar needs a prime field");
  return scalar(f, r % f.p);
}

scalar scalar::parse(const field_spec& f, const std::string& text) {
  if (text.empty()) fail(errc::parse_error, "empty scalar");
  if (f.kind == field_kind::rational) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) fail(errc::parse_error, "bad rational: " + text);
    // canonicalize() on a zero denominator traps inside gmp, so check first
    if (q.get_den() == 0) fail(errc::parse_error, "zero denominator: " + text);
    q.canonicalize();
    return scalar(f, std::move(q));
  }
  mpz_class z;
  if (z.set_str(text, 10) != 0) fail(errc::parse_error, "bad residue: " + text);
  mpz_class p(static_cast<unsigned long>(f.p));
  mpz_class r = z % p;
  if (r < 0) r += p;
  return scalar(f, static_cast<std::uint64_t>(r.get_ui()));
}

bool scalar::is_zero() const {
  if (field_.kind == field_kind::rational) return sgn(rat()) == 0;
  return residue() == 0;
}

bool scalar::is_one() const {
  if (field_.kind == field_kind::rational) return rat() == 1;
  return residue() == 1;
}

void scalar::check_same_field(const scalar& b) const {
  if (!(field_ == b.field_)) fail(errc::field_mismatch, "scalars from different fields");
}

scalar scalar::operator-() const {
  if (field_.kind == field_kind::rational) return scalar(field_, mpq_class(-rat()));
  return scalar(field_, residue() == 0 ? 0 : field_.p - residue());
}

scalar scalar::inv() const {
  if (is_zero()) fail(errc::division_by_zero, "inverse of zero");
  if (field_.kind == field_kind::rational) return scalar(field_, mpq_class(1) / rat());
  return scalar(field_, mod_inv(residue(), field_.p));
}

scalar operator+(const scalar& a, const scalar& b) {
  a.check_same_field(b);
  if (a.field_.kind == field_kind::rational) return scalar(a.field_, mpq_class(a.rat() + b.rat()));
  return scalar(a.field_, mod_add(a.residue(), b.residue(), a.field_.p));
}

scalar operator-(const scalar& a, const scalar& b) {
  a.check_same_field(b);
  if (a.field_.kind == field_kind::rational) return scalar(a.field_, mpq_class(a.rat() - b.rat()));
  return scalar(a.field_, mod_sub(a.residue(), b.residue(), a.field_.p));
}

scalar operator*(const scalar& a, const scalar& b) {
  a.check_same_field(b);
  if (a.field_.kind == field_kind::rational) return scalar(a.field_, mpq_class(a.rat() * b.rat()));
  return scalar(a.field_, mod_mul(a.residue(), b.residue(), a.field_.p));
}

scalar operator/(const scalar& a, const scalar& b) { return a * b.inv(); }

bool scalar::operator==(const scalar& b) const {
  if (!(field_ == b.field_)) return false;
  if (field_.kind == field_kind::rational) return rat() == b.rat();
  return residue() == b.residue();
}

std::string scalar::str() const {
  if (field_.kind == field_kind::rational) return rat().get_str();
  return std::to_string(residue());
}

scalar scalar::to_prime(const field_spec& target) const {
  if (target.kind != field_kind::prime) fail(errc::invalid_argument, "target must be a prime field");
  if (field_.kind == field_kind::prime) {
    if (field_.p != target.p) fail(errc::field_mismatch, "cannot move residues between primes");
    return *this;
  }
  mpz_class p(static_cast<unsigned long>(target.p));
  mpz_class num = rat().get_num() % p;
  if (num < 0) num += p;
  mpz_class den = rat().get_den() % p;
  std::uint64_t d = static_cast<std::uint64_t>(den.get_ui());
  if (d == 0) fail(errc::division_by_zero, "denominator vanishes mod p");
  std::uint64_t n = static_cast<std::uint64_t>(num.get_ui());
  return scalar(target, mod_mul(n, mod_inv(d, target.p), target.p));
}

}  // namespace detabp
