#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "detabp/field.hpp"

namespace detabp {

using exponents = std::vector<std::uint32_t>;

inline std::uint32_t total_degree(const exponents& e) {
  std::uint32_t d = 0;
  for (auto x : e) d += x;
  return d;
}

// Canonical term order: graded lexicographic (total degree first, then lex).
// Keeping terms in this order makes symbolic equality structural equality.
struct graded_lex_less {
  bool operator()(const exponents& a, const exponents& b) const {
    std::uint32_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

// Result of a homogeneity check. The zero polynomial is homogeneous of every
// degree and gets its own marker rather than a number.
struct homogeneity {
  enum class kind { not_homogeneous, every_degree, exactly };
  kind k = kind::not_homogeneous;
  int degree = -1;

  bool is_homogeneous() const { return k != kind::not_homogeneous; }
  // True when the polynomial is consistent with degree d (zero counts).
  bool admits(int d) const {
    return k == kind::every_degree || (k == kind::exactly && degree == d);
  }
};

// Sparse exact multivariate polynomial; exponent vectors are dense per term.
class poly {
 public:
  poly(int nvars, field_spec f) : nvars_(nvars), field_(f) {}

  static poly zero(int nvars, const field_spec& f) { return poly(nvars, f); }
  static poly constant(int nvars, const scalar& c);
  static poly var(int nvars, const field_spec& f, int i);

  int nvars() const { return nvars_; }
  const field_spec& field() const { return field_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  // Adds c * x^e to the polynomial, erasing the term if it cancels.
  void add_term(const exponents& e, const scalar& c);
  scalar coeff(const exponents& e) const;

  poly operator-() const;
  friend poly operator+(const poly& a, const poly& b);
  friend poly operator-(const poly& a, const poly& b);
  friend poly operator*(const poly& a, const poly& b);
  poly& operator+=(const poly& b) { return *this = *this + b; }
  poly& operator-=(const poly& b) { return *this = *this - b; }
  poly& operator*=(const poly& b) { return *this = *this * b; }
  poly scaled(const scalar& c) const;

  bool operator==(const poly& b) const;
  bool operator!=(const poly& b) const { return !(*this == b); }

  scalar eval(const std::vector<scalar>& point) const;

  // Total degree; empty for the zero polynomial (the "minus infinity" marker).
  std::optional<int> degree() const;
  // Sum of all terms of total degree exactly d.
  poly hom_component(int d) const;
  homogeneity homogeneity_degree() const;

  const std::map<exponents, scalar, graded_lex_less>& terms() const { return terms_; }

  std::string str() const;

 private:
  int nvars_;
  field_spec field_;
  std::map<exponents, scalar, graded_lex_less> terms_;
};

}  // namespace detabp
