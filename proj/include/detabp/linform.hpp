#pragma once

#include <map>
#include <string>
#include <vector>

#include "detabp/poly.hpp"

namespace detabp {

// Affine-linear form c0 + sum c_i x_i; the entry type of pencils and of ABP
// labels. Only nonzero coefficients are stored.
class linform {
 public:
  linform(int nvars, field_spec f)
      : nvars_(nvars), field_(f), constant_(scalar::zero(f)) {}

  static linform constant(int nvars, const scalar& c) {
    linform l(nvars, c.field());
    l.constant_ = c;
    return l;
  }
  static linform var(int nvars, const field_spec& f, int i) {
    linform l(nvars, f);
    l.set_coeff(i, scalar::one(f));
    return l;
  }

  int nvars() const { return nvars_; }
  const field_spec& field() const { return field_; }
  const scalar& constant_term() const { return constant_; }
  void set_constant(const scalar& c) { constant_ = c; }
  scalar coeff(int i) const;
  void set_coeff(int i, const scalar& c);
  const std::map<int, scalar>& coeffs() const { return coeffs_; }

  bool is_zero() const { return constant_.is_zero() && coeffs_.empty(); }
  // Zero constant term; the zero form counts as homogeneous.
  bool is_homogeneous() const { return constant_.is_zero(); }
  // The form with the constant term dropped.
  linform linear_part() const;

  scalar eval(const std::vector<scalar>& point) const;
  poly to_poly() const;

  linform operator-() const;
  friend linform operator+(const linform& a, const linform& b);
  friend linform operator-(const linform& a, const linform& b);
  linform& operator+=(const linform& b) { return *this = *this + b; }
  linform& operator-=(const linform& b) { return *this = *this - b; }
  linform scaled(const scalar& c) const;

  bool operator==(const linform& b) const {
    return nvars_ == b.nvars_ && field_ == b.field_ && constant_ == b.constant_ && coeffs_ == b.coeffs_;
  }
  bool operator!=(const linform& b) const { return !(*this == b); }

  std::string str() const;

 private:
  int nvars_;
  field_spec field_;
  scalar constant_;
  std::map<int, scalar> coeffs_;
};

}  // namespace detabp
