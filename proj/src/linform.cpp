#include "detabp/linform.hpp"

#include <sstream>

namespace detabp {

scalar linform::coeff(int i) const {
  auto it = coeffs_.find(i);
  return it == coeffs_.end() ? scalar::zero(field_) : it->second;
}

void linform::set_coeff(int i, const scalar& c) {
  if (i < 0 || i >= nvars_) fail(errc::invalid_argument, "coefficient index out of range");
  if (c.is_zero()) {
    coeffs_.erase(i);
  } else {
    coeffs_.insert_or_assign(i, c);
  }
}

linform linform::linear_part() const {
  linform l = *this;
  l.constant_ = scalar::zero(field_);
  return l;
}

scalar linform::eval(const std::vector<scalar>& point) const {
  if (static_cast<int>(point.size()) != nvars_) fail(errc::variable_count_mismatch, "point size");
  scalar acc = constant_;
  for (const auto& [i, c] : coeffs_) acc += c * point[i];
  return acc;
}

poly linform::to_poly() const {
  poly p(nvars_, field_);
  p.add_term(exponents(nvars_, 0), constant_);
  exponents e(nvars_, 0);
  for (const auto& [i, c] : coeffs_) {
    e[i] = 1;
    p.add_term(e, c);
    e[i] = 0;
  }
  return p;
}

linform linform::operator-() const {
  linform l(nvars_, field_);
  l.constant_ = -constant_;
  for (const auto& [i, c] : coeffs_) l.coeffs_.emplace(i, -c);
  return l;
}

static void check_compatible(const linform& a, const linform& b) {
  if (a.nvars() != b.nvars()) fail(errc::variable_count_mismatch, "linear form variable counts differ");
  if (!(a.field() == b.field())) fail(errc::field_mismatch, "linear form fields differ");
}

linform operator+(const linform& a, const linform& b) {
  check_compatible(a, b);
  linform r = a;
  r.constant_ += b.constant_;
  for (const auto& [i, c] : b.coeffs_) r.set_coeff(i, r.coeff(i) + c);
  return r;
}

linform operator-(const linform& a, const linform& b) {
  check_compatible(a, b);
  linform r = a;
  r.constant_ -= b.constant_;
  for (const auto& [i, c] : b.coeffs_) r.set_coeff(i, r.coeff(i) - c);
  return r;
}

linform linform::scaled(const scalar& c) const {
  linform r(nvars_, field_);
  if (c.is_zero()) return r;
  r.constant_ = constant_ * c;
  for (const auto& [i, v] : coeffs_) r.coeffs_.emplace(i, v * c);
  return r;
}

std::string linform::str() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  if (!constant_.is_zero()) {
    out << constant_.str();
    first = false;
  }
  for (const auto& [i, c] : coeffs_) {
    if (!first) out << " + ";
    first = false;
    if (!c.is_one()) out << c.str() << "*";
    out << "x" << i;
  }
  return out.str();
}

}  // namespace detabp
