#include "detabp/poly.hpp"

#include <sstream>

namespace detabp {

poly poly::constant(int nvars, const scalar& c) {
  poly p(nvars, c.field());
  p.add_term(exponents(nvars, 0), c);
  return p;
}

poly poly::var(int nvars, const field_spec& f, int i) {
  if (i < 0 || i >= nvars) fail(errc::invalid_argument, "variable index out of range");
  poly p(nvars, f);
  exponents e(nvars, 0);
  e[i] = 1;
  p.add_term(e, scalar::one(f));
  return p;
}

void poly::add_term(const exponents& e, const scalar& c) {
  if (static_cast<int>(e.size()) != nvars_) fail(errc::variable_count_mismatch, "exponent vector length");
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

scalar poly::coeff(const exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? scalar::zero(field_) : it->second;
}

poly poly::operator-() const {
  poly r(nvars_, field_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

static void check_compatible(const poly& a, const poly& b) {
  if (a.nvars() != b.nvars()) fail(errc::variable_count_mismatch, "polynomial variable counts differ");
  if (!(a.field() == b.field())) fail(errc::field_mismatch, "polynomial fields differ");
}

poly operator+(const poly& a, const poly& b) {
  check_compatible(a, b);
  poly r = a;
  for (const auto& [e, c] : b.terms()) r.add_term(e, c);
  return r;
}

poly operator-(const poly& a, const poly& b) {
  check_compatible(a, b);
  poly r = a;
  for (const auto& [e, c] : b.terms()) r.add_term(e, -c);
  return r;
}

poly operator*(const poly& a, const poly& b) {
  check_compatible(a, b);
  poly r(a.nvars(), a.field());
  exponents e(a.nvars());
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      for (int i = 0; i < a.nvars(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

poly poly::scaled(const scalar& c) const {
  if (c.is_zero()) return poly(nvars_, field_);
  poly r(nvars_, field_);
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

bool poly::operator==(const poly& b) const {
  return nvars_ == b.nvars_ && field_ == b.field_ && terms_ == b.terms_;
}

scalar poly::eval(const std::vector<scalar>& point) const {
  if (static_cast<int>(point.size()) != nvars_) fail(errc::variable_count_mismatch, "point size");
  scalar acc = scalar::zero(field_);
  for (const auto& [e, c] : terms_) {
    scalar t = c;
    for (int i = 0; i < nvars_; ++i) {
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
    }
    acc += t;
  }
  return acc;
}

std::optional<int> poly::degree() const {
  if (terms_.empty()) return std::nullopt;
  return static_cast<int>(total_degree(terms_.rbegin()->first));
}

poly poly::hom_component(int d) const {
  poly r(nvars_, field_);
  if (d < 0) return r;
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) == static_cast<std::uint32_t>(d)) r.terms_.emplace(e, c);
  }
  return r;
}

homogeneity poly::homogeneity_degree() const {
  if (terms_.empty()) return {homogeneity::kind::every_degree, -1};
  std::uint32_t d = total_degree(terms_.begin()->first);
  if (total_degree(terms_.rbegin()->first) != d) return {homogeneity::kind::not_homogeneous, -1};
  return {homogeneity::kind::exactly, static_cast<int>(d)};
}

std::string poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    bool has_vars = total_degree(e) > 0;
    if (!has_vars || !c.is_one()) out << c.str();
    bool need_star = !has_vars ? false : !c.is_one();
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (need_star) out << "*";
      need_star = true;
      out << "x" << i;
      if (e[i] > 1) out << "^" << e[i];
    }
  }
  return out.str();
}

}  // namespace detabp
