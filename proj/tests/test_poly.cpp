#include "doctest.h"

#include "detabp/poly.hpp"

using namespace detabp;

namespace {
const field_spec Q = field_spec::rationals();

poly X(int i) { return poly::var(2, Q, i); }
}  // namespace

TEST_CASE("binomial square") {
  poly s = X(0) + X(1);
  poly sq = s * s;
  CHECK(sq.term_count() == 3);
  CHECK(sq.coeff({2, 0}).str() == "1");
  CHECK(sq.coeff({1, 1}).str() == "2");
  CHECK(sq.coeff({0, 2}).str() == "1");
  CHECK(sq.coeff({1, 0}).is_zero());
}

TEST_CASE("cancellation erases terms") {
  poly d = (X(0) + X(1)) * (X(0) - X(1));
  CHECK(d == X(0) * X(0) - X(1) * X(1));
  CHECK(d.term_count() == 2);
  poly z = d - d;
  CHECK(z.is_zero());
  CHECK(!z.degree().has_value());
}

TEST_CASE("graded lex iteration order") {
  poly f = X(0) * X(0) + X(0) + X(1) + poly::constant(2, scalar::one(Q)) + X(0) * X(1);
  std::vector<exponents> seen;
  for (const auto& [e, c] : f.terms()) seen.push_back(e);
  CHECK(seen == std::vector<exponents>{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}});
}

TEST_CASE("hom_component splits by total degree") {
  poly f = (poly::constant(2, scalar::one(Q)) + X(0)) * (poly::constant(2, scalar::one(Q)) + X(1));
  CHECK(f.hom_component(0) == poly::constant(2, scalar::one(Q)));
  CHECK(f.hom_component(1) == X(0) + X(1));
  CHECK(f.hom_component(2) == X(0) * X(1));
  CHECK(f.hom_component(3).is_zero());
  CHECK(f.hom_component(0) + f.hom_component(1) + f.hom_component(2) == f);
}

TEST_CASE("homogeneity_degree distinguishes the three cases") {
  poly z(2, Q);
  CHECK(z.homogeneity_degree().k == homogeneity::kind::every_degree);
  CHECK(z.homogeneity_degree().admits(0));
  CHECK(z.homogeneity_degree().admits(17));

  poly h = X(0) * X(1) + X(1) * X(1);
  auto hh = h.homogeneity_degree();
  CHECK(hh.k == homogeneity::kind::exactly);
  CHECK(hh.degree == 2);
  CHECK(hh.admits(2));
  CHECK(!hh.admits(3));

  poly m = X(0) + X(0) * X(1);
  CHECK(!m.homogeneity_degree().is_homogeneous());
}

TEST_CASE("eval agrees with hand expansion") {
  poly f = X(0) * X(0) * X(1) - X(1);
  std::vector<scalar> pt{scalar::from_int(Q, 3), scalar::from_int(Q, -2)};
  CHECK(f.eval(pt).str() == "-16");  // 9*(-2) - (-2)
}

TEST_CASE("prime field polynomials") {
  constexpr std::uint64_t p = 2147483659ull;
  field_spec fp = field_spec::prime(p);
  poly x = poly::var(1, fp, 0);
  poly f = x * x + x;  // x^2 + x = x(x+1) wraps at the modulus
  CHECK(f.eval({scalar::from_residue(fp, p - 1)}).residue() == 0);  // (-1)*0
  CHECK(f.eval({scalar::from_residue(fp, p - 2)}).residue() == 2);  // (-2)*(-1)
}

TEST_CASE("degree of products adds for these integral domains") {
  poly f = X(0) * X(0) + X(1);
  poly g = X(1) * X(1) * X(0);
  CHECK(*(f * g).degree() == *f.degree() + *g.degree());
}
