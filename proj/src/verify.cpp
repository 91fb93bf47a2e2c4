#include "detabp/verify.hpp"

#include <algorithm>

#include "detabp/rng.hpp"

namespace detabp {

namespace {

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t acc = 1 % p;
  base %= p;
  while (e != 0) {
    if (e & 1) acc = mod_mul(acc, base, p);
    base = mod_mul(base, base, p);
    e >>= 1;
  }
  return acc;
}

linform linform_to_prime(const linform& l, const field_spec& target) {
  linform out(l.nvars(), target);
  out.set_constant(l.constant_term().to_prime(target));
  for (const auto& [i, c] : l.coeffs()) out.set_coeff(i, c.to_prime(target));
  return out;
}

pencil pencil_to_prime(const pencil& p, const field_spec& target) {
  pencil out(p.size(), p.nvars(), target);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) out.at(i, j) = linform_to_prime(p.at(i, j), target);
  return out;
}

abp abp_to_prime(const abp& a, const field_spec& target) {
  std::vector<linform> b, c;
  for (const auto& l : a.b()) b.push_back(linform_to_prime(l, target));
  for (const auto& l : a.c()) c.push_back(linform_to_prime(l, target));
  std::vector<grid<linform>> mats;
  for (std::size_t t = 0; t < a.num_mats(); ++t) {
    grid<linform> m(a.mat(t).rows(), a.mat(t).cols(), linform(a.nvars(), target));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = linform_to_prime(a.mat(t).at(i, j), target);
    mats.push_back(std::move(m));
  }
  return abp(a.nvars(), target, a.widths(), std::move(b), std::move(c), std::move(mats));
}

poly poly_to_prime(const poly& p, const field_spec& target) {
  poly out(p.nvars(), target);
  for (const auto& [e, c] : p.terms()) out.add_term(e, c.to_prime(target));
  return out;
}

subject subject_to_prime(const subject& s, const field_spec& target) {
  if (const pencil* p = std::get_if<pencil>(&s)) return subject{pencil_to_prime(*p, target)};
  if (const abp* a = std::get_if<abp>(&s)) return subject{abp_to_prime(*a, target)};
  return subject{poly_to_prime(std::get<poly>(s), target)};
}

// Moves a rational-field pair into a shared prime field, falling back to the
// secondary prime when a denominator is divisible by the primary one.
std::pair<subject, subject> to_common_prime(const subject& lhs, const subject& rhs,
                                            field_spec& working) {
  if (subject_field(lhs).kind == field_kind::prime) {
    working = subject_field(lhs);
    return {lhs, rhs};
  }
  for (std::uint64_t p : {default_prime, fallback_prime}) {
    field_spec target = field_spec::prime(p);
    try {
      auto a = subject_to_prime(lhs, target);
      auto b = subject_to_prime(rhs, target);
      working = target;
      return {std::move(a), std::move(b)};
    } catch (const error& e) {
      if (e.code() != errc::division_by_zero || p == fallback_prime) throw;
    }
  }
  fail(errc::division_by_zero, "unreachable");
}

std::vector<scalar> random_point(rng& gen, int nvars, const field_spec& f) {
  std::vector<scalar> pt;
  pt.reserve(static_cast<std::size_t>(nvars));
  for (int i = 0; i < nvars; ++i) pt.push_back(scalar::from_residue(f, gen.below(f.p)));
  return pt;
}

// Coefficients of the univariate polynomial through (xs[i], ys[i]) by Newton
// divided differences; all residues mod p.
std::vector<std::uint64_t> interpolate_coeffs(const std::vector<std::uint64_t>& xs,
                                              const std::vector<std::uint64_t>& ys,
                                              std::uint64_t p) {
  std::size_t n = xs.size();
  std::vector<std::uint64_t> dd = ys;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n; i-- > j;) {
      std::uint64_t num = mod_sub(dd[i], dd[i - 1], p);
      std::uint64_t den = mod_sub(xs[i], xs[i - j], p);
      dd[i] = mod_mul(num, mod_inv(den, p), p);
    }
  }
  std::vector<std::uint64_t> coeffs(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    // coeffs = coeffs * (X - xs[i]) + dd[i]
    std::uint64_t carry = 0;
    for (std::size_t t = 0; t < n; ++t) {
      std::uint64_t shifted = carry;
      carry = coeffs[t];
      coeffs[t] = mod_add(shifted, mod_mul(coeffs[t], mod_sub(0, xs[i], p), p), p);
    }
    coeffs[0] = mod_add(coeffs[0], dd[i], p);
  }
  return coeffs;
}

}  // namespace

int subject_nvars(const subject& s) {
  if (const pencil* p = std::get_if<pencil>(&s)) return p->nvars();
  if (const abp* a = std::get_if<abp>(&s)) return a->nvars();
  return std::get<poly>(s).nvars();
}

const field_spec& subject_field(const subject& s) {
  if (const pencil* p = std::get_if<pencil>(&s)) return p->field();
  if (const abp* a = std::get_if<abp>(&s)) return a->field();
  return std::get<poly>(s).field();
}

int subject_degree_cap(const subject& s) {
  if (const pencil* p = std::get_if<pencil>(&s)) return static_cast<int>(p->size());
  if (const abp* a = std::get_if<abp>(&s)) return static_cast<int>(a->layer_count());
  return std::max(0, std::get<poly>(s).degree().value_or(0));
}

scalar subject_eval(const subject& s, const std::vector<scalar>& point) {
  if (const pencil* p = std::get_if<pencil>(&s)) return pencil_eval_det(*p, point);
  if (const abp* a = std::get_if<abp>(&s)) return a->eval(point);
  return std::get<poly>(s).eval(point);
}

poly subject_poly(const subject& s) {
  if (const pencil* p = std::get_if<pencil>(&s)) return symbolic_det(*p);
  if (const abp* a = std::get_if<abp>(&s)) return a->to_poly();
  return std::get<poly>(s);
}

bool subject_symbolic_scale(const subject& s) {
  if (const pencil* p = std::get_if<pencil>(&s)) return p->size() <= 6;
  if (const abp* a = std::get_if<abp>(&s))
    return a->size() <= 80 && a->layer_count() <= 9 && a->nvars() <= 9;
  return true;
}

poly symbolic_det(const pencil& p) {
  std::size_t s = p.size();
  if (s > 12) fail(errc::invalid_argument, "symbolic determinant capped at size 12");
  // det over rows i.. and the column subset `mask`, where i = s - popcount(mask)
  std::vector<std::optional<poly>> memo(std::size_t{1} << s);
  poly one = poly::constant(p.nvars(), scalar::one(p.field()));

  auto solve = [&](auto&& self, std::uint32_t mask) -> const poly& {
    if (!memo[mask]) {
      if (mask == 0) {
        memo[mask] = one;
      } else {
        std::size_t live = static_cast<std::size_t>(__builtin_popcount(mask));
        std::size_t i = s - live;
        poly acc = poly::zero(p.nvars(), p.field());
        int parity = 0;
        for (std::size_t j = 0; j < s; ++j) {
          if (!(mask & (1u << j))) continue;
          const linform& entry = p.at(i, j);
          if (!entry.is_zero()) {
            poly term = entry.to_poly() * self(self, mask & ~(1u << j));
            if (parity % 2 == 0) {
              acc += term;
            } else {
              acc -= term;
            }
          }
          ++parity;
        }
        memo[mask] = std::move(acc);
      }
    }
    return *memo[mask];
  };
  return solve(solve, static_cast<std::uint32_t>((std::size_t{1} << s) - 1));
}

verdict pit_equal(const subject& lhs, const subject& rhs, int trials, std::uint64_t seed) {
  if (subject_nvars(lhs) != subject_nvars(rhs))
    fail(errc::variable_count_mismatch, "identity test sides disagree on variable count");
  if (!(subject_field(lhs) == subject_field(rhs)))
    fail(errc::field_mismatch, "identity test sides disagree on field");

  field_spec working = field_spec::rationals();
  auto [a, b] = to_common_prime(lhs, rhs, working);

  int deg = std::max({1, subject_degree_cap(lhs), subject_degree_cap(rhs)});
  verdict v;
  v.trials = trials;
  v.seed = seed;
  v.per_trial_error_bound = std::to_string(deg) + "/" + std::to_string(working.p);

  rng gen(seed);
  int nv = subject_nvars(lhs);
  for (int t = 0; t < trials; ++t) {
    std::vector<scalar> pt = random_point(gen, nv, working);
    if (subject_eval(a, pt) != subject_eval(b, pt)) {
      v.outcome = "not-equal";
      v.witness = std::move(pt);
      return v;
    }
  }
  v.outcome = "equal";
  return v;
}

verdict symbolic_equal(const subject& lhs, const subject& rhs) {
  if (subject_nvars(lhs) != subject_nvars(rhs))
    fail(errc::variable_count_mismatch, "identity test sides disagree on variable count");
  if (!(subject_field(lhs) == subject_field(rhs)))
    fail(errc::field_mismatch, "identity test sides disagree on field");
  verdict v;
  v.trials = 0;
  v.per_trial_error_bound = "0";
  v.outcome = subject_poly(lhs) == subject_poly(rhs) ? "equal" : "not-equal";
  return v;
}

verdict certify_homogeneous(const subject& obj, std::optional<int> d, int trials,
                            std::uint64_t seed, certify_strategy strategy) {
  verdict v;
  v.trials = trials;
  v.seed = seed;

  bool symbolic = strategy == certify_strategy::symbolic ||
                  (strategy == certify_strategy::automatic && subject_symbolic_scale(obj));
  if (symbolic) {
    poly f = subject_poly(obj);
    homogeneity h = f.homogeneity_degree();
    if (h.k == homogeneity::kind::not_homogeneous) {
      // graded order: the first and last terms witness two distinct degrees
      v.outcome = "refuted";
      v.witness_degrees = {static_cast<int>(total_degree(f.terms().begin()->first)),
                           static_cast<int>(total_degree(f.terms().rbegin()->first))};
      return v;
    }
    if (h.k == homogeneity::kind::every_degree) {
      v.outcome = "certified";
      v.identically_zero = true;
      v.degree = d;
      return v;
    }
    if (d && *d != h.degree) {
      v.outcome = "refuted";
      v.degree = h.degree;
      return v;
    }
    v.outcome = "certified";
    v.degree = h.degree;
    return v;
  }

  // Randomized scaling test over a prime field.
  field_spec working = subject_field(obj);
  subject s = obj;
  if (working.kind == field_kind::rational) {
    auto [a, ignored] = to_common_prime(obj, obj, working);
    s = std::move(a);
  }
  std::uint64_t p = working.p;
  rng gen(seed, 0x686f6d);
  int nv = subject_nvars(s);
  int cap = std::max(1, subject_degree_cap(obj));

  int degree = d.value_or(-1);
  if (degree < 0) {
    // Infer: interpolate g(t) = f(t*a) at cap+1 points; the populated
    // coefficient indices are the degrees present at this base point.
    for (int attempt = 0; attempt < 8 && degree < 0; ++attempt) {
      std::vector<scalar> base = random_point(gen, nv, working);
      std::vector<std::uint64_t> xs, ys;
      for (int i = 0; i <= cap; ++i) {
        std::uint64_t t = static_cast<std::uint64_t>(i) + 1;
        std::vector<scalar> scaled;
        scaled.reserve(base.size());
        for (const auto& c : base) scaled.push_back(scalar::from_residue(working, mod_mul(c.residue(), t, p)));
        xs.push_back(t);
        ys.push_back(subject_eval(s, scaled).residue());
      }
      auto coeffs = interpolate_coeffs(xs, ys, p);
      std::vector<int> present;
      for (std::size_t e = 0; e < coeffs.size(); ++e)
        if (coeffs[e] != 0) present.push_back(static_cast<int>(e));
      if (present.size() == 1) {
        degree = present[0];
      } else if (present.size() > 1) {
        v.outcome = "refuted";
        v.witness_degrees = {present.front(), present.back()};
        return v;
      }
      // empty: f vanished on the whole line; retry from a fresh base point
    }
    if (degree < 0) {
      v.outcome = "certified";
      v.identically_zero = true;
      return v;
    }
  }

  for (int t = 0; t < trials; ++t) {
    std::vector<scalar> base = random_point(gen, nv, working);
    std::uint64_t tt = gen.below(p);
    std::vector<scalar> scaled;
    scaled.reserve(base.size());
    for (const auto& c : base) scaled.push_back(scalar::from_residue(working, mod_mul(c.residue(), tt, p)));
    std::uint64_t lhs = subject_eval(s, scaled).residue();
    std::uint64_t rhs = mod_mul(mod_pow(tt, static_cast<std::uint64_t>(degree), p),
                                subject_eval(s, base).residue(), p);
    if (lhs != rhs) {
      v.outcome = "refuted";
      base.push_back(scalar::from_residue(working, tt));
      v.witness = std::move(base);
      return v;
    }
  }
  v.outcome = "certified";
  v.degree = degree;
  v.per_trial_error_bound = std::to_string(cap) + "/" + std::to_string(p);
  return v;
}

verdict schur_self_test(std::size_t k, std::size_t m, int trials, std::uint64_t seed) {
  if (k < 1 || k >= m) fail(errc::invalid_argument, "need 1 <= k < m");
  field_spec f = field_spec::rationals();
  verdict v;
  v.trials = trials;
  v.seed = seed;
  rng gen(seed, 0x736368);
  std::size_t q = m - k;

  for (int trial = 0; trial < trials; ++trial) {
    scalar_matrix full(m, m, scalar::zero(f));
    scalar_matrix dblk(q, q, scalar::zero(f));
    scalar det_d = scalar::zero(f);
    while (det_d.is_zero()) {
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) full.at(i, j) = scalar::from_int(f, gen.range(-5, 5));
      for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) dblk.at(i, j) = full.at(k + i, k + j);
      det_d = matrix_det(dblk, f);
    }
    auto d_inv = matrix_inverse(dblk, f);
    scalar_matrix bd(k, q, scalar::zero(f));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < q; ++j) bd.at(i, j) = full.at(i, k + j);
    scalar_matrix cblk(q, k, scalar::zero(f));
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < k; ++j) cblk.at(i, j) = full.at(k + i, j);
    scalar_matrix prod = scalar_mat_mul(scalar_mat_mul(bd, *d_inv), cblk);
    scalar_matrix schur(k, k, scalar::zero(f));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) schur.at(i, j) = full.at(i, j) - prod.at(i, j);
    scalar lhs = matrix_det(full, f);
    scalar rhs = matrix_det(schur, f) * det_d;
    if (lhs != rhs) {
      v.outcome = "fail";
      std::vector<scalar> wit;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) wit.push_back(full.at(i, j));
      v.witness = std::move(wit);
      return v;
    }
  }
  v.outcome = "pass";
  return v;
}

}  // namespace detabp
