#include "detabp/instgen.hpp"

namespace detabp {

abp power_sum_abp(int n, int d, const field_spec& f) {
  if (n < 1) fail(errc::invalid_argument, "need at least one variable");
  if (d < 2) fail(errc::degree_too_small, "power sum program needs degree at least 2");
  std::size_t w = static_cast<std::size_t>(n);
  std::vector<linform> b;
  for (int i = 0; i < n; ++i) b.push_back(linform::var(n, f, i));
  std::vector<linform> c = b;
  grid<linform> diag(w, w, linform(n, f));
  for (int i = 0; i < n; ++i) diag.at(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) =
      linform::var(n, f, i);
  std::vector<std::size_t> widths(static_cast<std::size_t>(d - 1), w);
  std::vector<grid<linform>> mats(static_cast<std::size_t>(d - 2), diag);
  return abp(n, f, std::move(widths), std::move(b), std::move(c), std::move(mats));
}

abp elem_sym_abp(int n, int k, const field_spec& f) {
  if (k < 1 || k > n) fail(errc::invalid_argument, "need 1 <= k <= n");
  if (k == 1) {
    linform sum(n, f);
    for (int i = 0; i < n; ++i) sum += linform::var(n, f, i);
    return abp(n, f, {1}, {sum}, {linform::constant(n, scalar::one(f))}, {});
  }
  // Layer j (1 <= j <= k-1) states: the index of the j-th chosen variable,
  // ranging over [j-1, n-k+j-1] (0-based), so every layer has n-k+1 states.
  std::size_t w = static_cast<std::size_t>(n - k + 1);
  auto idx_at = [&](int j, std::size_t state) { return static_cast<int>(state) + j - 1; };

  std::vector<linform> b;
  for (std::size_t v = 0; v < w; ++v) b.push_back(linform::var(n, f, idx_at(1, v)));
  std::vector<linform> c;
  for (std::size_t u = 0; u < w; ++u) {
    linform tail(n, f);
    for (int i = idx_at(k - 1, u) + 1; i < n; ++i) tail += linform::var(n, f, i);
    c.push_back(tail);
  }
  std::vector<grid<linform>> mats;
  for (int j = 1; j <= k - 2; ++j) {
    grid<linform> m(w, w, linform(n, f));
    for (std::size_t u = 0; u < w; ++u) {
      for (std::size_t v = 0; v < w; ++v) {
        int from = idx_at(j, u), to = idx_at(j + 1, v);
        if (to > from) m.at(u, v) = linform::var(n, f, to);
      }
    }
    mats.push_back(std::move(m));
  }
  std::vector<std::size_t> widths(static_cast<std::size_t>(k - 1), w);
  return abp(n, f, std::move(widths), std::move(b), std::move(c), std::move(mats));
}

linform random_hom_linform(rng& gen, int n, const field_spec& f) {
  linform l(n, f);
  for (int i = 0; i < n; ++i) {
    if (!gen.flip()) continue;
    scalar c = scalar::zero(f);
    if (f.kind == field_kind::rational) {
      long v = gen.range(1, 3);
      if (gen.flip()) v = -v;
      c = scalar::from_int(f, v);
    } else {
      c = scalar::from_residue(f, 1 + gen.below(f.p - 1));
    }
    l.set_coeff(i, c);
  }
  return l;
}

abp random_hom_abp(int n, int d, std::size_t w, std::uint64_t seed, const field_spec& f) {
  if (d < 2) fail(errc::degree_too_small, "homogeneous program needs degree at least 2");
  if (w < 1) fail(errc::invalid_argument, "width must be positive");
  rng gen(seed, 0xab9);
  std::vector<linform> b, c;
  for (std::size_t v = 0; v < w; ++v) b.push_back(random_hom_linform(gen, n, f));
  for (std::size_t v = 0; v < w; ++v) c.push_back(random_hom_linform(gen, n, f));
  std::vector<grid<linform>> mats;
  for (int t = 0; t < d - 2; ++t) {
    grid<linform> m(w, w, linform(n, f));
    for (std::size_t i = 0; i < w; ++i)
      for (std::size_t j = 0; j < w; ++j) m.at(i, j) = random_hom_linform(gen, n, f);
    mats.push_back(std::move(m));
  }
  std::vector<std::size_t> widths(static_cast<std::size_t>(d - 1), w);
  return abp(n, f, std::move(widths), std::move(b), std::move(c), std::move(mats));
}

pencil synth_r_regular_pencil(const std::vector<pencil>& base) {
  if (base.empty()) fail(errc::invalid_argument, "need at least one block");
  int nv = base.front().nvars();
  field_spec f = base.front().field();
  std::size_t s = 0;
  for (const auto& blk : base) {
    if (blk.nvars() != nv) fail(errc::variable_count_mismatch, "blocks disagree on variable count");
    if (!(blk.field() == f)) fail(errc::field_mismatch, "blocks disagree on field");
    if (constant_rank(blk).corank != 1) fail(errc::not_regular, "every block must have corank 1");
    s += blk.size();
  }
  pencil out(s, nv, f);
  std::size_t off = 0;
  for (const auto& blk : base) {
    for (std::size_t i = 0; i < blk.size(); ++i)
      for (std::size_t j = 0; j < blk.size(); ++j) out.at(off + i, off + j) = blk.at(i, j);
    off += blk.size();
  }
  return out;
}

pencil random_mixed_pencil(std::size_t s, int n, std::size_t rank0, std::uint64_t seed,
                           const field_spec& f) {
  if (rank0 > s) fail(errc::invalid_argument, "rank exceeds size");
  rng gen(seed, 0x9e4c);

  scalar_matrix m0(s, s, scalar::zero(f));
  for (std::size_t i = 0; i < rank0; ++i) m0.at(i, i) = scalar::one(f);
  // Random unimodular row and column operations keep the rank and mix the
  // support: a few rounds of add-multiple and swaps on each side.
  auto mix = [&](bool rows) {
    for (std::size_t round = 0; round < 2 * s; ++round) {
      std::size_t a = gen.below(s), b = gen.below(s);
      if (a == b) continue;
      if (gen.flip()) {
        scalar c = scalar::from_int(f, gen.range(-2, 2));
        for (std::size_t t = 0; t < s; ++t) {
          if (rows) {
            m0.at(a, t) += c * m0.at(b, t);
          } else {
            m0.at(t, a) += c * m0.at(t, b);
          }
        }
      } else {
        for (std::size_t t = 0; t < s; ++t) {
          if (rows) {
            std::swap(m0.at(a, t), m0.at(b, t));
          } else {
            std::swap(m0.at(t, a), m0.at(t, b));
          }
        }
      }
    }
  };
  mix(true);
  mix(false);

  pencil out(s, n, f);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      linform l = random_hom_linform(gen, n, f);
      l.set_constant(m0.at(i, j));
      out.at(i, j) = l;
    }
  }
  return out;
}

}  // namespace detabp
