#include "detabp/convert.hpp"

#include <algorithm>

namespace detabp {

namespace {

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t acc = 1;
  for (int i = 0; i < e; ++i) acc *= b;
  return acc;
}

linform linform_of_affine_poly(const poly& f) {
  linform out(f.nvars(), f.field());
  for (const auto& [e, c] : f.terms()) {
    if (total_degree(e) == 0) {
      out.set_constant(c);
    } else if (total_degree(e) == 1) {
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] == 1) out.set_coeff(static_cast<int>(i), c);
    } else {
      fail(errc::invalid_argument, "polynomial is not affine");
    }
  }
  return out;
}

conversion_report make_report(const abp& out, std::size_t s, int d, std::size_t r,
                              const std::string& path) {
  conversion_report rep;
  rep.s = s;
  rep.d = d;
  rep.r = r;
  rep.path = path;
  rep.out_size = out.size();
  rep.out_width = out.width();
  rep.out_layers = out.layer_count();
  rep.bound_size_rreg = conv_c_prime * upow(static_cast<std::uint64_t>(r), 3) *
                        upow(static_cast<std::uint64_t>(std::max(d, 1)), 2) * s;
  if (path == "Regular") {
    if (d >= 2) {
      rep.bound_size = static_cast<std::uint64_t>(d - 1) * (s - 1);
      rep.bound_width = s - 1;
    } else {
      rep.bound_size = rep.out_size;
      rep.bound_width = rep.out_width;
    }
  } else {
    rep.bound_size = conv_c * upow(static_cast<std::uint64_t>(std::max(d, 1)), 5) * s;
    // no separate width guarantee on this path; width <= size always
    rep.bound_width = rep.bound_size;
  }
  rep.ratio = rep.bound_size == 0
                  ? 0.0
                  : static_cast<double>(rep.out_size) / static_cast<double>(rep.bound_size);
  return rep;
}

}  // namespace

abp regular_pencil_to_abp(const normal_form_pencil& nf, int d) {
  if (nf.r != 1) fail(errc::not_regular, "corank-1 extraction needs corank exactly 1");
  if (d < 2) fail(errc::degree_too_small, "corank-1 extraction needs degree at least 2");
  pencil_blocks bl = blocks(nf);
  std::size_t m = nf.p.size() - 1;
  int nv = nf.p.nvars();
  const field_spec& f = nf.p.field();

  std::vector<linform> b, c;
  for (std::size_t j = 0; j < m; ++j) b.push_back(bl.b.at(0, j));
  for (std::size_t i = 0; i < m; ++i) c.push_back(-bl.c.at(i, 0));
  std::vector<std::size_t> widths(static_cast<std::size_t>(d - 1), m);
  std::vector<grid<linform>> mats(static_cast<std::size_t>(d - 2), bl.d);
  return abp(nv, f, std::move(widths), std::move(b), std::move(c), std::move(mats));
}

vanishing_report check_regular_vanishing(const normal_form_pencil& nf, int d) {
  if (nf.r != 1) fail(errc::not_regular, "vanishing constraints are a corank-1 notion");
  pencil_blocks bl = blocks(nf);
  std::size_t m = nf.p.size() - 1;
  int nv = nf.p.nvars();
  const field_spec& f = nf.p.field();

  vanishing_report rep;
  rep.top_entry_zero = bl.a.at(0, 0).is_zero();

  std::vector<poly> row;
  for (std::size_t j = 0; j < m; ++j) row.push_back(bl.b.at(0, j).to_poly());
  std::vector<poly> col;
  for (std::size_t i = 0; i < m; ++i) col.push_back(bl.c.at(i, 0).to_poly());
  grid<poly> dmat(m, m, poly::zero(nv, f));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) dmat.at(i, j) = bl.d.at(i, j).to_poly();

  for (int i = 0; i <= d - 3; ++i) {
    poly acc = poly::zero(nv, f);
    for (std::size_t j = 0; j < m; ++j) acc += row[j] * col[j];
    rep.series_zero.push_back(acc.is_zero());
    if (i < d - 3) {
      // row <- row * D
      std::vector<poly> next(m, poly::zero(nv, f));
      for (std::size_t u = 0; u < m; ++u) {
        if (row[u].is_zero()) continue;
        for (std::size_t v = 0; v < m; ++v) {
          if (!dmat.at(u, v).is_zero()) next[v] += row[u] * dmat.at(u, v);
        }
      }
      row = std::move(next);
    }
  }
  rep.passed = rep.top_entry_zero &&
               std::all_of(rep.series_zero.begin(), rep.series_zero.end(), [](bool b) { return b; });
  return rep;
}

int tight_truncation_index(int d, std::size_t r) {
  return std::max(-1, d - static_cast<int>(r) - 1);
}

grid<abp> build_w_grid(const normal_form_pencil& nf, int d, std::optional<int> trunc_opt) {
  if (d < 2) fail(errc::degree_too_small, "series grid needs degree at least 2");
  int trunc = trunc_opt.value_or(default_truncation_index(d));
  if (trunc < -1) fail(errc::invalid_argument, "truncation index below -1");

  pencil_blocks bl = blocks(nf);
  std::size_t r = nf.r;
  std::size_t m = nf.p.size() - r;
  int nv = nf.p.nvars();
  const field_spec& f = nf.p.field();
  linform zero_form(nv, f);
  linform one_form = linform::constant(nv, scalar::one(f));

  // Lane layout per entry: constant lane carrying the top-left term, m lanes
  // seeded with the negated top-right row, m series lanes; the repeated
  // matrix is [[1, 0, 0], [0, I, I], [0, 0, D]].
  grid<linform> step(1 + 2 * m, 1 + 2 * m, zero_form);
  step.at(0, 0) = one_form;
  for (std::size_t i = 0; i < m; ++i) {
    step.at(1 + i, 1 + i) = one_form;
    step.at(1 + i, 1 + m + i) = one_form;
    for (std::size_t j = 0; j < m; ++j) step.at(1 + m + i, 1 + m + j) = bl.d.at(i, j);
  }
  std::size_t layers = static_cast<std::size_t>(trunc + 1);
  std::vector<grid<linform>> mats(layers, step);
  std::vector<std::size_t> widths(layers + 1, 1 + 2 * m);

  grid<abp> out(r, r, abp::zero(nv, f));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<linform> b(1 + 2 * m, zero_form), c(1 + 2 * m, zero_form);
      b[0] = one_form;
      for (std::size_t t = 0; t < m; ++t) b[1 + t] = -bl.b.at(i, t);
      c[0] = bl.a.at(i, j);
      for (std::size_t t = 0; t < m; ++t) c[1 + m + t] = bl.c.at(t, j);
      out.at(i, j) = abp(nv, f, widths, std::move(b), std::move(c), mats);
    }
  }
  return out;
}

conversion_result pencil_to_abp(const pencil& p, std::optional<int> degree, convert_mode mode,
                                int trials, std::uint64_t seed) {
  std::size_t s = p.size();
  verdict cert = certify_homogeneous(subject{p}, degree, trials, seed);
  if (!cert.ok()) {
    std::vector<long> data;
    std::string msg = "determinant is not homogeneous";
    if (cert.witness_degrees) {
      data = {cert.witness_degrees->first, cert.witness_degrees->second};
      msg += ": found term degrees " + std::to_string(cert.witness_degrees->first) + " and " +
             std::to_string(cert.witness_degrees->second);
    } else if (cert.degree && degree) {
      data = {*cert.degree, *degree};
      msg += " of degree " + std::to_string(*degree) + ": it is homogeneous of degree " +
             std::to_string(*cert.degree);
    }
    fail(errc::not_homogeneous, msg, std::move(data));
  }

  std::size_t r = constant_rank(p).corank;

  if (cert.identically_zero && !degree && !cert.degree) {
    // Zero determinant with no requested degree: the zero program, reported
    // under the structural dispatch label.
    abp out = abp::zero(p.nvars(), p.field());
    std::string path = r == 1 ? "Regular" : (r == s ? "FullyHomogeneousDirect" : "General");
    conversion_report rep = make_report(out, s, 0, r, path);
    return {std::move(out), std::move(rep)};
  }
  int d = degree ? *degree : *cert.degree;
  if (d < 1) fail(errc::invalid_argument, "degree must be at least 1");

  if (mode == convert_mode::force_regular) {
    if (d < 2) fail(errc::degree_too_small, "corank-1 extraction needs degree at least 2");
    normal_form_pencil nf = normal_form(p);
    if (nf.r != 1) fail(errc::not_regular, "constant part corank is not 1");
    abp out = regular_pencil_to_abp(nf, d);
    conversion_report rep = make_report(out, s, d, nf.r, "Regular");
    return {std::move(out), std::move(rep)};
  }
  if (mode == convert_mode::force_general) {
    if (d < 2) fail(errc::degree_too_small, "series path needs degree at least 2");
    normal_form_pencil nf = normal_form(p);
    grid<abp> w = build_w_grid(nf, d);
    abp sub = abp_substitute(det_abp(nf.r, p.field()), w);
    hom_component_result hc = hom_component_abp(sub, d);
    abp out = hc.program ? *hc.program : abp::zero(p.nvars(), p.field());
    conversion_report rep = make_report(out, s, d, nf.r, "General");
    return {std::move(out), std::move(rep)};
  }

  // automatic dispatch
  if (d == 1) {
    if (s > 12) fail(errc::invalid_argument, "degree-1 conversion needs symbolic scale");
    poly f = symbolic_det(p);
    linform form = linform_of_affine_poly(f);
    abp out(p.nvars(), p.field(), {1}, {form},
            {linform::constant(p.nvars(), scalar::one(p.field()))}, {});
    conversion_report rep = make_report(out, s, d, r, "Regular");
    return {std::move(out), std::move(rep)};
  }
  if (r == s) {
    if (s != static_cast<std::size_t>(d))
      fail(errc::size_degree_mismatch,
           "zero constant part: determinant degree must equal the pencil size",
           {static_cast<long>(s), d});
    abp direct = substitute_linear(det_abp(s, p.field()), p.entries());
    hom_component_result hc = hom_component_abp(direct, d);
    abp out = hc.program ? *hc.program : abp::zero(p.nvars(), p.field());
    conversion_report rep = make_report(out, s, d, r, "FullyHomogeneousDirect");
    return {std::move(out), std::move(rep)};
  }
  if (r == 1) {
    normal_form_pencil nf = normal_form(p);
    abp out = regular_pencil_to_abp(nf, d);
    conversion_report rep = make_report(out, s, d, nf.r, "Regular");
    return {std::move(out), std::move(rep)};
  }
  normal_form_pencil nf = normal_form(p);
  grid<abp> w = build_w_grid(nf, d);
  abp sub = abp_substitute(det_abp(nf.r, p.field()), w);
  hom_component_result hc = hom_component_abp(sub, d);
  abp out = hc.program ? *hc.program : abp::zero(p.nvars(), p.field());
  conversion_report rep = make_report(out, s, d, nf.r, "General");
  return {std::move(out), std::move(rep)};
}

pencil abp_to_pencil(const abp& a) {
  int nv = a.nvars();
  const field_spec& f = a.field();
  std::vector<scalar> origin(static_cast<std::size_t>(nv), scalar::zero(f));
  if (!a.eval(origin).is_zero())
    fail(errc::nonzero_constant_term, "computed polynomial has a nonzero constant term");

  std::size_t k = a.num_mats();
  std::size_t n = a.size() + 2;  // source, layer vertices, sink
  pencil out(n, nv, f);

  std::vector<std::size_t> offset(k + 1);
  std::size_t pos = 1;
  for (std::size_t t = 0; t <= k; ++t) {
    offset[t] = pos;
    pos += a.widths()[t];
  }
  std::size_t sink = n - 1;

  linform one = linform::constant(nv, scalar::one(f));
  for (std::size_t i = 1; i < n; ++i) out.at(i, i) = one;
  out.at(sink, 0) = one;

  // A source-to-sink path uses k+2 edges; its cycle with the closing entry
  // has sign (-1)^(k+2), so the source row is negated for odd k.
  bool negate = k % 2 == 1;
  auto put = [&](std::size_t from, std::size_t to, const linform& l) {
    out.at(from, to) = (negate && from == 0) ? -l : l;
  };
  for (std::size_t v = 0; v < a.widths()[0]; ++v) put(0, offset[0] + v, a.b()[v]);
  for (std::size_t t = 0; t < k; ++t) {
    for (std::size_t u = 0; u < a.widths()[t]; ++u)
      for (std::size_t v = 0; v < a.widths()[t + 1]; ++v)
        put(offset[t] + u, offset[t + 1] + v, a.mat(t).at(u, v));
  }
  for (std::size_t u = 0; u < a.widths()[k]; ++u) put(offset[k] + u, sink, a.c()[u]);
  return out;
}

}  // namespace detabp
