#include "detabp/abp.hpp"

#include <algorithm>
#include <map>

namespace detabp {

namespace {

using lgrid = grid<linform>;

scalar_matrix constant_parts(const lgrid& m, const field_spec& f) {
  scalar_matrix r(m.rows(), m.cols(), scalar::zero(f));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j).constant_term();
  return r;
}

lgrid linear_parts(const lgrid& m, int nvars, const field_spec& f) {
  lgrid r(m.rows(), m.cols(), linform(nvars, f));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j).linear_part();
  return r;
}

// scalar matrix times matrix of forms
lgrid mul_sl(const scalar_matrix& a, const lgrid& b, int nvars, const field_spec& f) {
  if (a.cols() != b.rows()) fail(errc::dimension_mismatch, "matrix product shapes");
  lgrid r(a.rows(), b.cols(), linform(nvars, f));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, j) += b.at(k, j).scaled(a.at(i, k));
    }
  }
  return r;
}

// matrix of forms times scalar matrix
lgrid mul_ls(const lgrid& a, const scalar_matrix& b, int nvars, const field_spec& f) {
  if (a.cols() != b.rows()) fail(errc::dimension_mismatch, "matrix product shapes");
  lgrid r(a.rows(), b.cols(), linform(nvars, f));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, j) += a.at(i, k).scaled(b.at(k, j));
    }
  }
  return r;
}

}  // namespace

abp::abp(int nvars, field_spec f, std::vector<std::size_t> widths, std::vector<linform> b,
         std::vector<linform> c, std::vector<grid<linform>> mats)
    : nvars_(nvars),
      field_(f),
      widths_(std::move(widths)),
      b_(std::move(b)),
      c_(std::move(c)),
      mats_(std::move(mats)) {
  if (widths_.empty()) fail(errc::invalid_argument, "program needs at least one vertex layer");
  if (widths_.size() != mats_.size() + 1) fail(errc::dimension_mismatch, "layer/matrix count mismatch");
  for (std::size_t w : widths_) {
    if (w == 0) fail(errc::invalid_argument, "empty vertex layer");
  }
  if (b_.size() != widths_.front() || c_.size() != widths_.back())
    fail(errc::dimension_mismatch, "contraction vector lengths");
  for (std::size_t t = 0; t < mats_.size(); ++t) {
    if (mats_[t].rows() != widths_[t] || mats_[t].cols() != widths_[t + 1])
      fail(errc::dimension_mismatch, "matrix layer shape");
  }
  auto check_form = [&](const linform& l) {
    if (l.nvars() != nvars_) fail(errc::variable_count_mismatch, "label variable count");
    if (!(l.field() == field_)) fail(errc::field_mismatch, "label field");
  };
  for (const auto& l : b_) check_form(l);
  for (const auto& l : c_) check_form(l);
  for (const auto& m : mats_) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) check_form(m.at(i, j));
  }
}

abp abp::zero(int nvars, const field_spec& f) {
  return abp(nvars, f, {1}, {linform(nvars, f)}, {linform(nvars, f)}, {});
}

std::size_t abp::size() const {
  std::size_t s = 0;
  for (std::size_t w : widths_) s += w;
  return s;
}

std::size_t abp::width() const { return *std::max_element(widths_.begin(), widths_.end()); }

bool abp::is_homogeneous() const {
  for (const auto& l : b_) {
    if (!l.is_homogeneous()) return false;
  }
  for (const auto& l : c_) {
    if (!l.is_homogeneous()) return false;
  }
  for (const auto& m : mats_) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (!m.at(i, j).is_homogeneous()) return false;
      }
    }
  }
  return true;
}

scalar abp::eval(const std::vector<scalar>& point) const {
  std::vector<scalar> row(widths_.front(), scalar::zero(field_));
  for (std::size_t v = 0; v < row.size(); ++v) row[v] = b_[v].eval(point);
  for (const auto& m : mats_) {
    std::vector<scalar> next(m.cols(), scalar::zero(field_));
    for (std::size_t u = 0; u < m.rows(); ++u) {
      if (row[u].is_zero()) continue;
      for (std::size_t v = 0; v < m.cols(); ++v) {
        const linform& l = m.at(u, v);
        if (!l.is_zero()) next[v] += row[u] * l.eval(point);
      }
    }
    row = std::move(next);
  }
  scalar acc = scalar::zero(field_);
  for (std::size_t v = 0; v < row.size(); ++v) acc += row[v] * c_[v].eval(point);
  return acc;
}

poly abp::to_poly() const {
  std::vector<poly> row;
  row.reserve(widths_.front());
  for (std::size_t v = 0; v < widths_.front(); ++v) row.push_back(b_[v].to_poly());
  for (const auto& m : mats_) {
    std::vector<poly> next(m.cols(), poly::zero(nvars_, field_));
    for (std::size_t u = 0; u < m.rows(); ++u) {
      if (row[u].is_zero()) continue;
      for (std::size_t v = 0; v < m.cols(); ++v) {
        const linform& l = m.at(u, v);
        if (!l.is_zero()) next[v] += row[u] * l.to_poly();
      }
    }
    row = std::move(next);
  }
  poly acc = poly::zero(nvars_, field_);
  for (std::size_t v = 0; v < row.size(); ++v) {
    if (!row[v].is_zero()) acc += row[v] * c_[v].to_poly();
  }
  return acc;
}

abp pad_to_mats(const abp& a, std::size_t k) {
  if (k < a.num_mats()) fail(errc::invalid_argument, "cannot shrink matrix layer count");
  if (k == a.num_mats()) return a;
  const field_spec& f = a.field();
  int nv = a.nvars();
  std::vector<std::size_t> widths = a.widths();
  std::vector<grid<linform>> mats;
  mats.reserve(k);
  for (std::size_t t = 0; t < a.num_mats(); ++t) mats.push_back(a.mat(t));
  grid<linform> col(widths.back(), 1, linform(nv, f));
  for (std::size_t i = 0; i < widths.back(); ++i) col.at(i, 0) = a.c()[i];
  mats.push_back(std::move(col));
  widths.push_back(1);
  linform one = linform::constant(nv, scalar::one(f));
  while (mats.size() < k) {
    mats.push_back(grid<linform>(1, 1, one));
    widths.push_back(1);
  }
  return abp(nv, f, std::move(widths), a.b(), {one}, std::move(mats));
}

abp abp_sum(const abp& x, const abp& y) {
  if (x.nvars() != y.nvars()) fail(errc::variable_count_mismatch, "summand variable counts differ");
  if (!(x.field() == y.field())) fail(errc::field_mismatch, "summand fields differ");
  std::size_t k = std::max(x.num_mats(), y.num_mats());
  abp a = pad_to_mats(x, k);
  abp b = pad_to_mats(y, k);
  const field_spec& f = a.field();
  int nv = a.nvars();
  std::vector<std::size_t> widths(k + 1);
  for (std::size_t t = 0; t <= k; ++t) widths[t] = a.widths()[t] + b.widths()[t];
  std::vector<linform> bb, cc;
  bb.insert(bb.end(), a.b().begin(), a.b().end());
  bb.insert(bb.end(), b.b().begin(), b.b().end());
  cc.insert(cc.end(), a.c().begin(), a.c().end());
  cc.insert(cc.end(), b.c().begin(), b.c().end());
  std::vector<grid<linform>> mats;
  mats.reserve(k);
  for (std::size_t t = 0; t < k; ++t) {
    grid<linform> m(widths[t], widths[t + 1], linform(nv, f));
    for (std::size_t i = 0; i < a.widths()[t]; ++i)
      for (std::size_t j = 0; j < a.widths()[t + 1]; ++j) m.at(i, j) = a.mat(t).at(i, j);
    for (std::size_t i = 0; i < b.widths()[t]; ++i)
      for (std::size_t j = 0; j < b.widths()[t + 1]; ++j)
        m.at(a.widths()[t] + i, a.widths()[t + 1] + j) = b.mat(t).at(i, j);
    mats.push_back(std::move(m));
  }
  return abp(nv, f, std::move(widths), std::move(bb), std::move(cc), std::move(mats));
}

abp prune_dead(const abp& a) {
  std::size_t k = a.num_mats();
  std::vector<std::vector<bool>> fwd(k + 1), bwd(k + 1);
  fwd[0].resize(a.widths()[0]);
  for (std::size_t v = 0; v < a.widths()[0]; ++v) fwd[0][v] = !a.b()[v].is_zero();
  for (std::size_t t = 0; t < k; ++t) {
    fwd[t + 1].assign(a.widths()[t + 1], false);
    for (std::size_t u = 0; u < a.widths()[t]; ++u) {
      if (!fwd[t][u]) continue;
      for (std::size_t v = 0; v < a.widths()[t + 1]; ++v) {
        if (!a.mat(t).at(u, v).is_zero()) fwd[t + 1][v] = true;
      }
    }
  }
  bwd[k].resize(a.widths()[k]);
  for (std::size_t v = 0; v < a.widths()[k]; ++v) bwd[k][v] = !a.c()[v].is_zero();
  for (std::size_t t = k; t-- > 0;) {
    bwd[t].assign(a.widths()[t], false);
    for (std::size_t u = 0; u < a.widths()[t]; ++u) {
      for (std::size_t v = 0; v < a.widths()[t + 1]; ++v) {
        if (bwd[t + 1][v] && !a.mat(t).at(u, v).is_zero()) {
          bwd[t][u] = true;
          break;
        }
      }
    }
  }
  std::vector<std::vector<std::size_t>> keep(k + 1);
  for (std::size_t t = 0; t <= k; ++t) {
    for (std::size_t v = 0; v < a.widths()[t]; ++v) {
      if (fwd[t][v] && bwd[t][v]) keep[t].push_back(v);
    }
    if (keep[t].empty()) return abp::zero(a.nvars(), a.field());
  }
  std::vector<std::size_t> widths(k + 1);
  for (std::size_t t = 0; t <= k; ++t) widths[t] = keep[t].size();
  std::vector<linform> b, c;
  for (std::size_t v : keep[0]) b.push_back(a.b()[v]);
  for (std::size_t v : keep[k]) c.push_back(a.c()[v]);
  std::vector<grid<linform>> mats;
  for (std::size_t t = 0; t < k; ++t) {
    grid<linform> m(widths[t], widths[t + 1], linform(a.nvars(), a.field()));
    for (std::size_t i = 0; i < widths[t]; ++i)
      for (std::size_t j = 0; j < widths[t + 1]; ++j) m.at(i, j) = a.mat(t).at(keep[t][i], keep[t + 1][j]);
    mats.push_back(std::move(m));
  }
  return abp(a.nvars(), a.field(), std::move(widths), std::move(b), std::move(c), std::move(mats));
}

namespace {

struct gadget_slot {
  std::size_t u, v;       // outer edge endpoints
  bool is_const;
  std::size_t i = 0, j = 0;  // inner grid position for copy slots
  scalar coeff;
};

}  // namespace

abp abp_substitute(const abp& outer, const grid<abp>& inner) {
  std::size_t m = inner.rows();
  if (inner.cols() != m || m == 0) fail(errc::dimension_mismatch, "inner grid must be square");
  if (outer.nvars() != static_cast<int>(m * m))
    fail(errc::variable_count_mismatch, "outer program needs one variable per inner entry");
  int nv = inner.at(0, 0).nvars();
  const field_spec& f = outer.field();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (inner.at(i, j).nvars() != nv) fail(errc::variable_count_mismatch, "inner variable counts differ");
      if (!(inner.at(i, j).field() == f)) fail(errc::field_mismatch, "inner field differs");
    }
  }
  std::size_t kappa = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) kappa = std::max(kappa, inner.at(i, j).num_mats());
  grid<abp> padded(m, m, abp::zero(nv, f));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) padded.at(i, j) = pad_to_mats(inner.at(i, j), kappa);

  std::size_t k_out = outer.num_mats();
  std::vector<std::size_t> widths;
  std::vector<linform> out_b, out_c;
  std::vector<grid<linform>> out_mats;
  linform zero_form(nv, f);
  linform one_form = linform::constant(nv, scalar::one(f));

  for (std::size_t t = 0; t <= k_out + 1; ++t) {
    std::size_t prev = t == 0 ? 1 : outer.widths()[t - 1];
    std::size_t next = t == k_out + 1 ? 1 : outer.widths()[t];
    auto label = [&](std::size_t u, std::size_t v) -> const linform& {
      if (t == 0) return outer.b()[v];
      if (t == k_out + 1) return outer.c()[u];
      return outer.mat(t - 1).at(u, v);
    };

    std::vector<gadget_slot> slots;
    for (std::size_t u = 0; u < prev; ++u) {
      for (std::size_t v = 0; v < next; ++v) {
        const linform& l = label(u, v);
        if (!l.constant_term().is_zero())
          slots.push_back({u, v, true, 0, 0, l.constant_term()});
        for (const auto& [idx, co] : l.coeffs())
          slots.push_back({u, v, false, static_cast<std::size_t>(idx) / m,
                           static_cast<std::size_t>(idx) % m, co});
      }
    }
    if (slots.empty()) slots.push_back({0, 0, true, 0, 0, scalar::zero(f)});

    // slot offsets per intermediate layer (copies may have uneven widths)
    std::vector<std::size_t> layer_w(kappa + 1, 0);
    std::vector<std::vector<std::size_t>> off(kappa + 1, std::vector<std::size_t>(slots.size(), 0));
    for (std::size_t q = 0; q <= kappa; ++q) {
      std::size_t pos = 0;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        off[q][s] = pos;
        pos += slots[s].is_const ? 1 : padded.at(slots[s].i, slots[s].j).widths()[q];
      }
      layer_w[q] = pos;
    }

    // entry layer: prev x layer_w[0]
    grid<linform> entry(prev, layer_w[0], zero_form);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      const auto& sl = slots[s];
      if (sl.is_const) {
        entry.at(sl.u, off[0][s]) = linform::constant(nv, sl.coeff);
      } else {
        const abp& in = padded.at(sl.i, sl.j);
        for (std::size_t w = 0; w < in.widths()[0]; ++w)
          entry.at(sl.u, off[0][s] + w) = in.b()[w].scaled(sl.coeff);
      }
    }
    // internal layers
    std::vector<grid<linform>> internal;
    for (std::size_t q = 1; q <= kappa; ++q) {
      grid<linform> z(layer_w[q - 1], layer_w[q], zero_form);
      for (std::size_t s = 0; s < slots.size(); ++s) {
        const auto& sl = slots[s];
        if (sl.is_const) {
          z.at(off[q - 1][s], off[q][s]) = one_form;
        } else {
          const abp& in = padded.at(sl.i, sl.j);
          for (std::size_t x = 0; x < in.widths()[q - 1]; ++x)
            for (std::size_t y = 0; y < in.widths()[q]; ++y)
              z.at(off[q - 1][s] + x, off[q][s] + y) = in.mat(q - 1).at(x, y);
        }
      }
      internal.push_back(std::move(z));
    }
    // exit layer: layer_w[kappa] x next
    grid<linform> exit(layer_w[kappa], next, zero_form);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      const auto& sl = slots[s];
      if (sl.is_const) {
        exit.at(off[kappa][s], sl.v) = one_form;
      } else {
        const abp& in = padded.at(sl.i, sl.j);
        for (std::size_t w = 0; w < in.widths()[kappa]; ++w)
          exit.at(off[kappa][s] + w, sl.v) = in.c()[w];
      }
    }

    if (t == 0) {
      out_b.assign(layer_w[0], zero_form);
      for (std::size_t v = 0; v < layer_w[0]; ++v) out_b[v] = entry.at(0, v);
    } else {
      out_mats.push_back(std::move(entry));
    }
    for (std::size_t q = 1; q <= kappa; ++q) out_mats.push_back(std::move(internal[q - 1]));
    if (t == k_out + 1) {
      out_c.assign(layer_w[kappa], zero_form);
      for (std::size_t u = 0; u < layer_w[kappa]; ++u) out_c[u] = exit.at(u, 0);
    } else {
      out_mats.push_back(std::move(exit));
    }
  }
  widths.push_back(out_b.size());
  for (const auto& mt : out_mats) widths.push_back(mt.cols());
  return prune_dead(abp(nv, f, std::move(widths), std::move(out_b), std::move(out_c), std::move(out_mats)));
}

abp substitute_linear(const abp& outer, const grid<linform>& entries) {
  std::size_t m = entries.rows();
  if (entries.cols() != m || m == 0) fail(errc::dimension_mismatch, "entry grid must be square");
  if (outer.nvars() != static_cast<int>(m * m))
    fail(errc::variable_count_mismatch, "outer program needs one variable per entry");
  int nv = entries.at(0, 0).nvars();
  const field_spec& f = outer.field();
  auto compose = [&](const linform& l) {
    linform r = linform::constant(nv, l.constant_term());
    for (const auto& [idx, co] : l.coeffs())
      r += entries.at(static_cast<std::size_t>(idx) / m, static_cast<std::size_t>(idx) % m).scaled(co);
    return r;
  };
  std::vector<linform> b, c;
  for (const auto& l : outer.b()) b.push_back(compose(l));
  for (const auto& l : outer.c()) c.push_back(compose(l));
  std::vector<grid<linform>> mats;
  for (std::size_t t = 0; t < outer.num_mats(); ++t) {
    grid<linform> mt(outer.mat(t).rows(), outer.mat(t).cols(), linform(nv, f));
    for (std::size_t i = 0; i < mt.rows(); ++i)
      for (std::size_t j = 0; j < mt.cols(); ++j) mt.at(i, j) = compose(outer.mat(t).at(i, j));
    mats.push_back(std::move(mt));
  }
  return abp(nv, f, outer.widths(), std::move(b), std::move(c), std::move(mats));
}

namespace {

// Clow-walk states: mid-clow at u with head h (u > h), or "fresh" about to
// start a clow with head h after closing all previous ones.
struct clow_state {
  bool fresh;
  std::size_t h, u;
};

std::vector<clow_state> clow_states(std::size_t n) {
  std::vector<clow_state> st;
  for (std::size_t h = 0; h + 1 < n; ++h)
    for (std::size_t u = h + 1; u < n; ++u) st.push_back({false, h, u});
  for (std::size_t h = 1; h < n; ++h) st.push_back({true, h, h});
  return st;
}

}  // namespace

abp det_abp(std::size_t n, const field_spec& f) {
  if (n == 0) fail(errc::invalid_argument, "determinant of empty matrix");
  int nv = static_cast<int>(n * n);
  auto x = [&](std::size_t i, std::size_t j) {
    return linform::var(nv, f, static_cast<int>(i * n + j));
  };
  scalar sign_n = n % 2 == 0 ? scalar::one(f) : -scalar::one(f);
  if (n == 1) {
    return abp(nv, f, {1}, {-x(0, 0)}, {linform::constant(nv, sign_n)}, {});
  }

  std::vector<clow_state> st = clow_states(n);
  std::size_t w = st.size();
  linform zero_form(nv, f);

  std::vector<linform> b(w, zero_form);
  for (std::size_t s = 0; s < w; ++s) {
    if (!st[s].fresh) {
      b[s] = x(st[s].h, st[s].u);
    } else {
      // arrived by closing a single length-1 clow with a smaller head
      linform acc(nv, f);
      for (std::size_t h0 = 0; h0 < st[s].h; ++h0) acc -= x(h0, h0);
      b[s] = acc;
    }
  }

  std::vector<std::size_t> widths;
  std::vector<grid<linform>> mats;
  widths.push_back(w);
  for (std::size_t t = 1; t + 1 < n; ++t) {
    grid<linform> mt(w, w, zero_form);
    for (std::size_t a = 0; a < w; ++a) {
      for (std::size_t bb = 0; bb < w; ++bb) {
        const clow_state& from = st[a];
        const clow_state& to = st[bb];
        if (!to.fresh) {
          // extend the current clow with one more edge
          if (to.h == from.h && to.u > from.h)
            mt.at(a, bb) = from.fresh ? x(from.h, to.u) : x(from.u, to.u);
        } else if (to.h > from.h) {
          // close the current clow (edge back to its head) and pick the next head
          mt.at(a, bb) = from.fresh ? -x(from.h, from.h) : -x(from.u, from.h);
        }
      }
    }
    mats.push_back(std::move(mt));
    widths.push_back(w);
  }
  // final step: every state closes its clow into the terminal vertex
  grid<linform> last(w, 1, zero_form);
  for (std::size_t a = 0; a < w; ++a)
    last.at(a, 0) = st[a].fresh ? -x(st[a].h, st[a].h) : -x(st[a].u, st[a].h);
  mats.push_back(std::move(last));
  widths.push_back(1);

  abp out(nv, f, std::move(widths), std::move(b), {linform::constant(nv, sign_n)}, std::move(mats));
  return prune_dead(out);
}

grid<linform> series_block_matrix(const grid<linform>& d_block) {
  std::size_t m = d_block.rows();
  if (d_block.cols() != m) fail(errc::dimension_mismatch, "series block must be square");
  int nv = m > 0 ? d_block.at(0, 0).nvars() : 0;
  field_spec f = m > 0 ? d_block.at(0, 0).field() : field_spec::rationals();
  grid<linform> z(2 * m, 2 * m, linform(nv, f));
  linform one = linform::constant(nv, scalar::one(f));
  for (std::size_t i = 0; i < m; ++i) {
    z.at(i, i) = one;
    z.at(i, m + i) = one;
    for (std::size_t j = 0; j < m; ++j) z.at(m + i, m + j) = d_block.at(i, j);
  }
  return z;
}

grid<abp> geometric_series_grid(const grid<linform>& d_block, int d) {
  if (d < 2) fail(errc::degree_too_small, "series needs degree at least 2");
  std::size_t m = d_block.rows();
  if (d_block.cols() != m || m == 0) fail(errc::dimension_mismatch, "series block must be square");
  int nv = d_block.at(0, 0).nvars();
  const field_spec& f = d_block.at(0, 0).field();
  grid<linform> z = series_block_matrix(d_block);
  std::vector<grid<linform>> mats(static_cast<std::size_t>(d - 1), z);
  std::vector<std::size_t> widths(static_cast<std::size_t>(d), 2 * m);
  grid<abp> out(m, m, abp::zero(nv, f));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<linform> b(2 * m, linform(nv, f)), c(2 * m, linform(nv, f));
      b[i] = linform::constant(nv, scalar::one(f));
      c[m + j] = linform::constant(nv, scalar::one(f));
      out.at(i, j) = abp(nv, f, widths, std::move(b), std::move(c), mats);
    }
  }
  return out;
}

hom_component_result hom_component_abp(const abp& a, int d) {
  if (d < 0) fail(errc::invalid_argument, "negative degree");
  hom_component_result res;
  res.split_size = a.size() * static_cast<std::size_t>(d + 1);
  res.split_width = a.width() * static_cast<std::size_t>(d + 1);

  int nv = a.nvars();
  const field_spec& f = a.field();
  std::size_t k = a.num_mats();

  // Edge-label layers 0..k+1 as grids: b row, matrices, c column.
  std::vector<grid<linform>> layers;
  {
    grid<linform> row(1, a.widths()[0], linform(nv, f));
    for (std::size_t v = 0; v < a.widths()[0]; ++v) row.at(0, v) = a.b()[v];
    layers.push_back(std::move(row));
    for (std::size_t t = 0; t < k; ++t) layers.push_back(a.mat(t));
    grid<linform> col(a.widths()[k], 1, linform(nv, f));
    for (std::size_t u = 0; u < a.widths()[k]; ++u) col.at(u, 0) = a.c()[u];
    layers.push_back(std::move(col));
  }
  std::size_t L = layers.size();  // k + 2
  std::vector<scalar_matrix> cparts;
  std::vector<grid<linform>> lparts;
  for (const auto& layer : layers) {
    cparts.push_back(constant_parts(layer, f));
    lparts.push_back(linear_parts(layer, nv, f));
  }

  // Prefix and suffix constant-run products through the edge layers.
  std::vector<scalar_matrix> pref(L + 1), suf(L + 1);
  pref[0] = scalar_matrix(1, 1, scalar::one(f));
  for (std::size_t t = 0; t < L; ++t) pref[t + 1] = scalar_mat_mul(pref[t], cparts[t]);
  suf[L] = scalar_matrix(1, 1, scalar::one(f));
  for (std::size_t t = L; t-- > 0;) suf[t] = scalar_mat_mul(cparts[t], suf[t + 1]);

  if (d == 0) {
    res.constant = scalar_abp{pref[L].at(0, 0)};
    return res;
  }
  if (d == 1) {
    linform form(nv, f);
    for (std::size_t t = 0; t < L; ++t) {
      lgrid term = mul_ls(mul_sl(pref[t], lparts[t], nv, f), suf[t + 1], nv, f);
      form += term.at(0, 0);
    }
    res.program = abp(nv, f, {1}, {form}, {linform::constant(nv, scalar::one(f))}, {});
    return res;
  }

  // States at output layer e are (t, v): the e-th linear step was taken at
  // edge layer t landing on vertex v; t ranges so that e linear steps fit
  // before and d - e after.
  auto t_range = [&](int e) {
    std::vector<std::size_t> ts;
    for (std::size_t t = 0; t < L - 1; ++t) {  // t indexes vertex layers 0..k
      bool enough_before = static_cast<int>(t) >= e - 1;
      bool enough_after = static_cast<int>(L - 1 - t) >= d - e;
      if (enough_before && enough_after) ts.push_back(t);
    }
    return ts;
  };
  std::vector<std::vector<std::size_t>> states(static_cast<std::size_t>(d));
  for (int e = 1; e <= d - 1; ++e) {
    states[static_cast<std::size_t>(e)] = t_range(e);
    if (states[static_cast<std::size_t>(e)].empty()) {
      res.program = abp::zero(nv, f);
      return res;
    }
  }

  auto layer_width = [&](const std::vector<std::size_t>& ts) {
    std::size_t w = 0;
    for (std::size_t t : ts) w += a.widths()[t];
    return w;
  };

  // R[t][t'] = C_{t+1} ... C_{t'-1} * L_{t'} for t < t' (t, t' vertex-layer based:
  // linear step at edge layer t' lands on vertex layer t' for t' <= k).
  std::vector<std::vector<lgrid>> R(L, std::vector<lgrid>(L + 1));
  for (std::size_t t = 0; t + 1 < L; ++t) {
    scalar_matrix run = scalar_identity(a.widths()[t], f);
    for (std::size_t tp = t + 1; tp < L; ++tp) {
      R[t][tp] = mul_sl(run, lparts[tp], nv, f);
      if (tp < L - 1) run = scalar_mat_mul(run, cparts[tp]);
    }
  }

  std::vector<std::size_t> widths;
  std::vector<linform> out_b, out_c;
  std::vector<grid<linform>> out_mats;

  const auto& s1 = states[1];
  out_b.clear();
  for (std::size_t t : s1) {
    lgrid row = mul_sl(pref[t], lparts[t], nv, f);  // 1 x w_t
    for (std::size_t v = 0; v < a.widths()[t]; ++v) out_b.push_back(row.at(0, v));
  }
  widths.push_back(layer_width(s1));

  for (int e = 1; e <= d - 2; ++e) {
    const auto& from = states[static_cast<std::size_t>(e)];
    const auto& to = states[static_cast<std::size_t>(e + 1)];
    grid<linform> mt(layer_width(from), layer_width(to), linform(nv, f));
    std::size_t roff = 0;
    for (std::size_t t : from) {
      std::size_t coff = 0;
      for (std::size_t tp : to) {
        if (tp > t) {
          const lgrid& blk = R[t][tp];
          for (std::size_t u = 0; u < a.widths()[t]; ++u)
            for (std::size_t v = 0; v < a.widths()[tp]; ++v) mt.at(roff + u, coff + v) = blk.at(u, v);
        }
        coff += a.widths()[tp];
      }
      roff += a.widths()[t];
    }
    out_mats.push_back(std::move(mt));
    widths.push_back(layer_width(to));
  }

  const auto& sl = states[static_cast<std::size_t>(d - 1)];
  for (std::size_t t : sl) {
    // sum over the edge layer taking the final linear step, absorbing the
    // trailing constant run
    std::vector<linform> acc(a.widths()[t], linform(nv, f));
    for (std::size_t tp = t + 1; tp < L; ++tp) {
      lgrid term = mul_ls(R[t][tp], suf[tp + 1], nv, f);  // w_t x 1
      for (std::size_t u = 0; u < a.widths()[t]; ++u) acc[u] += term.at(u, 0);
    }
    for (std::size_t u = 0; u < a.widths()[t]; ++u) out_c.push_back(acc[u]);
  }

  res.program =
      prune_dead(abp(nv, f, std::move(widths), std::move(out_b), std::move(out_c), std::move(out_mats)));
  return res;
}

}  // namespace detabp
