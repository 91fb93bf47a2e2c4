// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria are exact-resource and oracle-equivalence checks; the
// random instances are seed-fixed so every run sees the same inputs.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "detabp/abp.hpp"
#include "detabp/cli.hpp"
#include "detabp/convert.hpp"
#include "detabp/instgen.hpp"
#include "detabp/linalg.hpp"
#include "detabp/pencil.hpp"
#include "detabp/poly.hpp"
#include "detabp/rng.hpp"
#include "detabp/verify.hpp"

namespace {

using namespace detabp;

const field_spec rat = field_spec::rationals();

struct checker {
  std::vector<std::string> notes;
  int checks = 0;

  void require(bool cond, const std::string& msg) {
    ++checks;
    if (cond) return;
    if (notes.size() < 8) notes.push_back(msg);
    else if (notes.size() == 8) notes.push_back("(further failures suppressed)");
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// First-row Laplace expansion over polynomial entries; fine for the desk
// sizes used here (r <= 3 grids, generic matrices up to 5x5).
poly poly_mat_det(const grid<poly>& m) {
  int nv = m.rows() ? m.at(0, 0).nvars() : 0;
  field_spec f = m.rows() ? m.at(0, 0).field() : rat;
  std::function<poly(const std::vector<std::size_t>&, std::size_t)> go =
      [&](const std::vector<std::size_t>& cols, std::size_t row) -> poly {
    if (cols.empty()) return poly::constant(nv, scalar::one(f));
    poly acc = poly::zero(nv, f);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      std::vector<std::size_t> rest;
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (j != k) rest.push_back(cols[j]);
      poly term = m.at(row, cols[k]) * go(rest, row + 1);
      acc += (k % 2 == 0) ? term : -term;
    }
    return acc;
  };
  std::vector<std::size_t> cols(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) cols[j] = j;
  return go(cols, 0);
}

poly grid_det_poly(const grid<abp>& w) {
  grid<poly> m(w.rows(), w.cols(), poly::zero(w.at(0, 0).nvars(), w.at(0, 0).field()));
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j) m.at(i, j) = w.at(i, j).to_poly();
  return poly_mat_det(m);
}

poly generic_det_poly(std::size_t n) {
  grid<poly> m(n, n, poly::zero(static_cast<int>(n * n), rat));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m.at(i, j) = poly::var(static_cast<int>(n * n), rat, static_cast<int>(i * n + j));
  return poly_mat_det(m);
}

// Random affine-label program, guaranteed non-homogeneous: layer shapes and
// labels come from the stream, then one constant is forced if the draw
// happened to be homogeneous.
abp random_affine_abp(std::uint64_t seed) {
  rng gen(seed, 0xacc7);
  int n = 2 + static_cast<int>(gen.below(3));
  std::size_t k = 1 + gen.below(3);  // matrix layers; degree cap k+2 <= 5
  std::vector<std::size_t> widths(k + 1);
  for (auto& w : widths) w = 1 + gen.below(3);
  auto label = [&]() {
    linform l = random_hom_linform(gen, n, rat);
    if (gen.flip()) l.set_constant(scalar::from_int(rat, gen.range(-2, 2)));
    return l;
  };
  std::vector<linform> b, c;
  for (std::size_t v = 0; v < widths.front(); ++v) b.push_back(label());
  for (std::size_t v = 0; v < widths.back(); ++v) c.push_back(label());
  std::vector<grid<linform>> mats;
  for (std::size_t t = 0; t < k; ++t) {
    grid<linform> m(widths[t], widths[t + 1], linform(n, rat));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = label();
    mats.push_back(m);
  }
  abp a(n, rat, widths, b, c, mats);
  if (a.is_homogeneous()) {
    b[0].set_constant(scalar::one(rat));
    a = abp(n, rat, widths, b, c, mats);
  }
  return a;
}

struct regular_instance {
  normal_form_pencil nf;
  int d = 0;
  std::size_t s = 0;
};

struct symbolic_instance {
  normal_form_pencil nf;
  int d = 0;
  poly f;
  symbolic_instance(normal_form_pencil n, int dd, poly ff)
      : nf(std::move(n)), d(dd), f(std::move(ff)) {}
};

std::string fmt_size(std::size_t got, std::size_t want, const char* what) {
  std::ostringstream ss;
  ss << what << ": got " << got << ", want " << want;
  return ss.str();
}

// Shared across criteria: 1 feeds 2, 3 feeds 4 and 5.
std::vector<regular_instance> g_regular;
std::vector<symbolic_instance> g_symbolic;

void criterion_regular_exactness(checker& c) {
  auto t0 = std::chrono::steady_clock::now();
  auto check_one = [&](const pencil& p, int d, const abp& src_tag) {
    (void)src_tag;
    std::size_t s = p.size();
    conversion_result res = pencil_to_abp(p);
    c.require(res.report.path == "Regular", "dispatch path: got " + res.report.path);
    c.require(res.program.width() == s - 1, fmt_size(res.program.width(), s - 1, "width"));
    c.require(res.program.size() == static_cast<std::size_t>(d - 1) * (s - 1),
              fmt_size(res.program.size(), static_cast<std::size_t>(d - 1) * (s - 1), "size"));
    c.require(res.program.is_homogeneous(), "output not homogeneous");
    verdict v = pit_equal(p, res.program, 200, 17);
    c.require(v.ok() && v.trials == 200, "identity test failed: " + v.outcome);
    g_regular.push_back({normal_form(p), d, s});
  };
  for (int n = 2; n <= 6; ++n)
    for (int d = 2; d <= 5; ++d) {
      abp a = power_sum_abp(n, d, rat);
      check_one(abp_to_pencil(a), d, a);
    }
  struct combo {
    int n, d;
    std::size_t w;
  };
  const combo combos[] = {{2, 2, 4}, {3, 3, 4}, {4, 4, 2}, {5, 5, 2}, {3, 4, 2},
                          {4, 2, 3}, {5, 3, 3}, {2, 5, 1}, {4, 3, 2}, {3, 2, 2}};
  int accepted = 0;
  for (int i = 0; accepted < 50 && i < 200; ++i) {
    combo pc = combos[i % 10];
    abp a = random_hom_abp(pc.n, pc.d, pc.w, 1000 + i, rat);
    if (a.to_poly().is_zero()) continue;  // narrow draws can zero every path
    ++accepted;
    pencil p = abp_to_pencil(a);
    c.require(p.size() <= 10, "random instance too large");
    check_one(p, pc.d, a);
  }
  c.require(accepted == 50, "could not collect 50 nondegenerate instances");
  c.require(seconds_since(t0) < 10.0, "runtime budget exceeded (10 s)");
}

void criterion_vanishing(checker& c) {
  int covered = 0;
  for (const auto& inst : g_regular) {
    if (inst.s > 8) continue;
    ++covered;
    vanishing_report rep = check_regular_vanishing(inst.nf, inst.d);
    c.require(rep.passed, "vanishing constraints violated at s=" + std::to_string(inst.s));
    c.require(rep.series_zero.size() ==
                  static_cast<std::size_t>(inst.d >= 3 ? inst.d - 2 : 0),
              "series check count off at d=" + std::to_string(inst.d));
  }
  c.require(covered > 0, "no instances with s <= 8 to check");
}

void criterion_general_round_trip(checker& c) {
  auto t0 = std::chrono::steady_clock::now();
  auto check_one = [&](const pencil& p, const subject& source, int d, bool symbolic_scale) {
    conversion_result res = pencil_to_abp(p, std::nullopt, convert_mode::force_general);
    std::size_t s = p.size();
    std::size_t r = res.report.r;
    c.require(res.report.path == "General", "dispatch path: got " + res.report.path);
    std::uint64_t dd = static_cast<std::uint64_t>(d);
    std::uint64_t bound = 64ull * dd * dd * dd * dd * dd * s;
    std::uint64_t bound_rreg = 64ull * r * r * r * dd * dd * s;
    c.require(res.program.size() <= bound, fmt_size(res.program.size(), bound, "size bound"));
    c.require(res.program.size() <= bound_rreg,
              fmt_size(res.program.size(), bound_rreg, "corank-sensitive size bound"));
    verdict v = symbolic_scale ? symbolic_equal(source, res.program)
                               : pit_equal(source, res.program, 200, 23);
    c.require(v.ok(), "round trip mismatch: " + v.outcome);
    if (symbolic_scale) g_symbolic.emplace_back(normal_form(p), d, subject_poly(source));
  };
  for (int n = 1; n <= 6; ++n)
    for (int d = 2; d <= 5; ++d) {
      abp a = power_sum_abp(n, d, rat);
      check_one(abp_to_pencil(a), a, d, n <= 4 && d <= 4);
    }
  for (int k = 2; k <= 3; ++k)
    for (int n = k; n <= 6; ++n) {
      abp a = elem_sym_abp(n, k, rat);
      check_one(abp_to_pencil(a), a, k, n <= 4);
    }
  struct combo {
    int n, d;
    std::size_t w;
  };
  const combo combos[] = {{2, 3, 2}, {3, 2, 3}, {4, 4, 4}, {6, 5, 4},
                          {5, 4, 3}, {6, 2, 4}, {3, 5, 2}, {4, 3, 4}};
  for (int i = 0; i < 8; ++i) {
    combo pc = combos[i];
    abp a = random_hom_abp(pc.n, pc.d, pc.w, 7000 + i, rat);
    c.require(!a.to_poly().is_zero(), "degenerate seed: zero program");
    check_one(abp_to_pencil(a), a, pc.d, pc.n <= 4 && pc.d <= 4);
  }
  // Synthetic corank-r pencils: block direct sums of regular power-sum
  // pencils; the determinant is the product of the block determinants.
  auto synth = [&](const std::vector<std::pair<int, int>>& shape) {
    std::vector<pencil> base;
    poly f = poly::constant(shape[0].first, scalar::one(rat));
    int d = 0;
    for (auto [n, dd] : shape) {
      abp a = power_sum_abp(n, dd, rat);
      base.push_back(abp_to_pencil(a));
      f *= a.to_poly();
      d += dd;
    }
    pencil p = synth_r_regular_pencil(base);
    auto rep = constant_rank(p);
    c.require(rep.corank == shape.size(), "synthetic corank off");
    int nv = p.nvars();
    check_one(p, f, d, nv <= 4 && d <= 4);
  };
  synth({{2, 2}, {2, 2}});           // r=2, d=4, symbolic scale
  synth({{3, 3}, {3, 2}});           // r=2, d=5
  synth({{2, 2}, {2, 2}, {2, 2}});   // r=3, d=6
  synth({{3, 2}, {3, 2}, {3, 3}});   // r=3, d=7
  c.require(!g_symbolic.empty(), "no symbolic-scale instances collected");
  c.require(seconds_since(t0) < 60.0, "runtime budget exceeded (60 s)");
}

void criterion_lowest_component(checker& c) {
  for (const auto& inst : g_symbolic) {
    grid<abp> w = build_w_grid(inst.nf, inst.d);
    poly det_w = grid_det_poly(w);
    c.require(!det_w.is_zero(), "det(W) vanished");
    if (det_w.is_zero()) continue;
    int min_deg = static_cast<int>(total_degree(det_w.terms().begin()->first));
    c.require(min_deg == inst.d,
              "min degree of det(W): got " + std::to_string(min_deg) + ", want " +
                  std::to_string(inst.d));
    c.require(det_w.hom_component(inst.d) == inst.f, "lowest component != source polynomial");
  }
  c.require(!g_symbolic.empty(), "no symbolic-scale instances available");
}

void criterion_truncation(checker& c) {
  for (const auto& inst : g_symbolic) {
    poly base = grid_det_poly(build_w_grid(inst.nf, inst.d)).hom_component(inst.d);
    poly higher =
        grid_det_poly(build_w_grid(inst.nf, inst.d, inst.d)).hom_component(inst.d);
    c.require(higher == base, "longer series changed the degree-d component");
    int tight = tight_truncation_index(inst.d, inst.nf.r);
    poly tightened =
        grid_det_poly(build_w_grid(inst.nf, inst.d, tight)).hom_component(inst.d);
    c.require(tightened == base, "tight truncation changed the degree-d component");
  }
  c.require(!g_symbolic.empty(), "no symbolic-scale instances available");
}

void criterion_clow_determinant(checker& c) {
  auto t0 = std::chrono::steady_clock::now();
  for (std::size_t n = 1; n <= 5; ++n) {
    abp m = det_abp(n, rat);
    c.require(m.to_poly() == generic_det_poly(n), "clow program != Laplace determinant at n=" +
                                                      std::to_string(n));
    c.require(m.width() <= n * n, fmt_size(m.width(), n * n, "width bound"));
    c.require(m.layer_count() == n + 1, fmt_size(m.layer_count(), n + 1, "layer count"));
  }
  c.require(seconds_since(t0) < 5.0, "runtime budget exceeded (5 s)");
}

void criterion_homogenization(checker& c) {
  for (int i = 0; i < 50; ++i) {
    abp a = random_affine_abp(3000 + i);
    c.require(a.size() <= 40, "instance too large");
    c.require(!a.is_homogeneous(), "instance unexpectedly homogeneous");
    poly f = a.to_poly();
    for (int d = 0; d <= 5; ++d) {
      hom_component_result hc = hom_component_abp(a, d);
      c.require(hc.split_size <= a.size() * (d + 1),
                fmt_size(hc.split_size, a.size() * (d + 1), "split size"));
      c.require(hc.split_width <= a.width() * (d + 1),
                fmt_size(hc.split_width, a.width() * (d + 1), "split width"));
      if (d == 0) {
        exponents zero(static_cast<std::size_t>(a.nvars()), 0);
        c.require(hc.constant.has_value() && hc.constant->value == f.coeff(zero),
                  "constant component mismatch");
      } else {
        c.require(hc.program.has_value() && hc.program->to_poly() == f.hom_component(d),
                  "degree-" + std::to_string(d) + " component mismatch");
      }
    }
  }
}

void criterion_normal_form(checker& c) {
  for (int i = 0; i < 100; ++i) {
    std::size_t s = 2 + static_cast<std::size_t>(i % 5);
    int n = 2 + (i % 4);
    std::size_t rank0 = static_cast<std::size_t>(i) % s;
    pencil p = random_mixed_pencil(s, n, rank0, 9000 + i, rat);
    poly before = symbolic_det(p);
    normal_form_pencil nf = normal_form(p);
    c.require(symbolic_det(nf.p) == before, "determinant changed by normal form");
    scalar_matrix cp = nf.p.constant_part();
    bool shape_ok = true;
    for (std::size_t a = 0; a < s && shape_ok; ++a)
      for (std::size_t b = 0; b < s && shape_ok; ++b) {
        scalar want = (a == b && a >= nf.r) ? scalar::one(rat) : scalar::zero(rat);
        shape_ok = cp.at(a, b) == want;
      }
    c.require(shape_ok, "constant part is not diag(0..0,1..1)");
    homogeneity h = before.homogeneity_degree();
    if (h.k == homogeneity::kind::exactly)
      c.require(nf.r <= static_cast<std::size_t>(h.degree),
                "corank " + std::to_string(nf.r) + " exceeds degree " +
                    std::to_string(h.degree));
  }
}

void criterion_schur(checker& c) {
  verdict v1 = schur_self_test(1, 3, 100, 21);
  c.require(v1.ok() && v1.trials == 100, "(k,m)=(1,3): " + v1.outcome);
  verdict v2 = schur_self_test(2, 5, 100, 21);
  c.require(v2.ok() && v2.trials == 100, "(k,m)=(2,5): " + v2.outcome);
}

void criterion_cli_determinism(checker& c) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "detabp_acceptance";
  fs::create_directories(dir);
  auto run = [&](std::vector<std::string> args) {
    std::ostringstream out, err;
    int rc = cli::run(args, out, err);
    return std::pair<int, std::string>(rc, out.str());
  };
  auto slurp = [&](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  auto twice_files = [&](std::vector<std::string> args, const std::string& flag,
                         const char* what) {
    fs::path f1 = dir / (std::string(what) + "_1.json");
    fs::path f2 = dir / (std::string(what) + "_2.json");
    std::vector<std::string> a1 = args, a2 = args;
    a1.push_back(flag); a1.push_back(f1.string());
    a2.push_back(flag); a2.push_back(f2.string());
    auto [rc1, o1] = run(a1);
    auto [rc2, o2] = run(a2);
    c.require(rc1 == 0 && rc2 == 0, std::string(what) + ": nonzero exit");
    std::string s1 = slurp(f1), s2 = slurp(f2);
    c.require(!s1.empty() && s1 == s2, std::string(what) + ": output files differ");
    return f1;
  };
  fs::path ps = twice_files({"gen", "--family", "powersum", "--n", "4", "--d", "3"},
                            "--out", "gen_powersum");
  twice_files({"gen", "--family", "elemsym", "--n", "5", "--d", "3"}, "--out", "gen_elemsym");
  twice_files({"gen", "--family", "random-abp", "--n", "3", "--d", "4", "--w", "3",
               "--seed", "5"},
              "--out", "gen_random");
  fs::path corank2 = twice_files(
      {"gen", "--family", "r-regular", "--n", "3", "--d", "2", "--blocks", "2"}, "--out",
      "gen_rregular");
  fs::path reg = twice_files(
      {"gen", "--family", "r-regular", "--n", "3", "--d", "3", "--blocks", "1"}, "--out",
      "gen_regular");

  for (int pass = 0; pass < 2; ++pass) {
    std::string tag = pass ? "_2" : "_1";
    auto [rc, out] = run({"convert", "--in", reg.string(), "--out",
                          (dir / ("conv_reg" + tag + ".json")).string(), "--report",
                          (dir / ("conv_reg_rep" + tag + ".json")).string()});
    c.require(rc == 0, "convert regular: nonzero exit");
    auto [rc2, out2] = run({"convert", "--in", corank2.string(), "--out",
                            (dir / ("conv_gen" + tag + ".json")).string(), "--report",
                            (dir / ("conv_gen_rep" + tag + ".json")).string()});
    c.require(rc2 == 0, "convert general: nonzero exit");
  }
  for (const char* base : {"conv_reg", "conv_reg_rep", "conv_gen", "conv_gen_rep"}) {
    std::string s1 = slurp(dir / (std::string(base) + "_1.json"));
    std::string s2 = slurp(dir / (std::string(base) + "_2.json"));
    c.require(!s1.empty() && s1 == s2, std::string(base) + ": files differ");
  }

  auto twice_stdout = [&](std::vector<std::string> args, const char* what, int want_rc) {
    auto [rc1, o1] = run(args);
    auto [rc2, o2] = run(args);
    c.require(rc1 == want_rc && rc2 == want_rc,
              std::string(what) + ": exit " + std::to_string(rc1));
    c.require(!o1.empty() && o1 == o2, std::string(what) + ": stdout differs");
  };
  twice_stdout({"verify", "--a", corank2.string(), "--b",
                (dir / "conv_gen_1.json").string(), "--trials", "50", "--seed", "3"},
               "verify", 0);
  twice_stdout({"verify", "--a", reg.string(), "--b", (dir / "conv_reg_1.json").string(),
                "--symbolic"},
               "verify symbolic", 0);
  twice_stdout({"stats", "--in", ps.string()}, "stats abp", 0);
  twice_stdout({"stats", "--in", corank2.string()}, "stats pencil", 0);

  auto bench_stripped = [&](const fs::path& csv) {
    std::istringstream in(slurp(csv));
    std::ostringstream kept;
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
      auto pos = line.rfind(',');
      kept << (pos == std::string::npos ? line : line.substr(0, pos)) << '\n';
      ++rows;
    }
    return std::pair<std::string, int>(kept.str(), rows);
  };
  fs::path b1 = dir / "bench_1.csv", b2 = dir / "bench_2.csv";
  auto [brc1, bo1] = run({"bench", "--family", "powersum", "--range", "n=2..4", "--d", "3",
                          "--csv", b1.string()});
  auto [brc2, bo2] = run({"bench", "--family", "powersum", "--range", "n=2..4", "--d", "3",
                          "--csv", b2.string()});
  c.require(brc1 == 0 && brc2 == 0, "bench: nonzero exit");
  auto [k1, rows1] = bench_stripped(b1);
  auto [k2, rows2] = bench_stripped(b2);
  c.require(rows1 == 4 && rows2 == 4, "bench: expected header plus 3 rows");
  c.require(!k1.empty() && k1 == k2, "bench: CSV differs beyond the timing column");
}

}  // namespace

int main() {
  struct entry {
    const char* label;
    void (*body)(checker&);
  };
  const entry table[] = {
      {"regular path: exact width s-1 and size (d-1)(s-1)", criterion_regular_exactness},
      {"corank-1 vanishing constraints hold symbolically", criterion_vanishing},
      {"general path round trip within size bounds", criterion_general_round_trip},
      {"lowest component of det(W) has degree d and equals f", criterion_lowest_component},
      {"series truncation at d-2 and tighter index are sound", criterion_truncation},
      {"clow-sequence determinant program matches Laplace", criterion_clow_determinant},
      {"degree splitting within (d+1) factors, components exact", criterion_homogenization},
      {"normal form preserves determinants, shapes constants", criterion_normal_form},
      {"Schur complement identity on random rational matrices", criterion_schur},
      {"CLI re-runs are byte-identical modulo timing column", criterion_cli_determinism},
  };
  int failed = 0;
  for (int i = 0; i < 10; ++i) {
    checker c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      table[i].body(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("unhandled exception: ") + e.what());
    }
    bool pass = c.notes.empty();
    std::printf("[%s] %2d. %s (%d checks, %.2f s)\n", pass ? "PASS" : "FAIL", i + 1,
                table[i].label, c.checks, seconds_since(t0));
    for (const auto& n : c.notes) std::printf("        - %s\n", n.c_str());
    if (!pass) ++failed;
  }
  if (failed) std::printf("%d of 10 criteria failed\n", failed);
  return failed ? 1 : 0;
}
