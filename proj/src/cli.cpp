#include "detabp/cli.hpp"

#include <chrono>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "detabp/convert.hpp"
#include "detabp/instgen.hpp"
#include "detabp/json_io.hpp"

namespace detabp::cli {
namespace {

using nlohmann::json;

json error_json(const error& e) {
  json j;
  j["error"] = errc_name(e.code());
  j["detail"] = e.what();
  if (!e.data().empty()) {
    if (e.code() == errc::not_homogeneous) {
      j["degrees"] = e.data();
    } else {
      j["data"] = e.data();
    }
  }
  return j;
}

// Violated conversion preconditions exit 3; everything else is bad input.
int precondition_exit(const error& e) {
  switch (e.code()) {
    case errc::not_homogeneous:
    case errc::not_regular:
    case errc::size_degree_mismatch:
    case errc::constant_part_invertible:
    case errc::degree_too_small:
    case errc::nonzero_constant_term:
      return 3;
    default:
      return 2;
  }
}

struct gen_params {
  std::string family;
  int n = 0;
  int d = 0;
  std::size_t w = 3;
  int blocks = 2;
  std::uint64_t seed = 1;
};

// One instance of the requested family; the abp families return a program,
// r-regular returns the block-diagonal pencil. For elemsym the --d value is
// the order of the elementary symmetric polynomial.
std::variant<abp, pencil> make_instance(const gen_params& g) {
  field_spec q = field_spec::rationals();
  if (g.family == "powersum") return power_sum_abp(g.n, g.d, q);
  if (g.family == "elemsym") return elem_sym_abp(g.n, g.d, q);
  if (g.family == "random-abp") return random_hom_abp(g.n, g.d, g.w, g.seed, q);
  if (g.blocks < 1) fail(errc::invalid_argument, "need at least one block");
  std::vector<pencil> blocks;
  for (int i = 0; i < g.blocks; ++i) blocks.push_back(abp_to_pencil(power_sum_abp(g.n, g.d, q)));
  return synth_r_regular_pencil(blocks);
}

int cmd_convert(const std::string& in, const std::string& out_path, const std::string& mode_name,
                std::optional<int> degree, const std::string& report_path) {
  pencil p = pencil_from_json(read_json_file(in));
  convert_mode mode = convert_mode::automatic;
  if (mode_name == "regular") mode = convert_mode::force_regular;
  if (mode_name == "general") mode = convert_mode::force_general;
  conversion_result res = pencil_to_abp(p, degree, mode);
  write_text_file(out_path, abp_to_json(res.program).dump(2) + "\n");
  if (!report_path.empty())
    write_text_file(report_path, report_to_json(res.report).dump(2) + "\n");
  return 0;
}

int cmd_verify(const std::string& a_path, const std::string& b_path, int trials,
               std::uint64_t seed, bool symbolic, std::ostream& out) {
  subject a = load_subject(a_path);
  subject b = load_subject(b_path);
  verdict v;
  if (symbolic) {
    v = symbolic_equal(a, b);
    v.seed = seed;
  } else {
    v = pit_equal(a, b, trials, seed);
  }
  out << verdict_to_json(v).dump(2) << "\n";
  return v.ok() ? 0 : 1;
}

int cmd_gen(const gen_params& g, const std::string& out_path) {
  auto inst = make_instance(g);
  json j = std::holds_alternative<abp>(inst) ? abp_to_json(std::get<abp>(inst))
                                             : pencil_to_json(std::get<pencil>(inst));
  write_text_file(out_path, j.dump(2) + "\n");
  return 0;
}

int cmd_stats(const std::string& in, std::ostream& out) {
  out << subject_stats_json(load_subject(in)).dump(2) << "\n";
  return 0;
}

int cmd_bench(const gen_params& base, const std::string& range, const std::string& csv_path) {
  int lo = 0, hi = 0;
  char axis = 0, tail = 0;
  if (std::sscanf(range.c_str(), "%c=%d..%d%c", &axis, &lo, &hi, &tail) != 3 ||
      (axis != 'n' && axis != 's') || lo < 1 || hi < lo)
    fail(errc::invalid_argument, "range must look like n=2..6");
  std::ostringstream csv;
  csv << "family,n,d,s,r,path,out_size,out_width,bound_size,ratio,millis\n";
  for (int n = lo; n <= hi; ++n) {
    gen_params g = base;
    g.n = n;
    auto inst = make_instance(g);
    pencil p = std::holds_alternative<pencil>(inst) ? std::get<pencil>(inst)
                                                    : abp_to_pencil(std::get<abp>(inst));
    auto t0 = std::chrono::steady_clock::now();
    conversion_result res = pencil_to_abp(p);
    auto elapsed = std::chrono::steady_clock::now() - t0;
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    char ratio[32];
    std::snprintf(ratio, sizeof ratio, "%.6f", res.report.ratio);
    csv << g.family << ',' << n << ',' << res.report.d << ',' << res.report.s << ','
        << res.report.r << ',' << res.report.path << ',' << res.report.out_size << ','
        << res.report.out_width << ',' << res.report.bound_size << ',' << ratio << ',' << ms
        << "\n";
  }
  write_text_file(csv_path, csv.str());
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact toolkit for determinantal representations and branching programs"};
  app.name("detabp");
  app.require_subcommand(1);

  auto* conv = app.add_subcommand("convert", "convert a pencil file to a branching program");
  std::string conv_in, conv_out, conv_mode = "auto", conv_report;
  int conv_degree = 0;
  conv->add_option("--in", conv_in, "input pencil json")->required();
  conv->add_option("--out", conv_out, "output program json")->required();
  conv->add_option("--mode", conv_mode, "conversion path")
      ->check(CLI::IsMember({"auto", "regular", "general"}));
  CLI::Option* conv_deg_opt =
      conv->add_option("--degree", conv_degree, "expected determinant degree");
  conv->add_option("--report", conv_report, "also write the conversion report json");

  auto* ver = app.add_subcommand("verify", "test two pencil/program files for equality");
  std::string ver_a, ver_b;
  int ver_trials = 200;
  std::uint64_t ver_seed = 1;
  bool ver_symbolic = false;
  ver->add_option("--a", ver_a, "first file")->required();
  ver->add_option("--b", ver_b, "second file")->required();
  ver->add_option("--trials", ver_trials, "number of random points")->check(CLI::PositiveNumber);
  ver->add_option("--seed", ver_seed, "random seed");
  ver->add_flag("--symbolic", ver_symbolic, "compare exact expansions instead of sampling");

  auto* gen = app.add_subcommand("gen", "write one instance of a named family");
  gen_params gp;
  std::string gen_out;
  gen->add_option("--family", gp.family, "instance family")
      ->required()
      ->check(CLI::IsMember({"powersum", "elemsym", "random-abp", "r-regular"}));
  gen->add_option("--n", gp.n, "number of variables")->required();
  gen->add_option("--d", gp.d, "degree (order k for elemsym)")->required();
  gen->add_option("--w", gp.w, "layer width for random-abp");
  gen->add_option("--blocks", gp.blocks, "block count for r-regular");
  gen->add_option("--seed", gp.seed, "random seed");
  gen->add_option("--out", gen_out, "output json")->required();

  auto* stats = app.add_subcommand("stats", "print resource measurements of a file");
  std::string stats_in;
  stats->add_option("--in", stats_in, "pencil or program json")->required();

  auto* bench = app.add_subcommand("bench", "convert a family across a range, write a csv");
  gen_params bp;
  bp.d = 3;
  std::string bench_range, bench_csv;
  bench->add_option("--family", bp.family, "instance family")
      ->required()
      ->check(CLI::IsMember({"powersum", "elemsym", "random-abp", "r-regular"}));
  bench->add_option("--range", bench_range, "variable range, e.g. n=2..6")->required();
  bench->add_option("--d", bp.d, "degree (order k for elemsym)");
  bench->add_option("--w", bp.w, "layer width for random-abp");
  bench->add_option("--blocks", bp.blocks, "block count for r-regular");
  bench->add_option("--seed", bp.seed, "random seed");
  bench->add_option("--csv", bench_csv, "output csv")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(conv)) {
      std::optional<int> degree;
      if (conv_deg_opt->count() > 0) degree = conv_degree;
      return cmd_convert(conv_in, conv_out, conv_mode, degree, conv_report);
    }
    if (app.got_subcommand(ver))
      return cmd_verify(ver_a, ver_b, ver_trials, ver_seed, ver_symbolic, out);
    if (app.got_subcommand(gen)) return cmd_gen(gp, gen_out);
    if (app.got_subcommand(stats)) return cmd_stats(stats_in, out);
    if (app.got_subcommand(bench)) return cmd_bench(bp, bench_range, bench_csv);
  } catch (const error& e) {
    err << error_json(e).dump(2) << "\n";
    return app.got_subcommand(conv) ? precondition_exit(e) : 2;
  }
  return 2;
}

}  // namespace detabp::cli
