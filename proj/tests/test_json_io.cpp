#include "doctest.h"

#include "detabp/convert.hpp"
#include "detabp/instgen.hpp"
#include "detabp/json_io.hpp"

using namespace detabp;
using nlohmann::json;

namespace {
const field_spec Q = field_spec::rationals();
}

TEST_CASE("field spec round trip") {
  CHECK(field_from_json(field_to_json(Q)) == Q);
  field_spec fp = field_spec::prime(default_prime);
  CHECK(field_from_json(field_to_json(fp)) == fp);
  CHECK_THROWS_AS(field_from_json(json{{"kind", "galois"}}), error);
}

TEST_CASE("linform golden serialization") {
  linform l(3, Q);
  l.set_constant(scalar::parse(Q, "1/2"));
  l.set_coeff(0, scalar::from_int(Q, -2));
  l.set_coeff(2, scalar::parse(Q, "3/7"));
  json j = linform_to_json(l);
  CHECK(j.dump() == R"({"coeffs":{"0":"-2","2":"3/7"},"const":"1/2"})");
  CHECK(linform_from_json(j, 3, Q) == l);
}

TEST_CASE("pencil and abp round trips preserve structure") {
  abp ps = power_sum_abp(3, 4, Q);
  CHECK(abp_from_json(abp_to_json(ps)) == ps);

  pencil p = abp_to_pencil(ps);
  pencil back = pencil_from_json(pencil_to_json(p));
  CHECK(back == p);

  field_spec fp = field_spec::prime(2147483659ull);
  abp rp = random_hom_abp(2, 3, 2, 3, fp);
  CHECK(abp_from_json(abp_to_json(rp)) == rp);
}

TEST_CASE("serialization is byte stable") {
  abp ps = power_sum_abp(2, 3, Q);
  std::string once = abp_to_json(ps).dump(2);
  std::string twice = abp_to_json(abp_from_json(json::parse(once))).dump(2);
  CHECK(once == twice);
}

TEST_CASE("subject detection by key") {
  abp ps = power_sum_abp(2, 2, Q);
  CHECK(std::holds_alternative<abp>(subject_from_json(abp_to_json(ps))));
  CHECK(std::holds_alternative<pencil>(subject_from_json(pencil_to_json(abp_to_pencil(ps)))));
}

TEST_CASE("malformed input is always parse_error") {
  auto expect_parse = [](const json& bad) {
    try {
      subject_from_json(bad);
      return false;
    } catch (const error& e) {
      return e.code() == errc::parse_error;
    }
  };
  CHECK(expect_parse(json::object()));
  CHECK(expect_parse(json::array()));
  CHECK(expect_parse(json(42)));

  abp ps = power_sum_abp(2, 2, Q);
  json jp = pencil_to_json(abp_to_pencil(ps));
  json ja = abp_to_json(ps);

  json z = jp;
  z["s"] = 0;  // degenerate size is rejected at parse time
  CHECK(expect_parse(z));

  z = jp;
  z["entries"][0].erase(1);  // ragged row
  CHECK(expect_parse(z));

  z = ja;
  z["widths"] = json::array({5});  // contradicts the b vector length
  CHECK(expect_parse(z));

  z = ja;
  z["b"][0]["coeffs"]["9"] = "1";  // variable index out of range
  CHECK(expect_parse(z));

  z = ja;
  z["b"][0]["coeffs"]["x"] = "1";  // index is not a number
  CHECK(expect_parse(z));

  z = ja;
  z["c"][0]["const"] = "1/0";  // bad scalar
  CHECK(expect_parse(z));
}

TEST_CASE("report serialization carries every field") {
  auto res = pencil_to_abp(abp_to_pencil(power_sum_abp(3, 3, Q)));
  json j = report_to_json(res.report);
  for (const char* key : {"s", "d", "r", "path", "out_size", "out_width", "out_layers",
                          "bound_size", "bound_width", "bound_size_rreg", "c", "c_prime", "ratio"})
    CHECK(j.contains(key));
  CHECK(j["path"] == "Regular");
  CHECK(j["c"] == 64);
}

TEST_CASE("verdict serialization follows the contract") {
  verdict v;
  v.outcome = "equal";
  v.trials = 7;
  v.seed = 9;
  v.per_trial_error_bound = "3/101";
  json j = verdict_to_json(v);
  CHECK(j["verdict"] == "equal");
  CHECK(j["witness"].is_null());
  CHECK(j["trials"] == 7);
  CHECK(j["seed"] == 9);
  CHECK(j["per_trial_error_bound"] == "3/101");

  v.outcome = "not-equal";
  v.witness = std::vector<scalar>{scalar::from_int(Q, 4), scalar::from_int(Q, -1)};
  json w = verdict_to_json(v);
  CHECK(w["witness"] == json::array({"4", "-1"}));

  v.outcome = "refuted";
  v.witness.reset();
  v.witness_degrees = {1, 2};
  CHECK(verdict_to_json(v)["witness_degrees"] == json::array({1, 2}));
}

TEST_CASE("stats json for both kinds") {
  abp ps = power_sum_abp(4, 3, Q);
  json a = subject_stats_json(subject{ps});
  CHECK(a["kind"] == "abp");
  CHECK(a["size"] == 8);
  CHECK(a["width"] == 4);
  CHECK(a["layers"] == 3);
  CHECK(a["homogeneous"] == true);

  json p = subject_stats_json(subject{abp_to_pencil(ps)});
  CHECK(p["kind"] == "pencil");
  CHECK(p["s"] == 10);
  CHECK(p["corank"] == 1);
  CHECK(p["regular"] == true);
}

TEST_CASE("vanishing report serialization") {
  auto nf = normal_form(abp_to_pencil(power_sum_abp(2, 3, Q)));
  auto rep = check_regular_vanishing(nf, 3);
  json j = vanishing_to_json(rep);
  CHECK(j["passed"] == true);
  CHECK(j["top_entry_zero"] == true);
  CHECK(j["series_zero"].is_array());
}

TEST_CASE("file io errors are parse errors") {
  CHECK_THROWS_AS(read_json_file("/nonexistent/path/x.json"), error);
  CHECK_THROWS_AS(load_subject("/nonexistent/path/x.json"), error);
}
