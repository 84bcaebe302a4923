#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "ztf/reduce.hpp"
#include "ztf/verify.hpp"

using namespace ztf;
using nlohmann::json;

TEST_CASE("suite passes at the default desk size") {
  VerifyOptions opt;
  const VerifyReport report = run_verify_suite(opt);
  CHECK(report.failures == 0);
  CHECK(report.checks.size() > 20);
  int fails = 0;
  for (const VerifyCheck& c : report.checks) {
    CHECK((c.status == "pass" || c.status == "fail" || c.status == "skip"));
    if (c.status == "fail") ++fails;
  }
  CHECK(fails == report.failures);

  // check names are unique so report diffs are meaningful
  std::set<std::string> names;
  for (const VerifyCheck& c : report.checks) names.insert(c.name);
  CHECK(names.size() == report.checks.size());
}

TEST_CASE("report bytes are identical across worker counts") {
  VerifyOptions opt;
  opt.seed = 7;
  set_worker_count(1);
  const std::string one = verify_report_to_json(run_verify_suite(opt));
  set_worker_count(4);
  const std::string four = verify_report_to_json(run_verify_suite(opt));
  set_worker_count(0);
  CHECK(one == four);
  CHECK(verify_report_to_json(run_verify_suite(opt)) == one);
}

TEST_CASE("different seeds change instance draws, not outcomes") {
  VerifyOptions a;
  a.seed = 2;
  const VerifyReport ra = run_verify_suite(a);
  CHECK(ra.failures == 0);
  VerifyOptions b;
  b.seed = 3;
  CHECK(verify_report_to_json(run_verify_suite(b)) != verify_report_to_json(ra));
}

TEST_CASE("dimension two at a small radius") {
  VerifyOptions opt;
  opt.dim = 2;
  opt.radius = 1;
  CHECK(run_verify_suite(opt).failures == 0);
}

TEST_CASE("timings flip bytes but never outcomes") {
  VerifyOptions opt;
  opt.include_timings = true;
  const VerifyReport timed = run_verify_suite(opt);
  CHECK(timed.failures == 0);
  opt.include_timings = false;
  CHECK(verify_report_to_json(run_verify_suite(opt)) != verify_report_to_json(timed));
}

TEST_CASE("report json structure") {
  VerifyOptions opt;
  const std::string text = verify_report_to_json(run_verify_suite(opt));
  const json j = json::parse(text);
  CHECK(j.at("seed") == 1);
  CHECK(j.at("n") == 1);
  CHECK(j.at("N") == 2);
  CHECK(j.at("Q") == 10);  // the default resolution for radius-2 draws
  CHECK(j.at("failures") == 0);
  REQUIRE(j.at("checks").is_array());
  const json& first = j.at("checks")[0];
  CHECK(first.contains("name"));
  CHECK(first.contains("status"));
  CHECK(!first.contains("seconds"));  // timings excluded by default
}

TEST_CASE("a resolution that cannot separate lags is rejected") {
  VerifyOptions opt;
  opt.resolution = 5;  // radius 2 draws need Q >= 10
  CHECK_THROWS_AS(run_verify_suite(opt), InvalidArgument);
  opt.resolution = -3;
  CHECK_THROWS_AS(run_verify_suite(opt), InvalidArgument);
  opt.radius = 0;
  CHECK_THROWS_AS(run_verify_suite(opt), InvalidArgument);
}
