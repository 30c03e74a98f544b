#include "cliffext/errors.hpp"
#include "cliffext/report.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace cliffext;

namespace {

RunReport sample_report() {
  RunReport r;
  ReportRow a;
  a.group = "Z6";
  a.v_size = 36;
  a.sp_order = 144;
  a.verdict = "splits";
  a.theorem_prediction = true;
  a.witness_digest = "00112233aabbccdd";
  a.oracles = {"odd-construction[Z3]=splits", "coboundary[Z2]=splits"};
  a.timings = {{"enumerate Z3", 0.25}, {"coboundary Z2", 1.5}};
  a.total_ms = 3.75;
  ReportRow b;
  b.group = "Q7";
  b.verdict = "error";
  b.agreement = false;
  b.error = "expected 'Z' (at offset 0)";
  r.rows = {a, b};
  r.checks = {CheckRow{"weyl", "Z2", true, "worst deviation 0", 0.5}};
  return r;
}

}  // namespace

TEST_CASE("report JSON round trip") {
  auto r = sample_report();
  nlohmann::json j = r;
  CHECK(j["format"] == kReportFormat);
  auto back = j.get<RunReport>();
  CHECK(back == r);
  auto again = nlohmann::json::parse(j.dump()).get<RunReport>();
  CHECK(again == r);
  j["format"] = "something-else/9";
  CHECK_THROWS_AS(j.get<RunReport>(), ValidationError);
}

TEST_CASE("report flags") {
  auto r = sample_report();
  CHECK(r.any_error());
  CHECK_FALSE(r.all_agree());
  r.rows.pop_back();
  CHECK_FALSE(r.any_error());
  CHECK(r.all_agree());
  r.rows[0].discrepancy = true;
  CHECK_FALSE(r.all_agree());
}

TEST_CASE("config parsing") {
  auto d = default_config();
  CHECK(d.roster == std::vector<std::string>{"Z2", "Z3", "Z4", "Z5", "Z6", "Z8", "Z9", "Z12", "Z2xZ2", "Z2xZ4", "Z3xZ3"});
  auto c = parse_config(R"(# roster for a quick run
roster = Z2, Z4 ; Z3
extras = false   # no side checks
workers = 2
budget_ms = 5000
max_sp_order = 1000
seed = 9
oracle = complement
)");
  CHECK(c.roster == std::vector<std::string>{"Z2", "Z4", "Z3"});
  CHECK_FALSE(c.extras);
  CHECK(c.workers == 2);
  CHECK(c.split.budget_ms == 5000);
  CHECK(c.split.max_sp_order == 1000);
  CHECK(c.split.seed == 9);
  CHECK(c.split.oracle == OracleChoice::Complement);
  CHECK(parse_config("roster =").roster.empty());
  for (auto bad : {"roster", "colour = red", "workers = 0", "workers = many", "oracle = all", "extras = maybe"}) {
    try {
      parse_config(std::string("\n") + bad);
      FAIL("accepted: " << bad);
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
}

TEST_CASE("roster runs") {
  RunConfig empty = default_config();
  empty.roster.clear();
  empty.extras = false;
  auto r0 = run_roster(empty);
  CHECK(r0.rows.empty());
  CHECK(r0.all_agree());

  RunConfig c = parse_config("roster = Z2, Z2xZ2, Q3, Z3\nextras = false\nmax_sp_order = 100\nworkers = 2");
  auto r = run_roster(c);
  REQUIRE(r.rows.size() == 4);
  CHECK(r.rows[0].group == "Z2");
  CHECK(r.rows[0].verdict == "splits");
  CHECK(r.rows[1].verdict == "error");
  CHECK(r.rows[1].error.find("stage enumerate") != std::string::npos);
  CHECK(r.rows[2].verdict == "error");
  CHECK(r.rows[3].verdict == "splits");
  CHECK(r.any_error());
  auto table = format_table(r);
  CHECK(table.find("Z2xZ2") != std::string::npos);
  CHECK(table.find("error:") != std::string::npos);
}

TEST_CASE("side checks pass") {
  auto checks = run_extra_checks(1);
  CHECK(checks.size() >= 10);
  for (auto& c : checks) CHECK_MESSAGE(c.pass, c.name << " " << c.subject << ": " << c.detail);
}
