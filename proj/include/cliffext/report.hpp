#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cliffext/split_check.hpp"
#include "json.hpp"

namespace cliffext {

inline constexpr const char* kReportFormat = "cliffext-report/1";

struct ReportRow {
  std::string group;
  std::uint64_t v_size = 0;
  std::uint64_t sp_order = 0;
  std::string verdict;  // splits, nonsplit, error
  bool agreement = true;
  bool theorem_prediction = false;
  bool discrepancy = false;
  std::string witness_digest;
  std::vector<std::string> oracles;  // "name[part]=verdict" for every oracle that ran
  std::string error;
  std::map<std::string, double> timings;
  double total_ms = 0;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

/// One of the side checks (Tambara, Weyl, cyclic sweeps).
struct CheckRow {
  std::string name;
  std::string subject;
  bool pass = false;
  std::string detail;
  double ms = 0;

  friend bool operator==(const CheckRow&, const CheckRow&) = default;
};

struct RunReport {
  std::string format = kReportFormat;
  std::vector<ReportRow> rows;
  std::vector<CheckRow> checks;

  bool any_error() const;
  /// No error rows, no discrepancy, every agreement flag set, every check passed.
  bool all_agree() const;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

void to_json(nlohmann::json& j, const ReportRow& r);
void from_json(const nlohmann::json& j, ReportRow& r);
void to_json(nlohmann::json& j, const CheckRow& r);
void from_json(const nlohmann::json& j, CheckRow& r);
void to_json(nlohmann::json& j, const RunReport& r);
/// Throws ValidationError on an unknown format tag.
void from_json(const nlohmann::json& j, RunReport& r);

struct RunConfig {
  std::vector<std::string> roster;
  bool extras = true;
  int workers = 1;
  SplitOptions split;
};

RunConfig default_config();
/// key = value lines; '#' starts a comment. Keys: roster, extras, workers, budget_ms,
/// max_sp_order, seed, oracle. ValidationError names the offending line.
RunConfig parse_config(std::string_view text, RunConfig base = default_config());

ReportRow row_from_verdict(const SplitVerdict& v, double ms);
RunReport run_roster(const RunConfig& config);
/// The side checks alone.
std::vector<CheckRow> run_extra_checks(std::uint64_t seed);

std::string format_table(const RunReport& r);

}  // namespace cliffext
