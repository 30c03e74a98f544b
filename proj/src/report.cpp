#include "cliffext/report.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>

#include "cliffext/bicharacter.hpp"
#include "cliffext/cyclic_two.hpp"
#include "cliffext/errors.hpp"
#include "cliffext/group_spec.hpp"
#include "cliffext/weyl.hpp"

namespace cliffext {

using nlohmann::json;

bool RunReport::any_error() const {
  for (auto& r : rows)
    if (r.verdict == "error") return true;
  return false;
}

bool RunReport::all_agree() const {
  for (auto& r : rows)
    if (r.verdict == "error" || r.discrepancy || !r.agreement) return false;
  for (auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void to_json(json& j, const ReportRow& r) {
  j = json{{"group", r.group},
           {"v_size", r.v_size},
           {"sp_order", r.sp_order},
           {"verdict", r.verdict},
           {"agreement", r.agreement},
           {"theorem_prediction", r.theorem_prediction},
           {"discrepancy", r.discrepancy},
           {"witness_digest", r.witness_digest},
           {"oracles", r.oracles},
           {"error", r.error},
           {"timings_ms", r.timings},
           {"total_ms", r.total_ms}};
}

void from_json(const json& j, ReportRow& r) {
  j.at("group").get_to(r.group);
  j.at("v_size").get_to(r.v_size);
  j.at("sp_order").get_to(r.sp_order);
  j.at("verdict").get_to(r.verdict);
  j.at("agreement").get_to(r.agreement);
  j.at("theorem_prediction").get_to(r.theorem_prediction);
  j.at("discrepancy").get_to(r.discrepancy);
  j.at("witness_digest").get_to(r.witness_digest);
  j.at("oracles").get_to(r.oracles);
  j.at("error").get_to(r.error);
  j.at("timings_ms").get_to(r.timings);
  j.at("total_ms").get_to(r.total_ms);
}

void to_json(json& j, const CheckRow& r) {
  j = json{{"name", r.name}, {"subject", r.subject}, {"pass", r.pass}, {"detail", r.detail}, {"ms", r.ms}};
}

void from_json(const json& j, CheckRow& r) {
  j.at("name").get_to(r.name);
  j.at("subject").get_to(r.subject);
  j.at("pass").get_to(r.pass);
  j.at("detail").get_to(r.detail);
  j.at("ms").get_to(r.ms);
}

void to_json(json& j, const RunReport& r) { j = json{{"format", r.format}, {"rows", r.rows}, {"checks", r.checks}}; }

void from_json(const json& j, RunReport& r) {
  j.at("format").get_to(r.format);
  if (r.format != kReportFormat) throw ValidationError("unknown report format '" + r.format + "'");
  j.at("rows").get_to(r.rows);
  j.at("checks").get_to(r.checks);
}

RunConfig default_config() {
  RunConfig c;
  c.roster = {"Z2", "Z3", "Z4", "Z5", "Z6", "Z8", "Z9", "Z12", "Z2xZ2", "Z2xZ4", "Z3xZ3"};
  return c;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::int64_t parse_int(const std::string& v, std::size_t line) {
  try {
    std::size_t used = 0;
    const auto x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ValidationError("config line " + std::to_string(line) + ": '" + v + "' is not an integer");
  }
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

RunConfig parse_config(std::string_view text, RunConfig base) {
  RunConfig c = std::move(base);
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string val = trim(std::string_view(line).substr(eq + 1));
    if (key == "roster") {
      c.roster.clear();
      std::string item;
      for (char ch : val + ",") {
        if (ch == ',' || ch == ';') {
          if (!trim(item).empty()) c.roster.push_back(trim(item));
          item.clear();
        } else {
          item += ch;
        }
      }
    } else if (key == "extras") {
      if (val != "true" && val != "false") throw ValidationError("config line " + std::to_string(line_no) + ": extras must be true or false");
      c.extras = val == "true";
    } else if (key == "workers") {
      c.workers = static_cast<int>(parse_int(val, line_no));
      if (c.workers < 1) throw ValidationError("config line " + std::to_string(line_no) + ": workers must be positive");
    } else if (key == "budget_ms") {
      c.split.budget_ms = parse_int(val, line_no);
    } else if (key == "max_sp_order") {
      const auto v = parse_int(val, line_no);
      if (v < 1) throw ValidationError("config line " + std::to_string(line_no) + ": max_sp_order must be positive");
      c.split.max_sp_order = static_cast<std::size_t>(v);
    } else if (key == "seed") {
      c.split.seed = static_cast<std::uint64_t>(parse_int(val, line_no));
    } else if (key == "oracle") {
      auto o = parse_oracle(val);
      if (!o) throw ValidationError("config line " + std::to_string(line_no) + ": unknown oracle '" + val + "'");
      c.split.oracle = *o;
    } else {
      throw ValidationError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return c;
}

ReportRow row_from_verdict(const SplitVerdict& v, double ms) {
  ReportRow r;
  r.group = v.group;
  r.v_size = v.v_size;
  r.sp_order = v.sp_order;
  r.verdict = v.splits ? "splits" : "nonsplit";
  r.agreement = v.agreement;
  r.theorem_prediction = v.theorem_prediction;
  r.discrepancy = v.discrepancy;
  r.witness_digest = v.witness_digest;
  for (auto& o : v.oracles)
    if (o.ran) r.oracles.push_back(o.oracle + "[" + o.part + "]=" + (o.splits ? "splits" : "nonsplit"));
  for (auto& [k, t] : v.timings) r.timings[k] += t;
  r.total_ms = ms;
  return r;
}

std::vector<CheckRow> run_extra_checks(std::uint64_t seed) {
  std::vector<CheckRow> out;
  auto timed = [&](std::string name, std::string subject, auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckRow row{std::move(name), std::move(subject), false, "", 0};
    try {
      auto [pass, detail] = fn();
      row.pass = pass;
      row.detail = detail;
    } catch (const std::exception& e) {
      row.detail = std::string("error: ") + e.what();
    }
    row.ms = ms_since(t0);
    out.push_back(std::move(row));
  };
  for (const char* g : {"Z2xZ2", "Z3xZ3"})
    timed("tambara", g, [&] {
      auto r = tambara_check(parse_group_spec(g));
      return std::pair{r.ok(), "|Bil|=" + std::to_string(r.bil) + " |Sym|=" + std::to_string(r.sym) + " |Alt|=" + std::to_string(r.alt)};
    });
  for (const char* g : {"Z2", "Z3", "Z4", "Z2xZ2"})
    timed("weyl", g, [&] {
      auto r = check_weyl_relations(DoubleSpace(parse_group_spec(g)));
      char buf[96];
      std::snprintf(buf, sizeof buf, "worst deviation %.3g / %.3g over %llu pairs", r.worst_product, r.worst_commutation,
                    static_cast<unsigned long long>(r.pairs));
      return std::pair{r.ok(), std::string(buf)};
    });
  for (std::int64_t n : {2, 4, 8})
    timed("parity", "N=" + std::to_string(n), [&] {
      auto r = parity_constraint_check(n);
      return std::pair{r.ok(), std::to_string(r.pairs) + " pairs, " + std::to_string(r.closed_form_mismatches) + " mismatches"};
    });
  timed("residual", "N=4", [&] {
    std::uint64_t count = 0;
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y)
        for (int z = 0; z < 4; ++z)
          for (int w = 0; w < 4; ++w) {
            residual_character(4, x, y, z, w);
            ++count;
          }
    return std::pair{true, std::to_string(count) + " tuples match the closed form"};
  });
  timed("residual", "N=8", [&] {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, 7);
    for (int i = 0; i < 256; ++i) residual_character(8, pick(rng), pick(rng), pick(rng), pick(rng));
    return std::pair{true, "256 seeded tuples match the closed form (seed " + std::to_string(seed) + ")"};
  });
  for (std::int64_t n : {2, 4, 8})
    timed("constraints", "N=" + std::to_string(n), [&] {
      auto r = constraint_report(n);
      const bool expect_empty = n >= 4;
      std::string inter;
      for (auto x : r.intersection) inter += (inter.empty() ? "" : ",") + std::to_string(x);
      return std::pair{r.closed_forms_match && r.intersection.empty() == expect_empty, "intersection {" + inter + "}"};
    });
  return out;
}

RunReport run_roster(const RunConfig& config) {
  RunReport rep;
  rep.rows.resize(config.roster.size());
#pragma omp parallel for num_threads(config.workers) schedule(dynamic, 1)
  for (std::size_t i = 0; i < config.roster.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    ReportRow row;
    try {
      auto v = split_check(parse_group_spec(config.roster[i]), config.split);
      row = row_from_verdict(v, ms_since(t0));
    } catch (const std::exception& e) {
      row.group = config.roster[i];
      row.verdict = "error";
      row.agreement = false;
      row.error = e.what();
      row.total_ms = ms_since(t0);
    }
    rep.rows[i] = std::move(row);
  }
  if (config.extras) rep.checks = run_extra_checks(config.split.seed);
  return rep;
}

std::string format_table(const RunReport& r) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-10s %7s %8s  %-9s %-10s %-9s %10s\n", "group", "|V|", "|Sp|", "verdict", "predicted", "agreement",
                "ms");
  os << buf;
  for (auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%-10s %7llu %8llu  %-9s %-10s %-9s %10.1f%s\n", row.group.c_str(),
                  static_cast<unsigned long long>(row.v_size), static_cast<unsigned long long>(row.sp_order), row.verdict.c_str(),
                  row.verdict == "error" ? "-" : (row.theorem_prediction ? "splits" : "nonsplit"), row.agreement ? "yes" : "NO",
                  row.total_ms, row.discrepancy ? "  DISCREPANCY" : "");
    os << buf;
    if (!row.error.empty()) os << "    error: " << row.error << "\n";
  }
  if (!r.checks.empty()) {
    os << "\n";
    for (auto& c : r.checks) {
      std::snprintf(buf, sizeof buf, "%-12s %-7s %-4s %s\n", c.name.c_str(), c.subject.c_str(), c.pass ? "ok" : "FAIL", c.detail.c_str());
      os << buf;
    }
  }
  return os.str();
}

}  // namespace cliffext
