// cliffext: command-line front end.
//
// Exit codes: 0 success / splits / all agree, 3 nonsplit (split-check), 1 a check failed,
// 2 error or budget exhausted.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cliffext/bicharacter.hpp"
#include "cliffext/cyclic_two.hpp"
#include "cliffext/errors.hpp"
#include "cliffext/group_spec.hpp"
#include "cliffext/obstruction.hpp"
#include "cliffext/report.hpp"
#include "cliffext/section.hpp"
#include "cliffext/split_check.hpp"
#include "cliffext/weyl.hpp"
#include "json.hpp"

using namespace cliffext;
using nlohmann::json;

namespace {

struct Globals {
  bool json = false;
  std::int64_t budget_ms = 0;
  int workers = 0;  // 0: OpenMP default
  std::uint64_t seed = 1;
};

constexpr int kOk = 0, kCheckFailed = 1, kError = 2, kNonsplit = 3;

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string join(const std::vector<std::int64_t>& xs, const char* sep = ",") {
  std::string out;
  for (auto x : xs) out += (out.empty() ? "" : sep) + std::to_string(x);
  return out;
}

std::shared_ptr<const SymplecticGroup> sp_for(const std::string& spec) {
  auto space = std::make_shared<const DoubleSpace>(parse_group_spec(spec));
  return std::make_shared<const SymplecticGroup>(enumerate_sp(space));
}

const char* mode_name(VerifyMode m) {
  switch (m) {
    case VerifyMode::All: return "all";
    case VerifyMode::Generators: return "generators";
    case VerifyMode::Sampled: return "sampled";
  }
  return "?";
}

json coords_of(const DoubleSpace& s, Rank u) { return s.coord_vector(u); }

// ---- verbs ----

int cmd_split_check(const Globals& g, const std::string& spec, const std::string& oracle) {
  SplitOptions opts;
  auto o = parse_oracle(oracle);
  if (!o) throw ValidationError("unknown oracle '" + oracle + "' (coboundary, complement or both)");
  opts.oracle = *o;
  opts.budget_ms = g.budget_ms;
  opts.seed = g.seed;
  const auto v = split_check(parse_group_spec(spec), opts);
  if (g.json) {
    json oracles = json::array();
    for (auto& r : v.oracles)
      oracles.push_back({{"oracle", r.oracle}, {"part", r.part}, {"ran", r.ran}, {"splits", r.splits}, {"detail", r.detail}, {"ms", r.ms}});
    json timings = json::object();
    for (auto& [k, t] : v.timings) timings[k] = t;
    json out{{"group", v.group},
             {"v_size", v.v_size},
             {"sp_order", v.sp_order},
             {"splits", v.splits},
             {"oracles", oracles},
             {"witness_digest", v.witness_digest},
             {"timings", timings},
             {"theorem_prediction", v.theorem_prediction},
             {"agreement", v.agreement},
             {"discrepancy", v.discrepancy},
             {"evidence", v.evidence}};
    if (v.witness) out["witness_check"] = {{"mode", mode_name(v.witness_check.mode)}, {"pairs", v.witness_check.pairs}, {"defects", v.witness_check.defects}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << v.group << ": " << (v.splits ? "splits" : "does not split") << "  (|V| = " << v.v_size << ", |Sp| = " << v.sp_order
              << ")\n";
    std::cout << "  predicted by 4 !| |A|: " << (v.theorem_prediction ? "splits" : "does not split")
              << (v.discrepancy ? "  DISCREPANCY" : "") << "\n";
    std::cout << "  oracles agree: " << (v.agreement ? "yes" : "NO") << "\n";
    for (auto& r : v.oracles)
      std::cout << "  " << r.oracle << "[" << r.part << "]: " << (r.ran ? (r.splits ? "splits" : "nonsplit") : "skipped") << "  "
                << r.detail << "\n";
    if (v.witness)
      std::cout << "  witness " << v.witness_digest << ": " << v.witness_check.defects << " defects over " << v.witness_check.pairs << " "
                << mode_name(v.witness_check.mode) << " pairs\n";
    if (!v.evidence.empty()) std::cout << "  evidence: " << v.evidence << "\n";
  }
  if (v.discrepancy || !v.agreement) return kCheckFailed;
  return v.splits ? kOk : kNonsplit;
}

int cmd_obstruction(const Globals& g, const std::string& spec, bool dump, const std::string& which) {
  auto sp = sp_for(spec);
  std::shared_ptr<const Section> sec;
  if (which == "particular") sec = std::make_shared<const Section>(particular_section(sp));
  else if (which == "odd") sec = std::make_shared<const Section>(odd_section(sp));
  else throw ValidationError("unknown section '" + which + "' (particular or odd)");
  const auto n = sp->order();
  if (dump && n * n > 4'000'000) throw ResourceError("cocycle table of " + std::to_string(n * n) + " entries is too large to dump");
  auto o = obstruction_cocycle(sec);
  auto check = check_cocycle_identity(o, g.seed);
  const bool zero = o.is_zero();
  if (g.json || dump) {
    json out{{"group", sp->space().base().spec()},
             {"section", which},
             {"sp_order", n},
             {"moduli", sp->space().moduli()},
             {"zero", zero},
             {"cocycle_check", {{"exhaustive", check.exhaustive}, {"triples", check.triples}, {"failures", check.failures}, {"seed", check.seed}}}};
    if (dump) {
      // table[t][s] = coordinates of O(t, s) in V_A, indexed by Sp rank.
      json table = json::array();
      for (std::size_t t = 0; t < n; ++t) {
        json row = json::array();
        for (std::size_t s = 0; s < n; ++s) row.push_back(coords_of(sp->space(), o.at(t, s)));
        table.push_back(std::move(row));
      }
      out["table"] = std::move(table);
    }
    std::cout << out.dump(dump ? -1 : 2) << "\n";
  } else {
    std::cout << sp->space().base().spec() << " " << which << " section, |Sp| = " << n << "\n";
    std::cout << "  cocycle " << (zero ? "is identically zero" : "is nonzero") << "\n";
    std::cout << "  cocycle identity: " << check.failures << " failures over " << (check.exhaustive ? "all " : "") << check.triples
              << " triples\n";
  }
  return check.ok() ? kOk : kCheckFailed;
}

int cmd_sp_enumerate(const Globals& g, const std::string& spec, bool matrices) {
  auto sp = sp_for(spec);
  const auto& s = sp->space();
  if (g.json) {
    json out{{"group", s.base().spec()}, {"moduli", s.moduli()}, {"order", sp->order()}};
    json ms = json::array();
    for (auto& t : sp->elements()) ms.push_back(t.entries());
    out["matrices"] = std::move(ms);
    std::cout << out.dump() << "\n";
    return kOk;
  }
  std::cout << "|Sp(V_" << s.base().spec() << ")| = " << sp->order() << "\n";
  if (matrices)
    for (std::size_t i = 0; i < sp->order(); ++i) std::cout << i << ": " << sp->element(i).str() << "\n";
  return kOk;
}

int cmd_odd_section(const Globals& g, const std::string& spec) {
  auto sp = sp_for(spec);
  const Section sec = odd_section(sp);
  const auto check = verify_homomorphism_auto(sec, 50'000'000);
  if (g.json) {
    json out{{"group", sp->space().base().spec()},
             {"moduli", sp->space().moduli()},
             {"phase_denominator", sp->space().phase_denominator()},
             {"verify", {{"mode", mode_name(check.mode)}, {"pairs", check.pairs}, {"defects", check.defects}}}};
    json recs = json::array();
    for (std::size_t t = 0; t < sp->order(); ++t) {
      auto lam = sec.lambda(t);
      recs.push_back({{"matrix", sp->element(t).entries()}, {"phases", std::vector<std::uint16_t>(lam.begin(), lam.end())}});
    }
    out["section"] = std::move(recs);
    std::cout << out.dump() << "\n";
  } else {
    std::cout << sp->space().base().spec() << " odd section, |Sp| = " << sp->order() << ", digest " << section_digest(sec) << "\n";
    std::cout << "  " << check.defects << " defects over " << check.pairs << " " << mode_name(check.mode) << " pairs\n";
  }
  return check.ok() ? kOk : kCheckFailed;
}

int cmd_cyclic_constraints(const Globals& g, std::int64_t n) {
  const auto r = constraint_report(n);
  const auto parity = parity_constraint_check(n);
  if (g.json) {
    json out{{"n", r.n},
             {"order_set", r.order_set},
             {"relation_set", r.relation_set},
             {"intersection", r.intersection},
             {"closed_forms_match", r.closed_forms_match},
             {"tuples", r.tuples},
             {"parity", {{"pairs", parity.pairs}, {"closed_form_mismatches", parity.closed_form_mismatches}, {"trivial_x", parity.trivial_x}}}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "N = " << n << "\n";
    std::cout << "  t^N = 1 on lifts:        x in {" << join(r.order_set) << "}\n";
    std::cout << "  (s t)^3 = s^2 on lifts:  x in {" << join(r.relation_set) << "}\n";
    std::cout << "  intersection:            {" << join(r.intersection) << "}\n";
    std::cout << "  brute force over " << r.tuples << " tuples " << (r.closed_forms_match ? "matches" : "DOES NOT match")
              << " the closed forms; power phase: " << parity.closed_form_mismatches << " mismatches over " << parity.pairs
              << " (x, y)\n";
  }
  return r.closed_forms_match && parity.ok() ? kOk : kCheckFailed;
}

int cmd_tambara(const Globals& g, const std::string& spec) {
  const auto r = tambara_check(parse_group_spec(spec));
  if (g.json) {
    std::cout << json{{"group", r.group},     {"bil", r.bil},       {"sym", r.sym},
                      {"alt", r.alt},         {"image", r.image},   {"kernel", r.kernel},
                      {"surjective", r.surjective}, {"kernel_is_sym", r.kernel_is_sym}, {"ok", r.ok()}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << r.group << ": |Bil| = " << r.bil << ", |Sym| = " << r.sym << ", |Alt| = " << r.alt << "\n";
    std::cout << "  antisymmetrization " << (r.surjective ? "onto" : "NOT onto") << ", kernel " << (r.kernel_is_sym ? "= Sym" : "!= Sym")
              << ": " << (r.ok() ? "exact" : "NOT exact") << "\n";
  }
  return r.ok() ? kOk : kCheckFailed;
}

int cmd_weyl(const Globals& g, const std::string& spec) {
  const auto r = check_weyl_relations(DoubleSpace(parse_group_spec(spec)));
  if (g.json) {
    std::cout << json{{"group", r.group},
                      {"pairs", r.pairs},
                      {"worst_product", r.worst_product},
                      {"worst_commutation", r.worst_commutation},
                      {"worst_unitarity", r.worst_unitarity},
                      {"ok", r.ok()}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << r.group << ": " << r.pairs << " pairs, worst deviation " << fmt("%.3g", r.worst_product) << " (product), "
              << fmt("%.3g", r.worst_commutation) << " (commutation), " << fmt("%.3g", r.worst_unitarity) << " (unitarity)\n";
  }
  return r.ok() ? kOk : kCheckFailed;
}

int cmd_report(const Globals& g, const std::string& config_path, const std::string& out_path) {
  RunConfig cfg = default_config();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ValidationError("cannot read config file '" + config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    cfg = parse_config(buf.str());
  }
  if (g.budget_ms) cfg.split.budget_ms = g.budget_ms;
  if (g.workers > 0) cfg.workers = g.workers;
  cfg.split.seed = g.seed;
  const auto rep = run_roster(cfg);
  const std::string text = json(rep).dump(2);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw ValidationError("cannot write '" + out_path + "'");
    out << text << "\n";
  }
  if (g.json) std::cout << text << "\n";
  else std::cout << format_table(rep);
  if (rep.any_error()) return kError;
  return rep.all_agree() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clifford extension splitting checks for finite abelian groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--budget-ms", g.budget_ms, "Wall-clock budget for split checks (0: none)")->check(CLI::NonNegativeNumber);
  app.add_option("--workers", g.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for sampled checks");

  std::string spec, oracle = "both", which = "particular", config_path, out_path;
  bool dump = false, matrices = false;
  std::int64_t n = 0;

  auto* split = app.add_subcommand("split-check", "Decide whether the extension splits");
  split->add_option("group", spec, "Group spec, e.g. Z2xZ4")->required();
  split->add_option("--oracle", oracle, "coboundary, complement or both");

  auto* obs = app.add_subcommand("obstruction", "Obstruction cocycle of a section");
  obs->add_option("group", spec)->required();
  obs->add_flag("--dump", dump, "Emit the full table as JSON");
  obs->add_option("--section", which, "particular or odd");

  auto* spe = app.add_subcommand("sp-enumerate", "Enumerate Sp(V_A)");
  spe->add_option("group", spec)->required();
  spe->add_flag("--matrices", matrices, "Print every matrix");

  auto* odd = app.add_subcommand("odd-section", "Build and verify the odd splitting");
  odd->add_option("group", spec)->required();

  auto* cyc = app.add_subcommand("cyclic-constraints", "Lift constraint sets for Z_N, N a power of two");
  cyc->add_option("N", n)->required();

  auto* tam = app.add_subcommand("tambara-check", "0 -> Sym -> Bil -> Alt -> 0 on a group");
  tam->add_option("group", spec)->required();

  auto* wey = app.add_subcommand("weyl-verify", "Weyl matrices against beta and omega");
  wey->add_option("group", spec)->required();

  auto* rep = app.add_subcommand("report", "Run the roster and the side checks");
  rep->add_option("--config", config_path, "key = value config file");
  rep->add_option("--out", out_path, "Also write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kError;
  }
  if (g.workers > 0) omp_set_num_threads(g.workers);

  try {
    if (*split) return cmd_split_check(g, spec, oracle);
    if (*obs) return cmd_obstruction(g, spec, dump, which);
    if (*spe) return cmd_sp_enumerate(g, spec, matrices);
    if (*odd) return cmd_odd_section(g, spec);
    if (*cyc) return cmd_cyclic_constraints(g, n);
    if (*tam) return cmd_tambara(g, spec);
    if (*wey) return cmd_weyl(g, spec);
    if (*rep) return cmd_report(g, config_path, out_path);
  } catch (const std::exception& e) {
    if (g.json) std::cout << json{{"error", e.what()}}.dump() << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
