// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "cliffext/bicharacter.hpp"
#include "cliffext/cyclic_two.hpp"
#include "cliffext/group_spec.hpp"
#include "cliffext/obstruction.hpp"
#include "cliffext/section.hpp"
#include "cliffext/split_check.hpp"
#include "cliffext/weyl.hpp"

using namespace cliffext;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", title.c_str());
  if (!detail.empty()) std::printf("              %s\n", detail.c_str());
  std::fflush(stdout);
  failures += !pass;
}

// Runs a criterion body; an exception is a failure with its message as detail.
void criterion(int id, const std::string& title, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail += std::string(detail.empty() ? "" : "; ") + "exception: " + e.what();
  }
  report(id, title, pass, detail);
}

std::shared_ptr<const SymplecticGroup> sp_of(const std::string& spec) {
  return std::make_shared<const SymplecticGroup>(enumerate_sp(std::make_shared<const DoubleSpace>(parse_group_spec(spec))));
}

// Section built row by row from the linear solver, independent of the quadratic-form lift.
std::shared_ptr<const Section> linear_section(const std::shared_ptr<const SymplecticGroup>& sp) {
  const auto& s = sp->space();
  std::vector<std::uint16_t> phases;
  phases.reserve(sp->order() * s.size());
  for (std::size_t t = 0; t < sp->order(); ++t) {
    auto lam = solve_lambda_linear(s, sp->element(t));
    phases.insert(phases.end(), lam.values().begin(), lam.values().end());
  }
  return std::make_shared<const Section>(sp, std::move(phases));
}

struct RosterEntry {
  std::string spec;
  bool expect_split;
};

const std::vector<RosterEntry> kRoster = {{"Z2", true},     {"Z3", true},   {"Z4", false},    {"Z5", true},
                                          {"Z6", true},     {"Z8", false},  {"Z9", true},     {"Z12", false},
                                          {"Z2xZ2", false}, {"Z2xZ4", false}, {"Z3xZ3", true}};

constexpr std::uint64_t kFullPairLimit = 50'000'000;
constexpr std::uint64_t kSpotPairs = 1'000'000;

}  // namespace

int main() {
  const auto t_all = Clock::now();
  std::map<std::string, SplitVerdict> verdicts;
  std::map<std::string, std::string> errors;
  std::map<std::string, double> seconds;

  // 1. Roster verdicts.
  criterion(1, "splitting verdicts on the roster, under 10 minutes", [&](std::string& d) {
    const auto t0 = Clock::now();
    bool ok = true;
    for (auto& [spec, expect] : kRoster) {
      const auto t1 = Clock::now();
      try {
        auto v = split_check(parse_group_spec(spec));
        const bool right = v.splits == expect && !v.discrepancy;
        ok &= right;
        d += spec + (v.splits ? "=splits" : "=nonsplit") + (right ? "" : "(WRONG)") + " ";
        verdicts.emplace(spec, std::move(v));
      } catch (const std::exception& e) {
        ok = false;
        errors[spec] = e.what();
        d += spec + "=error(" + e.what() + ") ";
      }
      seconds[spec] = seconds_since(t1);
    }
    const double total = seconds_since(t0);
    char buf[64];
    std::snprintf(buf, sizeof buf, "total %.1f s", total);
    d += buf;
    return ok && total < 600;
  });

  // 2. Oracle agreement.
  criterion(2, "coboundary and complement oracles agree", [&](std::string& d) {
    bool ok = true;
    for (auto& [spec, v] : verdicts) {
      int both = 0;
      for (auto& o : v.oracles)
        if (o.ran && o.oracle == "complement")
          for (auto& p : v.oracles)
            if (p.ran && p.oracle == "coboundary" && p.part == o.part) {
              ++both;
              if (o.splits != p.splits) ok = false;
            }
      ok &= v.agreement;
      if (both) d += spec + " ";
    }
    for (const char* must : {"Z2", "Z4", "Z8", "Z2xZ2"}) {
      auto it = verdicts.find(must);
      bool ran_both = false;
      if (it != verdicts.end()) {
        bool cob = false, comp = false;
        for (auto& o : it->second.oracles) {
          cob |= o.ran && o.oracle == "coboundary";
          comp |= o.ran && o.oracle == "complement";
        }
        ran_both = cob && comp;
      }
      if (!ran_both) {
        ok = false;
        d += std::string("[both oracles did not run on ") + must + "] ";
      }
    }
    d = "both oracles ran and agreed on: " + d;
    return ok;
  });

  // 3. Witnesses, re-verified here independently of split_check.
  criterion(3, "every splitting witness is a homomorphism on all pairs", [&](std::string& d) {
    bool ok = true;
    for (auto& [spec, expect] : kRoster) {
      if (!expect) continue;
      auto it = verdicts.find(spec);
      if (it == verdicts.end() || !it->second.witness) {
        ok = false;
        d += spec + ": no witness; ";
        continue;
      }
      const auto& w = *it->second.witness;
      const std::uint64_t n = w.group().order();
      if (n * n <= kFullPairLimit) {
        auto c = verify_homomorphism(w, VerifyMode::All);
        ok &= c.ok() && c.pairs == n * n;
        d += spec + ": " + std::to_string(c.defects) + "/" + std::to_string(c.pairs) + " pairs; ";
      } else {
        // Checking s(T)s(g) = s(Tg) for all T and generators g covers every pair: the set of
        // S with s(T)s(S) = s(TS) for all T contains the generators and is closed under products.
        auto g = verify_homomorphism(w, VerifyMode::Generators);
        auto r = verify_homomorphism_sampled(w, kSpotPairs, 1);
        ok &= g.ok() && r.ok();
        d += spec + ": all " + std::to_string(n * n) + " pairs via " + std::to_string(g.pairs) + " generator pairs (" +
             std::to_string(g.defects) + " defects) + " + std::to_string(r.pairs) + " random pairs (" +
             std::to_string(r.defects) + " defects); ";
      }
    }
    return ok;
  });

  // 4. Odd construction.
  criterion(4, "odd_section obstruction is identically zero for Z3, Z5, Z9", [&](std::string& d) {
    bool ok = true;
    for (const char* spec : {"Z3", "Z5", "Z9"}) {
      auto sec = std::make_shared<const Section>(odd_section(sp_of(spec)));
      auto o = obstruction_cocycle(sec, 1'000'000'000);
      const bool zero = o.dense() && o.is_zero();
      ok &= zero;
      const auto n = o.group().order();
      d += std::string(spec) + ": " + std::to_string(n * n) + " entries " + (zero ? "zero" : "NONZERO") + "; ";
    }
    return ok;
  });

  // 5. Cocycle identity on every cocycle produced above.
  criterion(5, "cocycle identity on every generated obstruction cocycle", [&](std::string& d) {
    bool ok = true;
    std::size_t count = 0;
    for (auto& [spec, v] : verdicts)
      for (auto& c : v.cocycles) {
        ++count;
        const bool mode_ok = c.check.exhaustive || c.check.triples >= 100'000;
        ok &= c.check.ok() && mode_ok;
        d += c.part + "/" + c.section + ":" + (c.check.exhaustive ? "all " : "") + std::to_string(c.check.triples) + " triples, " +
             std::to_string(c.check.failures) + " failures; ";
      }
    for (const char* spec : {"Z3", "Z5", "Z9"}) {
      auto sec = std::make_shared<const Section>(odd_section(sp_of(spec)));
      auto c = check_cocycle_identity(obstruction_cocycle(sec), 1);
      ++count;
      ok &= c.ok();
      d += std::string(spec) + "/odd-direct:" + (c.exhaustive ? "all " : "") + std::to_string(c.triples) + " triples, " +
           std::to_string(c.failures) + " failures; ";
    }
    d = std::to_string(count) + " cocycles: " + d;
    return ok && count > 0;
  });

  // 6. Power-phase closed form.
  criterion(6, "power-phase closed form (-1)^{p(1+x)} for N = 2, 4, 8", [&](std::string& d) {
    const auto t0 = Clock::now();
    bool ok = true;
    for (std::int64_t n : {2, 4, 8}) {
      auto r = parity_constraint_check(n);
      ok &= r.ok();
      d += "N=" + std::to_string(n) + ": " + std::to_string(r.pairs) + " (x,y), " + std::to_string(r.closed_form_mismatches) +
           " mismatches; ";
    }
    const double s = seconds_since(t0);
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f s", s);
    d += buf;
    return ok && s < 10;
  });

  // 7. Residual character.
  criterion(7, "residual character closed form and the reference-lift identity", [&](std::string& d) {
    std::uint64_t n4 = 0, n8 = 0;
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y)
        for (int z = 0; z < 4; ++z)
          for (int w = 0; w < 4; ++w) {
            auto r = residual_character(4, x, y, z, w);
            if (r.closed_form != r.direct) return false;
            ++n4;
          }
    std::mt19937_64 rng(1);
    for (int i = 0; i < 256; ++i) {
      auto r = residual_character(8, static_cast<std::int64_t>(rng() % 8), static_cast<std::int64_t>(rng() % 8),
                                  static_cast<std::int64_t>(rng() % 8), static_cast<std::int64_t>(rng() % 8));
      if (r.closed_form != r.direct) return false;
      ++n8;
    }
    bool ref = true;
    for (std::int64_t n : {2, 4, 8}) {
      auto s0 = lift_s(n, 0, 0), t0 = lift_t(n, 0, 0);
      auto st = twisted_mul(s0, t0);
      ref &= twisted_mul(twisted_mul(st, st), st) == twisted_mul(s0, s0);
    }
    d = "N=4: " + std::to_string(n4) + " tuples, N=8: " + std::to_string(n8) + " seeded tuples, (s0 t0)^3 = s0^2: " +
        (ref ? "holds" : "FAILS");
    return n4 == 256 && n8 == 256 && ref;
  });

  // 8. Constraint incompatibility.
  criterion(8, "constraint sets: intersection {1} for N = 2, empty for N = 4, 8", [&](std::string& d) {
    auto r2 = constraint_report(2), r4 = constraint_report(4), r8 = constraint_report(8);
    auto show = [](const std::vector<std::int64_t>& v) {
      std::string s = "{";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
      return s + "}";
    };
    d = "N=2: " + show(r2.intersection) + ", N=4: " + show(r4.order_set) + " & " + show(r4.relation_set) + " = " +
        show(r4.intersection) + ", N=8: " + show(r8.intersection);
    return r2.intersection == std::vector<std::int64_t>{1} && r4.intersection.empty() && r8.intersection.empty();
  });

  // 9. Tambara exactness.
  criterion(9, "0 -> Sym -> Bil -> Alt -> 0 exact for (Z2)^2 and (Z3)^2", [&](std::string& d) {
    bool ok = true;
    for (const char* spec : {"Z2xZ2", "Z3xZ3"}) {
      auto r = tambara_check(parse_group_spec(spec));
      ok &= r.ok();
      d += std::string(spec) + ": |Bil|=" + std::to_string(r.bil) + " |Sym|=" + std::to_string(r.sym) + " |Alt|=" + std::to_string(r.alt) +
           (r.surjective ? " onto" : " NOT onto") + (r.kernel_is_sym ? ", kernel Sym; " : ", kernel differs; ");
    }
    return ok;
  });

  // 10. Weyl relations.
  criterion(10, "Weyl matrices reproduce beta and omega within 1e-12", [&](std::string& d) {
    bool ok = true;
    for (const char* spec : {"Z2", "Z3", "Z4", "Z2xZ2"}) {
      auto r = check_weyl_relations(DoubleSpace(parse_group_spec(spec)));
      ok &= r.ok(1e-12);
      char buf[128];
      std::snprintf(buf, sizeof buf, "%s: %.2e/%.2e; ", spec, r.worst_product, r.worst_commutation);
      d += buf;
    }
    return ok;
  });

  // 11. Independence of the section.
  criterion(11, "two independently built sections have the same class (Z4, Z3)", [&](std::string& d) {
    auto z4 = sp_of("Z4");
    auto a4 = std::make_shared<const Section>(particular_section(z4));
    auto b4 = linear_section(z4);
    auto z3 = sp_of("Z3");
    auto a3 = std::make_shared<const Section>(odd_section(z3));
    auto b3 = linear_section(z3);
    const bool r4 = class_difference_check(a4, b4), r3 = class_difference_check(a3, b3);
    const bool distinct4 = !std::equal(a4->phases().begin(), a4->phases().end(), b4->phases().begin(), b4->phases().end());
    const bool distinct3 = !std::equal(a3->phases().begin(), a3->phases().end(), b3->phases().begin(), b3->phases().end());
    d = std::string("Z4 quadratic vs linear-solver: ") + (r4 ? "same" : "DIFFERENT") + (distinct4 ? "" : " (tables coincide)") +
        ", Z3 odd vs linear-solver: " + (r3 ? "same" : "DIFFERENT") + (distinct3 ? "" : " (tables coincide)");
    return r4 && r3;
  });

  // 12. Restriction of the Z6 splitting.
  criterion(12, "restricting the composed Z6 splitting to Z2 gives a splitting", [&](std::string& d) {
    auto it = verdicts.find("Z6");
    if (it == verdicts.end() || !it->second.composed_witness) {
      d = "no composed Z6 witness";
      return false;
    }
    const auto& composed = *it->second.composed_witness;
    auto z2 = std::make_shared<const SymplecticGroup>(
        enumerate_sp(std::make_shared<const DoubleSpace>(FinAbGroup::from_factors({2}))));
    // Composed layout is Z3 + Z2; factor 1 is the Z2 summand.
    std::vector<std::size_t> factors{1};
    Section r = restrict_section(composed, factors, z2);
    auto c = verify_homomorphism(r, VerifyMode::All);
    d = std::to_string(c.defects) + " defects over " + std::to_string(c.pairs) + " pairs; rows valid: " + (r.rows_valid() ? "yes" : "no");
    return c.ok() && c.pairs == 36 && r.rows_valid();
  });

  std::printf("\nper-group seconds:");
  for (auto& [spec, expect] : kRoster) std::printf(" %s=%.2f", spec.c_str(), seconds[spec]);
  std::printf("\n%d of 12 criteria failed; total %.1f s\n", failures, seconds_since(t_all));
  return failures ? 1 : 0;
}
