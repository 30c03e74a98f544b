#include "cliffext/split_check.hpp"

#include <chrono>

#include "cliffext/complement.hpp"
#include "cliffext/errors.hpp"

namespace cliffext {

std::optional<OracleChoice> parse_oracle(std::string_view text) {
  if (text == "coboundary") return OracleChoice::Coboundary;
  if (text == "complement") return OracleChoice::Complement;
  if (text == "both") return OracleChoice::Both;
  return std::nullopt;
}

std::string to_string(OracleChoice c) {
  switch (c) {
    case OracleChoice::Coboundary: return "coboundary";
    case OracleChoice::Complement: return "complement";
    case OracleChoice::Both: return "both";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Ctx {
  const SplitOptions& opts;
  Deadline deadline;
  SplitVerdict& out;

  // Runs fn, timing it under `name`; budget failures are re-thrown with the stage named.
  // The deadline is also checked on entry, so stages without an internal check stay bounded.
  template <class Fn>
  auto stage(const std::string& name, Fn&& fn) {
    check_deadline(name);
    const auto t0 = Clock::now();
    try {
      if constexpr (std::is_void_v<decltype(fn())>) {
        fn();
        out.timings.emplace_back(name, ms_since(t0));
      } else {
        auto r = fn();
        out.timings.emplace_back(name, ms_since(t0));
        return r;
      }
    } catch (const ResourceError& e) {
      throw ResourceError("stage " + name + ": " + e.what());
    }
  }
  void check_deadline(const std::string& name) {
    if (deadline.expired()) throw ResourceError("stage " + name + ": time budget exhausted");
  }
};

struct PartResult {
  bool splits = false;
  std::shared_ptr<const SymplecticGroup> group;
  std::optional<Section> witness;
  std::string evidence;
};

bool wants_coboundary(OracleChoice c) { return c != OracleChoice::Complement; }
bool wants_complement(OracleChoice c) { return c != OracleChoice::Coboundary; }

CocycleRecord cocycle_record(const std::string& part, const std::string& name, const ObstructionCocycle& o, std::uint64_t seed) {
  CocycleRecord r;
  r.part = part;
  r.section = name;
  r.check = check_cocycle_identity(o, seed);
  if (o.dense()) r.zero = o.is_zero();
  if (!r.check.ok()) throw InternalError("obstruction cocycle of the " + name + " section over " + part + " fails the cocycle identity");
  return r;
}

OracleRecord run_coboundary(Ctx& ctx, const std::string& part, const std::shared_ptr<const Section>& sec, const ObstructionCocycle& o,
                            std::optional<Section>& witness) {
  OracleRecord rec{"coboundary", part, true, false, "", 0};
  const auto t0 = Clock::now();
  CoboundaryOptions co;
  co.deadline = ctx.deadline;
  auto res = ctx.stage("coboundary " + part, [&] { return coboundary_solve(o, co); });
  rec.splits = res.solvable;
  rec.detail = res.summary();
  if (res.solvable) witness.emplace(shift_section(*sec, res.cochain));
  rec.ms = ms_since(t0);
  return rec;
}

OracleRecord run_complement(Ctx& ctx, const std::string& part, const std::shared_ptr<const SymplecticGroup>& group,
                            std::optional<Section>& witness, bool required) {
  OracleRecord rec{"complement", part, false, false, "", 0};
  const auto t0 = Clock::now();
  ComplementOptions co;
  co.work_limit = ctx.opts.complement_work_limit;
  co.deadline = ctx.deadline;
  try {
    auto res = ctx.stage("complement " + part, [&] { return complement_search(group, co); });
    rec.ran = true;
    rec.splits = res.found;
    rec.detail = res.summary();
    if (res.found) witness = std::move(res.witness);
  } catch (const ResourceError& e) {
    if (required) throw;
    rec.detail = std::string("skipped: ") + e.what();
  }
  rec.ms = ms_since(t0);
  return rec;
}

PartResult decide_odd(Ctx& ctx, const FinAbGroup& part) {
  const std::string name = part.spec();
  PartResult res;
  auto space = std::make_shared<const DoubleSpace>(part);
  res.group = ctx.stage("enumerate " + name, [&] {
    return std::make_shared<const SymplecticGroup>(enumerate_sp(space, {ctx.opts.max_sp_order}));
  });
  const std::size_t n = res.group->order();

  const auto t0 = Clock::now();
  auto odd = std::make_shared<const Section>(ctx.stage("odd-section " + name, [&] { return odd_section(res.group); }));
  auto check = ctx.stage("verify " + name, [&] { return verify_homomorphism_auto(*odd, ctx.opts.full_verify_limit); });
  ctx.out.oracles.push_back({"odd-construction", name, true, check.ok(),
                             std::to_string(check.defects) + " defects over " + std::to_string(check.pairs) +
                                 (check.mode == VerifyMode::All ? " pairs" : " generator pairs"),
                             ms_since(t0)});
  ctx.out.cocycles.push_back(ctx.stage("cocycle " + name, [&] {
    return cocycle_record(name, "odd", obstruction_cocycle(odd, ctx.opts.obstruction_dense_limit), ctx.opts.seed);
  }));
  res.splits = check.ok();
  if (res.splits) res.witness = *odd;
  else res.evidence = "odd section has " + std::to_string(check.defects) + " homomorphism defects";
  ctx.check_deadline("odd " + name);

  // Independent oracles, where affordable.
  if (wants_coboundary(ctx.opts.oracle) && n <= ctx.opts.coboundary_max_sp) {
    auto sec = std::make_shared<const Section>(ctx.stage("particular-section " + name, [&] { return particular_section(res.group); }));
    auto o = ctx.stage("obstruction " + name, [&] { return obstruction_cocycle(sec, ctx.opts.obstruction_dense_limit); });
    ctx.out.cocycles.push_back(ctx.stage("cocycle-particular " + name, [&] { return cocycle_record(name, "particular", o, ctx.opts.seed); }));
    std::optional<Section> w;
    ctx.out.oracles.push_back(run_coboundary(ctx, name, sec, o, w));
  } else if (wants_coboundary(ctx.opts.oracle)) {
    ctx.out.oracles.push_back({"coboundary", name, false, false,
                               "skipped: |Sp| = " + std::to_string(n) + " above the coboundary limit", 0});
  }
  if (wants_complement(ctx.opts.oracle)) {
    std::optional<Section> w;
    ctx.out.oracles.push_back(run_complement(ctx, name, res.group, w, false));
  }
  return res;
}

PartResult decide_two(Ctx& ctx, const FinAbGroup& part) {
  const std::string name = part.spec();
  PartResult res;
  auto space = std::make_shared<const DoubleSpace>(part);
  res.group = ctx.stage("enumerate " + name, [&] {
    return std::make_shared<const SymplecticGroup>(enumerate_sp(space, {ctx.opts.max_sp_order}));
  });
  const std::size_t n = res.group->order();
  const bool cob = wants_coboundary(ctx.opts.oracle), comp = wants_complement(ctx.opts.oracle);

  std::optional<bool> cob_verdict, comp_verdict;
  std::optional<Section> cob_witness, comp_witness;
  if (cob) {
    if (n > ctx.opts.coboundary_max_sp) {
      if (!comp) throw ResourceError("stage coboundary " + name + ": |Sp| = " + std::to_string(n) + " above the coboundary limit");
      ctx.out.oracles.push_back({"coboundary", name, false, false, "skipped: |Sp| above the coboundary limit", 0});
    } else {
      auto sec = std::make_shared<const Section>(ctx.stage("particular-section " + name, [&] { return particular_section(res.group); }));
      auto o = ctx.stage("obstruction " + name, [&] { return obstruction_cocycle(sec, ctx.opts.obstruction_dense_limit); });
      ctx.out.cocycles.push_back(ctx.stage("cocycle " + name, [&] { return cocycle_record(name, "particular", o, ctx.opts.seed); }));
      auto rec = run_coboundary(ctx, name, sec, o, cob_witness);
      cob_verdict = rec.splits;
      if (!rec.splits) res.evidence = "coboundary system: " + rec.detail;
      ctx.out.oracles.push_back(std::move(rec));
    }
  }
  if (comp) {
    auto rec = run_complement(ctx, name, res.group, comp_witness, !cob_verdict.has_value());
    if (rec.ran) {
      comp_verdict = rec.splits;
      if (!rec.splits && res.evidence.empty()) res.evidence = rec.detail;
    }
    ctx.out.oracles.push_back(std::move(rec));
  }
  if (!cob_verdict && !comp_verdict) throw ResourceError("no splitting oracle could run for " + name);
  res.splits = cob_verdict ? *cob_verdict : *comp_verdict;
  if (res.splits) res.witness = cob_witness ? std::move(cob_witness) : std::move(comp_witness);
  return res;
}

PartResult decide_part(Ctx& ctx, const FinAbGroup& part) {
  if (part.size() % 2 == 1) return decide_odd(ctx, part);
  return decide_two(ctx, part);
}

}  // namespace

SplitVerdict split_check(const FinAbGroup& a, const SplitOptions& opts) {
  SplitVerdict out;
  Ctx ctx{opts, Deadline::after_ms(opts.budget_ms), out};
  out.group = a.spec();
  out.v_size = static_cast<std::size_t>(a.size() * a.size());
  out.theorem_prediction = a.size() % 4 != 0;

  const auto pd = primary_decompose(a);
  const bool mixed = !pd.odd.is_trivial() && !pd.two.is_trivial();
  if (!mixed) {
    auto res = decide_part(ctx, a);
    out.sp_order = res.group->order();
    out.splits = res.splits;
    out.evidence = res.evidence;
    out.witness = std::move(res.witness);
  } else {
    auto odd = decide_part(ctx, pd.odd);
    auto two = decide_part(ctx, pd.two);
    out.sp_order = odd.group->order() * two.group->order();
    out.splits = odd.splits && two.splits;
    if (!odd.splits) out.evidence = pd.odd.spec() + ": " + odd.evidence;
    if (!two.splits) out.evidence = pd.two.spec() + ": " + two.evidence;
    if (out.splits) {
      auto parts_group = ctx.stage("enumerate " + pd.parts.spec(), [&] {
        return std::make_shared<const SymplecticGroup>(
            enumerate_sp(std::make_shared<const DoubleSpace>(pd.parts), {opts.max_sp_order}));
      });
      out.composed_witness = ctx.stage("compose " + pd.parts.spec(), [&] { return coprime_compose(*odd.witness, *two.witness, parts_group); });
      auto a_space = std::make_shared<const DoubleSpace>(a);
      auto a_group = ctx.stage("enumerate " + a.spec(), [&] {
        return std::make_shared<const SymplecticGroup>(enumerate_sp(a_space, {opts.max_sp_order}));
      });
      if (a_group->order() != out.sp_order) throw InternalError("|Sp| of " + a.spec() + " differs from the product over its primary parts");
      const auto phi = primary_double_map(*a_space, parts_group->space(), pd);
      out.witness = ctx.stage("transport " + a.spec(), [&] { return transport_section(*out.composed_witness, a_group, phi); });
    }
  }

  // Oracles that ran on the same part must agree.
  for (auto& x : out.oracles)
    for (auto& y : out.oracles)
      if (x.ran && y.ran && x.part == y.part && x.splits != y.splits) out.agreement = false;

  if (out.witness) {
    out.witness_check = ctx.stage("witness " + a.spec(), [&] { return verify_homomorphism_auto(*out.witness, opts.full_verify_limit); });
    if (!out.witness_check.ok())
      throw InternalError("splitting witness for " + a.spec() + " has " + std::to_string(out.witness_check.defects) + " defects");
    out.witness_digest = section_digest(*out.witness);
  }
  out.discrepancy = out.splits != out.theorem_prediction;
  return out;
}

}  // namespace cliffext
