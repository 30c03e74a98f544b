#include "cliffext/cyclic_two.hpp"

#include <algorithm>

#include "cliffext/errors.hpp"

namespace cliffext {

namespace {

void require_power_of_two(std::int64_t n) {
  if (n < 2 || (n & (n - 1)) != 0) throw PreconditionError("N must be a power of two >= 2, got " + std::to_string(n));
}

}  // namespace

std::shared_ptr<const DoubleSpace> cyclic_space(std::int64_t n) {
  return std::make_shared<const DoubleSpace>(FinAbGroup::make({n}));
}

EndoMap cyclic_t(const DoubleSpace& space) { return EndoMap(space.moduli(), {1, 1, 0, 1}); }
EndoMap cyclic_s(const DoubleSpace& space) { return EndoMap(space.moduli(), {0, -1, 1, 0}); }

CliffordElem lift_t(std::int64_t n, std::int64_t x, std::int64_t y) {
  require_power_of_two(n);
  auto space = cyclic_space(n);
  const std::int64_t d = 2 * n;
  std::vector<std::uint16_t> lam(space->size());
  for (Rank u = 0; u < space->size(); ++u) {
    const std::int64_t a = space->coords(u)[0], p = space->coords(u)[1];
    lam[u] = static_cast<std::uint16_t>(mod_floor(p * p + 2 * (x * a + y * p), d));
  }
  auto t = cyclic_t(*space);
  return CliffordElem(space, std::move(t), PhaseFn(d, std::move(lam)));
}

CliffordElem lift_s(std::int64_t n, std::int64_t z, std::int64_t w) {
  require_power_of_two(n);
  auto space = cyclic_space(n);
  const std::int64_t d = 2 * n;
  std::vector<std::uint16_t> lam(space->size());
  for (Rank u = 0; u < space->size(); ++u) {
    const std::int64_t a = space->coords(u)[0], p = space->coords(u)[1];
    lam[u] = static_cast<std::uint16_t>(mod_floor(2 * (-a * p + z * a + w * p), d));
  }
  auto s = cyclic_s(*space);
  return CliffordElem(space, std::move(s), PhaseFn(d, std::move(lam)));
}

PhaseFn power_phase(const CliffordElem& lift, std::int64_t n) {
  if (n < 1) throw ValidationError("power must be at least 1");
  CliffordElem acc = lift;
  for (std::int64_t i = 1; i < n; ++i) acc = twisted_mul(acc, lift);
  return acc.lambda();
}

ParityReport parity_constraint_check(std::int64_t n) {
  require_power_of_two(n);
  ParityReport rep;
  rep.n = n;
  const auto space = cyclic_space(n);
  std::vector<bool> trivial(static_cast<std::size_t>(n), true);
  for (std::int64_t x = 0; x < n; ++x)
    for (std::int64_t y = 0; y < n; ++y) {
      ++rep.pairs;
      const auto lam = power_phase(lift_t(n, x, y), n);
      bool zero = true;
      for (Rank u = 0; u < space->size(); ++u) {
        const std::int64_t p = space->coords(u)[1];
        // (-1)^{p (1 + x)} as a numerator over 2N.
        const std::int64_t closed = (p * (1 + x)) % 2 * n;
        if (lam.num(u) != closed) ++rep.closed_form_mismatches;
        if (lam.num(u) != 0) zero = false;
      }
      if (!zero) trivial[static_cast<std::size_t>(x)] = false;
    }
  rep.trivial_iff_x_odd = true;
  for (std::int64_t x = 0; x < n; ++x) {
    if (trivial[static_cast<std::size_t>(x)]) rep.trivial_x.push_back(x);
    if (trivial[static_cast<std::size_t>(x)] != (x % 2 == 1)) rep.trivial_iff_x_odd = false;
  }
  return rep;
}

ResidualCharacter residual_character(std::int64_t n, std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t w) {
  require_power_of_two(n);
  ResidualCharacter r;
  r.closed_form = {mod_floor(-z - w - 2 * y, n), mod_floor(-z - w - 2 * y + 2 * x, n)};

  const auto t = lift_t(n, x, y), s = lift_s(n, z, w);
  const auto st = twisted_mul(s, t);
  const auto st3 = twisted_mul(twisted_mul(st, st), st);
  const auto s_inv = clifford_inverse(s);
  const auto wv = twisted_mul(st3, twisted_mul(s_inv, s_inv));
  const auto& space = wv.space();
  if (!(wv.map() == EndoMap::identity(space))) throw InternalError("(st)^3 s^-2 is not over the identity");
  if (!is_character(space, wv.lambda())) throw InternalError("phase of (st)^3 s^-2 is not additive");
  // chi_v(u) = (v1 u1 + v2 u2) / N read off the two generators.
  const std::int64_t v1 = wv.lambda().num(space.generator(0)), v2 = wv.lambda().num(space.generator(1));
  if (v1 % 2 || v2 % 2) throw InternalError("character value outside (1/N)Z");
  r.direct = {v1 / 2 % n, v2 / 2 % n};
  if (r.direct != r.closed_form)
    throw InternalError("residual character mismatch for N=" + std::to_string(n) + ": direct (" + std::to_string(r.direct.first) +
                        "," + std::to_string(r.direct.second) + ") vs closed form (" + std::to_string(r.closed_form.first) + "," +
                        std::to_string(r.closed_form.second) + ")");
  return r;
}

ConstraintReport constraint_report(std::int64_t n) {
  require_power_of_two(n);
  ConstraintReport rep;
  rep.n = n;
  const auto par = parity_constraint_check(n);
  rep.order_set = par.trivial_x;
  for (std::int64_t x = 0; x < n; ++x) {
    bool any = false;
    for (std::int64_t y = 0; y < n && !any; ++y)
      for (std::int64_t z = 0; z < n && !any; ++z)
        for (std::int64_t w = 0; w < n && !any; ++w) {
          ++rep.tuples;
          const auto r = residual_character(n, x, y, z, w);
          any = r.direct.first == 0 && r.direct.second == 0;
        }
    if (any) rep.relation_set.push_back(x);
  }
  std::set_intersection(rep.order_set.begin(), rep.order_set.end(), rep.relation_set.begin(), rep.relation_set.end(),
                        std::back_inserter(rep.intersection));
  std::vector<std::int64_t> odd, half;
  for (std::int64_t x = 0; x < n; ++x) {
    if (x % 2) odd.push_back(x);
    if (2 * x % n == 0) half.push_back(x);
  }
  rep.closed_forms_match = rep.order_set == odd && rep.relation_set == half && par.ok();
  return rep;
}

}  // namespace cliffext
