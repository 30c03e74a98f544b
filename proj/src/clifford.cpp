#include "cliffext/clifford.hpp"

#include <numeric>

#include "cliffext/errors.hpp"
#include "cliffext/modular_echelon.hpp"

namespace cliffext {

namespace {

std::vector<std::uint16_t> inverse_perm(std::span<const std::uint16_t> p) {
  std::vector<std::uint16_t> inv(p.size());
  for (std::size_t u = 0; u < p.size(); ++u) inv[p[u]] = static_cast<std::uint16_t>(u);
  return inv;
}

EndoMap map_from_perm(const DoubleSpace& space, std::span<const std::uint16_t> p) {
  std::vector<Rank> img(space.dim());
  for (std::size_t j = 0; j < space.dim(); ++j) img[j] = p[space.generator(j)];
  return EndoMap::from_images(space, img);
}

// b(g_i, g_j) numerators over D for the symmetric form beta(T., T.) - beta(., .).
std::vector<std::int64_t> defect_form(const DoubleSpace& space, const EndoMap& t) {
  const std::size_t n = space.dim();
  const std::int64_t d = space.phase_denominator();
  std::vector<Rank> img(n);
  for (std::size_t j = 0; j < n; ++j) img[j] = t.apply(space, space.generator(j));
  std::vector<std::int64_t> b(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      b[i * n + j] = mod_floor(static_cast<std::int64_t>(space.beta_num(img[i], img[j])) -
                                   space.beta_num(space.generator(i), space.generator(j)),
                               d);
  return b;
}

}  // namespace

CliffordElem::CliffordElem(std::shared_ptr<const DoubleSpace> space, EndoMap t, PhaseFn lam)
    : space_(std::move(space)), t_(std::move(t)), lam_(std::move(lam)) {
  if (t_.moduli() != space_->moduli()) throw ValidationError("symplectic part does not act on this space");
  if (lam_.size() != space_->size() || lam_.denominator() != space_->phase_denominator())
    throw ValidationError("phase table has the wrong shape for this space");
  perm_ = t_.permutation(*space_);
}

CliffordElem CliffordElem::identity(std::shared_ptr<const DoubleSpace> space) {
  auto id = EndoMap::identity(*space);
  auto lam = PhaseFn::zero(space->size(), space->phase_denominator());
  return CliffordElem(std::move(space), std::move(id), std::move(lam));
}

CliffordElem CliffordElem::kernel(std::shared_ptr<const DoubleSpace> space, Rank v) {
  auto id = EndoMap::identity(*space);
  auto lam = cliffext::kappa(*space, v);
  return CliffordElem(std::move(space), std::move(id), std::move(lam));
}

bool check_coboundary(const DoubleSpace& space, const EndoMap& t, const PhaseFn& lam) {
  if (lam.size() != space.size()) return false;
  const std::int64_t d = space.phase_denominator();
  const std::int64_t common = std::lcm(d, lam.denominator());
  const std::int64_t sl = common / lam.denominator(), sb = common / d;
  const auto p = t.permutation(space);
  for (Rank u = 0; u < space.size(); ++u)
    for (Rank v = 0; v < space.size(); ++v) {
      const std::int64_t lhs = (std::int64_t{lam.num(space.add(u, v))} - lam.num(u) - lam.num(v)) * sl;
      const std::int64_t rhs = (std::int64_t{space.beta_num(p[u], p[v])} - space.beta_num(u, v)) * sb;
      if (mod_floor(lhs - rhs, common) != 0) return false;
    }
  return true;
}

bool check_coboundary(const CliffordElem& x) { return check_coboundary(x.space(), x.map(), x.lambda()); }

CliffordElem twisted_mul(const CliffordElem& x, const CliffordElem& y) {
  if (!(x.space() == y.space())) throw ValidationError("twisted product of elements over different spaces");
  const auto& space = x.space();
  const std::int64_t d = space.phase_denominator();
  std::vector<std::uint16_t> lam(space.size());
  const auto sp = y.perm();
  for (Rank u = 0; u < space.size(); ++u)
    lam[u] = static_cast<std::uint16_t>((x.lambda().num(sp[u]) + y.lambda().num(u)) % d);
  return CliffordElem(x.space_ptr(), x.map() * y.map(), PhaseFn(d, std::move(lam)));
}

CliffordElem clifford_inverse(const CliffordElem& x) {
  const auto& space = x.space();
  const std::int64_t d = space.phase_denominator();
  const auto inv = inverse_perm(x.perm());
  std::vector<std::uint16_t> lam(space.size());
  for (Rank u = 0; u < space.size(); ++u) lam[u] = static_cast<std::uint16_t>((d - x.lambda().num(inv[u])) % d);
  return CliffordElem(x.space_ptr(), map_from_perm(space, inv), PhaseFn(d, std::move(lam)));
}

PhaseFn quadratic_lambda(const DoubleSpace& space, const EndoMap& t) {
  const std::size_t n = space.dim();
  const std::int64_t d = space.phase_denominator();
  const auto b = defect_form(space, t);
  // Linear correction: n_i (n_i - 1) / 2 * b_ii wraps to 1/2 at n_i = d_i exactly when
  // (d_i - 1) * d_i * b_ii is odd; c_i = 1 / (2 d_i) cancels it.
  std::vector<std::int64_t> c(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t di = space.modulus(i);
    const std::int64_t k = di * b[i * n + i] / d;
    if (((di - 1) * k) % 2 != 0) c[i] = d / (2 * di);
  }
  std::vector<std::uint16_t> lam(space.size());
  for (Rank u = 0; u < space.size(); ++u) {
    auto x = space.coords(u);
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!x[i]) continue;
      const std::int64_t ni = x[i];
      acc += ni * (ni - 1) / 2 % d * b[i * n + i] + ni * c[i];
      for (std::size_t j = i + 1; j < n; ++j) acc += ni * x[j] % d * b[i * n + j];
      acc %= d;
    }
    lam[u] = static_cast<std::uint16_t>(acc);
  }
  return PhaseFn(d, std::move(lam));
}

PhaseFn solve_lambda_linear(const DoubleSpace& space, const EndoMap& t) {
  // Unknown lam(u) mod D for every u. Generator equations
  // lam(u + g_i) - lam(u) - lam(g_i) = b(u, g_i) together with lam(0) = 0 imply the full
  // condition by induction on the second argument.
  const std::int64_t d = space.phase_denominator();
  const std::size_t vs = space.size();
  const auto p = t.permutation(space);
  ModularSolver solver(d, vs);
  solver.add_equation({{0, 1}}, 0, d);
  for (Rank u = 0; u < vs; ++u)
    for (std::size_t i = 0; i < space.dim(); ++i) {
      const Rank g = space.generator(i);
      if (g == 0) continue;
      const Rank w = space.add(u, g);
      const std::int64_t rhs =
          mod_floor(std::int64_t{space.beta_num(p[u], p[g])} - space.beta_num(u, g), d);
      std::vector<SparseEntry> row{{w, 1}, {u, d - 1}, {g, d - 1}};
      solver.add_equation(row, rhs, d);
    }
  auto sol = solver.solve();
  if (!sol) throw InternalError("coboundary condition has no solution with denominator " + std::to_string(d));
  std::vector<std::uint16_t> lam(vs);
  for (std::size_t u = 0; u < vs; ++u) lam[u] = static_cast<std::uint16_t>((*sol)[u]);
  PhaseFn out(d, std::move(lam));
  if (!check_coboundary(space, t, out)) throw InternalError("linear solution fails the coboundary condition");
  return out;
}

PhaseFn particular_lambda(const DoubleSpace& space, const EndoMap& t) {
  auto lam = quadratic_lambda(space, t);
  if (check_coboundary(space, t, lam)) return lam;
  return solve_lambda_linear(space, t);
}

std::vector<CliffordElem> all_lifts(std::shared_ptr<const DoubleSpace> space, const EndoMap& t) {
  const auto base = particular_lambda(*space, t);
  std::vector<CliffordElem> out;
  out.reserve(space->size());
  for (Rank v = 0; v < space->size(); ++v) out.emplace_back(space, t, base + kappa(*space, v));
  return out;
}

std::optional<Rank> kernel_parameter(const CliffordElem& x) {
  if (!(x.map() == EndoMap::identity(x.space())) || !is_character(x.space(), x.lambda())) return std::nullopt;
  return kappa_inv(x.space(), x.lambda());
}

}  // namespace cliffext
