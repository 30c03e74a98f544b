#include "cliffext/section.hpp"

#include <cstdio>
#include <numeric>
#include <random>

#include "cliffext/errors.hpp"
#include "cliffext/kernels.hpp"
#include "parallel.hpp"

namespace cliffext {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// For a summand placed on the base factors `factors` of a sum, the sum coordinate of each
// summand coordinate (kNone for the placeholder coordinates of a trivial summand).
std::vector<std::size_t> summand_coords(const DoubleSpace& sum, const DoubleSpace& part, std::span<const std::size_t> factors) {
  const std::size_t mp = part.half(), ms = sum.half();
  std::vector<std::size_t> out(part.dim(), kNone);
  if (part.base().is_trivial()) return out;
  if (factors.size() != mp) throw ValidationError("summand factor list does not match its group");
  for (std::size_t k = 0; k < mp; ++k) {
    if (factors[k] >= ms || sum.modulus(factors[k]) != part.modulus(k))
      throw ValidationError("summand factor " + std::to_string(k) + " does not match the sum");
    out[k] = factors[k];
    out[mp + k] = ms + factors[k];
  }
  return out;
}

// Rank in the summand of the coordinates of u (a sum rank) on the summand block.
std::vector<Rank> projection(const DoubleSpace& sum, const DoubleSpace& part, const std::vector<std::size_t>& coords) {
  std::vector<Rank> out(sum.size());
  std::vector<std::int64_t> c(part.dim());
  for (Rank u = 0; u < sum.size(); ++u) {
    auto x = sum.coords(u);
    for (std::size_t i = 0; i < part.dim(); ++i) c[i] = coords[i] == kNone ? 0 : x[coords[i]];
    out[u] = part.rank_of(c);
  }
  return out;
}

Rank embed_rank(const DoubleSpace& sum, const DoubleSpace& part, const std::vector<std::size_t>& coords, Rank u) {
  std::vector<std::int64_t> c(sum.dim(), 0);
  auto x = part.coords(u);
  for (std::size_t i = 0; i < part.dim(); ++i)
    if (coords[i] != kNone) c[coords[i]] = x[i];
  return sum.rank_of(c);
}

// The block of t on the summand; InternalError unless t maps the summand into itself.
EndoMap block_of(const DoubleSpace& sum, const EndoMap& t, const DoubleSpace& part, const std::vector<std::size_t>& coords) {
  const std::size_t n = part.dim();
  std::vector<bool> inside(sum.dim(), false);
  for (auto c : coords)
    if (c != kNone) inside[c] = true;
  for (std::size_t i = 0; i < sum.dim(); ++i)
    for (std::size_t j = 0; j < sum.dim(); ++j)
      if (inside[i] != inside[j] && t.at(i, j) != 0) throw InternalError("symplectic map is not block diagonal: " + t.str());
  std::vector<std::int64_t> e(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (coords[i] == kNone || coords[j] == kNone)
        e[i * n + j] = i == j ? 1 : 0;
      else
        e[i * n + j] = t.at(coords[i], coords[j]);
    }
  return EndoMap(part.moduli(), std::move(e));
}

// S on the summand, identity elsewhere.
EndoMap extend_by_identity(const DoubleSpace& sum, const EndoMap& s, const std::vector<std::size_t>& coords) {
  const std::size_t n = sum.dim(), np = coords.size();
  std::vector<std::int64_t> e(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < np; ++j)
      if (coords[i] != kNone && coords[j] != kNone) e[coords[i] * n + coords[j]] = s.at(i, j);
  return EndoMap(sum.moduli(), std::move(e));
}

std::vector<std::size_t> iota_n(std::size_t from, std::size_t count) {
  std::vector<std::size_t> v(count);
  std::iota(v.begin(), v.end(), from);
  return v;
}

std::size_t effective_rank(const FinAbGroup& g) { return g.is_trivial() ? 0 : g.rank(); }

}  // namespace

Section::Section(std::shared_ptr<const SymplecticGroup> group, std::vector<std::uint16_t> phases)
    : group_(std::move(group)), phases_(std::move(phases)) {
  const std::size_t vs = space().size();
  if (phases_.size() != group_->order() * vs) throw ValidationError("section table has the wrong shape");
  const auto d = static_cast<std::uint16_t>(space().phase_denominator());
  for (auto v : phases_)
    if (v >= d) throw ValidationError("section phase not reduced");
  for (auto v : lambda(group_->identity()))
    if (v) throw ValidationError("section is not normalized at the identity");
}

CliffordElem Section::elem(std::size_t t) const {
  auto row = lambda(t);
  return CliffordElem(group_->space_ptr(), group_->element(t),
                      PhaseFn(space().phase_denominator(), std::vector<std::uint16_t>(row.begin(), row.end())));
}

bool Section::rows_valid() const {
  for (std::size_t t = 0; t < group_->order(); ++t)
    if (!check_coboundary(elem(t))) return false;
  return true;
}

Section particular_section(std::shared_ptr<const SymplecticGroup> group) {
  const auto& space = group->space();
  const std::size_t vs = space.size();
  std::vector<std::uint16_t> phases(group->order() * vs);
  detail::parallel_for(group->order(), [&](std::size_t t) {
    auto lam = particular_lambda(space, group->element(t));
    std::copy(lam.values().begin(), lam.values().end(), phases.begin() + static_cast<std::ptrdiff_t>(t * vs));
  });
  return Section(std::move(group), std::move(phases));
}

Section odd_section(std::shared_ptr<const SymplecticGroup> group) {
  const auto& space = group->space();
  if (space.base().size() % 2 == 0)
    throw PreconditionError("odd_section needs |A| odd, got |A| = " + std::to_string(space.base().size()));
  const std::size_t vs = space.size();
  const std::int64_t d = space.phase_denominator(), e = d / 2;
  const std::int64_t inv2 = (e + 1) / 2;  // 2^-1 mod e
  std::vector<std::uint16_t> phases(group->order() * vs);
  detail::parallel_for(group->order(), [&](std::size_t t) {
    auto p = group->perm(t);
    for (Rank u = 0; u < vs; ++u) {
      // q / D has odd order, so q is even and q / D = (q / 2) / e.
      const std::int64_t q = mod_floor(std::int64_t{space.beta_num(p[u], p[u])} - space.beta_num(u, u), d);
      if (q % 2) throw InternalError("quadratic defect of odd order expected");
      phases[t * vs + u] = static_cast<std::uint16_t>(2 * ((q / 2) * inv2 % e));
    }
  });
  return Section(std::move(group), std::move(phases));
}

Section shift_section(const Section& sec, std::span<const Rank> cochain) {
  const auto& group = sec.group();
  const auto& space = sec.space();
  if (cochain.size() != group.order()) throw ValidationError("cochain must have one value per element of Sp");
  const std::size_t vs = space.size();
  const auto d = static_cast<std::uint32_t>(space.phase_denominator());
  std::vector<std::uint16_t> phases(sec.phases().begin(), sec.phases().end());
  detail::parallel_for(group.order(), [&](std::size_t t) {
    auto p = group.perm(t);
    for (Rank u = 0; u < vs; ++u)
      phases[t * vs + u] = static_cast<std::uint16_t>((phases[t * vs + u] + space.omega_num(cochain[t], p[u])) % d);
  });
  return Section(sec.group_ptr(), std::move(phases));
}

HomomorphismCheck verify_homomorphism(const Section& sec, VerifyMode mode, std::span<const std::size_t> gens) {
  HomomorphismCheck res;
  res.mode = mode;
  const auto& group = sec.group();
  if (mode == VerifyMode::All) {
    res.pairs = static_cast<std::uint64_t>(group.order()) * group.order();
    res.defects = kernels::omp::section_defects_all(group, sec.phases());
    return res;
  }
  std::vector<std::size_t> own;
  if (gens.empty()) {
    own = find_generating_set(group);
    gens = own;
  }
  if (closure_size(group, gens) != group.order()) throw ValidationError("verification generators do not generate Sp");
  auto rmul = right_multiplication_table(group, gens);
  res.pairs = static_cast<std::uint64_t>(group.order()) * gens.size();
  res.defects = kernels::omp::section_defects_right(group, sec.phases(), gens, rmul);
  return res;
}

HomomorphismCheck verify_homomorphism_sampled(const Section& sec, std::uint64_t samples, std::uint64_t seed) {
  HomomorphismCheck res;
  res.mode = VerifyMode::Sampled;
  res.pairs = samples;
  const auto& group = sec.group();
  const std::size_t vs = sec.space().size();
  const auto d = static_cast<std::uint32_t>(sec.space().phase_denominator());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, group.order() - 1);
  const auto ph = sec.phases();
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::size_t t = pick(rng), s = pick(rng), ts = group.multiply(t, s);
    const auto sp = group.perm(s);
    for (std::size_t u = 0; u < vs; ++u)
      if ((ph[t * vs + sp[u]] + ph[s * vs + u]) % d != ph[ts * vs + u]) {
        ++res.defects;
        break;
      }
  }
  return res;
}

HomomorphismCheck verify_homomorphism_auto(const Section& sec, std::uint64_t pair_limit) {
  const auto n = static_cast<std::uint64_t>(sec.group().order());
  return verify_homomorphism(sec, n * n <= pair_limit ? VerifyMode::All : VerifyMode::Generators);
}

Section coprime_compose(const Section& sec_b, const Section& sec_c, std::shared_ptr<const SymplecticGroup> group_bc) {
  const auto& b = sec_b.space().base();
  const auto& c = sec_c.space().base();
  if (std::gcd(b.size(), c.size()) != 1)
    throw PreconditionError("coprime_compose needs coprime orders, got " + b.spec() + " and " + c.spec());
  const auto& sum = group_bc->space();
  if (!(sum.base() == direct_sum(b, c))) throw ValidationError("composed group is not direct_sum(B, C)");
  const auto fb = iota_n(0, effective_rank(b));
  const auto fc = iota_n(effective_rank(b), effective_rank(c));
  const auto cb = summand_coords(sum, sec_b.space(), fb);
  const auto cc = summand_coords(sum, sec_c.space(), fc);
  const auto pb = projection(sum, sec_b.space(), cb);
  const auto pc = projection(sum, sec_c.space(), cc);
  const std::int64_t d = sum.phase_denominator();
  const std::int64_t wb = d / sec_b.space().phase_denominator(), wc = d / sec_c.space().phase_denominator();
  const std::size_t vs = sum.size();
  std::vector<std::uint16_t> phases(group_bc->order() * vs);
  detail::parallel_for(group_bc->order(), [&](std::size_t t) {
    const auto& tm = group_bc->element(t);
    auto ib = sec_b.group().find(block_of(sum, tm, sec_b.space(), cb));
    auto ic = sec_c.group().find(block_of(sum, tm, sec_c.space(), cc));
    if (!ib || !ic) throw InternalError("diagonal block missing from a summand's symplectic group");
    auto lb = sec_b.lambda(*ib);
    auto lc = sec_c.lambda(*ic);
    for (Rank u = 0; u < vs; ++u) phases[t * vs + u] = static_cast<std::uint16_t>((lb[pb[u]] * wb + lc[pc[u]] * wc) % d);
  });
  return Section(std::move(group_bc), std::move(phases));
}

CliffordElem embed_clifford(const CliffordElem& x, const FinAbGroup& c) {
  const auto& b = x.space().base();
  auto sum = std::make_shared<const DoubleSpace>(direct_sum(b, c));
  const auto cb = summand_coords(*sum, x.space(), iota_n(0, effective_rank(b)));
  const auto pb = projection(*sum, x.space(), cb);
  const std::int64_t d = sum->phase_denominator(), w = d / x.space().phase_denominator();
  std::vector<std::uint16_t> lam(sum->size());
  for (Rank u = 0; u < sum->size(); ++u) lam[u] = static_cast<std::uint16_t>(x.lambda().num(pb[u]) * w % d);
  auto t = extend_by_identity(*sum, x.map(), cb);
  return CliffordElem(sum, std::move(t), PhaseFn(d, std::move(lam)));
}

Section restrict_section(const Section& sec_a, std::span<const std::size_t> factors, std::shared_ptr<const SymplecticGroup> group_b) {
  const auto& a = sec_a.space();
  std::vector<std::int64_t> orders;
  for (auto f : factors) {
    if (f >= a.half()) throw ValidationError("factor index out of range");
    orders.push_back(a.base().order(f));
  }
  const auto& vb = group_b->space();
  if (!(vb.base() == FinAbGroup::from_factors(orders))) throw ValidationError("restriction target does not match the chosen factors");
  if (!verify_homomorphism_auto(sec_a, 50'000'000).ok()) throw PreconditionError("restriction needs a homomorphic section");
  const auto cb = summand_coords(a, vb, factors);
  const std::int64_t ratio = a.phase_denominator() / vb.phase_denominator();
  const std::size_t vs = vb.size();
  std::vector<Rank> emb(vs);
  for (Rank u = 0; u < vs; ++u) emb[u] = embed_rank(a, vb, cb, u);
  std::vector<std::uint16_t> phases(group_b->order() * vs);
  detail::parallel_for(group_b->order(), [&](std::size_t s) {
    auto idx = sec_a.group().find(extend_by_identity(a, group_b->element(s), cb));
    if (!idx) throw InternalError("S + id is not symplectic on the ambient double");
    auto row = sec_a.lambda(*idx);
    for (Rank u = 0; u < vs; ++u) {
      const std::uint16_t v = row[emb[u]];
      if (v % ratio) throw InternalError("restricted phase has a denominator beyond the summand's bound");
      phases[s * vs + u] = static_cast<std::uint16_t>(v / ratio);
    }
  });
  return Section(std::move(group_b), std::move(phases));
}

Section transport_section(const Section& src, std::shared_ptr<const SymplecticGroup> target, std::span<const Rank> phi) {
  const auto& vt = target->space();
  const auto& vsrc = src.space();
  if (phi.size() != vt.size() || vt.size() != vsrc.size() || vt.phase_denominator() != vsrc.phase_denominator())
    throw ValidationError("transport map has the wrong shape");
  std::vector<Rank> inv(vt.size(), 0);
  std::vector<bool> hit(vt.size(), false);
  for (Rank u = 0; u < vt.size(); ++u) {
    if (hit[phi[u]]) throw ValidationError("transport map is not bijective");
    hit[phi[u]] = true;
    inv[phi[u]] = u;
  }
  for (Rank u = 0; u < vt.size(); ++u)
    for (Rank v = 0; v < vt.size(); ++v)
      if (vsrc.beta_num(phi[u], phi[v]) != vt.beta_num(u, v)) throw InternalError("transport map does not preserve beta");
  const std::size_t vs = vt.size(), dim = vsrc.dim();
  std::vector<std::uint16_t> phases(target->order() * vs);
  detail::parallel_for(target->order(), [&](std::size_t t) {
    auto p = target->perm(t);
    std::vector<Rank> img(dim);
    for (std::size_t j = 0; j < dim; ++j) img[j] = phi[p[inv[vsrc.generator(j)]]];
    auto idx = src.group().find_images(img);
    if (!idx) throw InternalError("conjugated map missing from the source symplectic group");
    auto row = src.lambda(*idx);
    for (Rank u = 0; u < vs; ++u) phases[t * vs + u] = row[phi[u]];
  });
  return Section(std::move(target), std::move(phases));
}

std::vector<Rank> primary_double_map(const DoubleSpace& a, const DoubleSpace& parts, const PrimaryDecomposition& pd) {
  const GroupHom dual = dual_map(pd.from_parts);
  const std::size_t m = a.half(), mp = parts.half();
  std::vector<Rank> phi(a.size());
  std::vector<bool> hit(parts.size(), false);
  for (Rank u = 0; u < a.size(); ++u) {
    auto x = a.coords(u);
    std::vector<std::int64_t> av(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(m));
    std::vector<std::int64_t> chi(x.begin() + static_cast<std::ptrdiff_t>(m), x.end());
    auto a2 = pd.to_parts.apply(av);
    auto chi2 = dual.apply(chi);
    std::vector<std::int64_t> c(a2);
    c.insert(c.end(), chi2.begin(), chi2.end());
    if (c.size() != 2 * mp) throw InternalError("primary map has the wrong arity");
    phi[u] = parts.rank_of(c);
    if (hit[phi[u]]) throw InternalError("primary map is not bijective");
    hit[phi[u]] = true;
  }
  return phi;
}

std::string section_digest(const Section& sec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](std::uint8_t b) {
    h ^= b;
    h *= 0x100000001b3ULL;
  };
  for (char ch : sec.space().base().spec()) feed(static_cast<std::uint8_t>(ch));
  for (auto v : sec.phases()) {
    feed(static_cast<std::uint8_t>(v & 0xff));
    feed(static_cast<std::uint8_t>(v >> 8));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cliffext
