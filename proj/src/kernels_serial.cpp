// Reference versions: straightforward loops over the library's own primitives.

#include <algorithm>

#include "cliffext/errors.hpp"
#include "cliffext/kernels.hpp"

namespace cliffext::kernels {

std::vector<std::uint16_t> omega_table(const DoubleSpace& space) {
  const std::size_t n = space.size();
  if (n > 4096) throw ResourceError("omega table for |V| = " + std::to_string(n) + " exceeds 4096 elements");
  std::vector<std::uint16_t> t(n * n);
  for (Rank u = 0; u < n; ++u)
    for (Rank v = 0; v < n; ++v) t[u * n + v] = static_cast<std::uint16_t>(space.omega_num(u, v));
  return t;
}

void lift_tuple_phases(const DoubleSpace& space, std::span<const std::uint16_t> omega, std::span<const std::uint16_t> gen_phases,
                       std::size_t gen_count, std::uint64_t tuple, std::vector<std::uint16_t>& out) {
  const std::size_t vs = space.size();
  const auto d = static_cast<std::uint32_t>(space.phase_denominator());
  out.resize(gen_count * vs);
  for (std::size_t k = gen_count; k-- > 0;) {
    const std::size_t v = tuple % vs;
    tuple /= vs;
    const std::uint16_t* w = omega.data() + v * vs;
    const std::uint16_t* base = gen_phases.data() + k * vs;
    std::uint16_t* o = out.data() + k * vs;
    for (std::size_t u = 0; u < vs; ++u) o[u] = static_cast<std::uint16_t>((base[u] + w[u]) % d);
  }
}

bool closure_of_lifts(const SymplecticGroup& group, std::span<const std::size_t> gens, std::span<const std::uint32_t> rmul,
                      std::span<const std::uint16_t> lift_phases, std::vector<std::uint16_t>& phases,
                      std::vector<std::uint32_t>& seen, std::uint32_t stamp, std::vector<std::uint32_t>& queue) {
  const std::size_t n = group.order(), vs = group.space().size(), k = gens.size();
  const auto d = static_cast<std::uint32_t>(group.space().phase_denominator());
  phases.resize(n * vs);
  seen.resize(n, 0);
  queue.clear();
  const std::size_t id = group.identity();
  seen[id] = stamp;
  std::fill_n(phases.begin() + static_cast<std::ptrdiff_t>(id * vs), vs, 0);
  queue.push_back(static_cast<std::uint32_t>(id));
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t t = queue[head];
    const std::uint16_t* p = phases.data() + t * vs;
    for (std::size_t g = 0; g < k; ++g) {
      const std::size_t y = rmul[t * k + g];
      const auto gp = group.perm(gens[g]);
      const std::uint16_t* h = lift_phases.data() + g * vs;
      std::uint16_t* q = phases.data() + y * vs;
      if (seen[y] == stamp) {
        for (std::size_t u = 0; u < vs; ++u)
          if ((p[gp[u]] + h[u]) % d != q[u]) return false;
      } else {
        for (std::size_t u = 0; u < vs; ++u) q[u] = static_cast<std::uint16_t>((p[gp[u]] + h[u]) % d);
        seen[y] = stamp;
        queue.push_back(static_cast<std::uint32_t>(y));
      }
    }
  }
  return queue.size() == n;
}

namespace serial {

namespace {

void dfs(const DoubleSpace& space, const std::vector<std::vector<Rank>>& cand, const std::vector<std::uint32_t>& wg,
         std::vector<Rank>& img, std::size_t j, std::size_t max_order, std::vector<Rank>& out) {
  const std::size_t n = space.dim();
  if (j == n) {
    if (out.size() / n >= max_order)
      throw ResourceError("Sp(V_A) for " + space.base().spec() + " has more than " + std::to_string(max_order) + " elements");
    out.insert(out.end(), img.begin(), img.end());
    return;
  }
  for (Rank x : cand[j]) {
    bool ok = true;
    for (std::size_t k = 0; k < j && ok; ++k) ok = space.omega_num(x, img[k]) == wg[j * n + k];
    if (!ok) continue;
    img[j] = x;
    dfs(space, cand, wg, img, j + 1, max_order, out);
  }
}

}  // namespace

std::vector<Rank> symplectic_images(const DoubleSpace& space, std::size_t max_order) {
  const std::size_t n = space.dim();
  std::vector<std::vector<Rank>> cand(n);
  for (std::size_t j = 0; j < n; ++j)
    for (Rank x = 0; x < space.size(); ++x)
      if (space.scale(space.modulus(j), x) == 0) cand[j].push_back(x);
  std::vector<std::uint32_t> wg(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) wg[j * n + k] = space.omega_num(space.generator(j), space.generator(k));
  std::vector<Rank> img(n), out;
  dfs(space, cand, wg, img, 0, max_order, out);
  return out;
}

std::uint64_t section_defects_all(const SymplecticGroup& group, std::span<const std::uint16_t> phases) {
  const std::size_t n = group.order(), vs = group.space().size();
  const auto d = static_cast<std::uint32_t>(group.space().phase_denominator());
  std::uint64_t bad = 0;
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t s = 0; s < n; ++s) {
      const std::size_t ts = group.multiply(t, s);
      const auto sp = group.perm(s);
      for (std::size_t u = 0; u < vs; ++u)
        if ((phases[t * vs + sp[u]] + phases[s * vs + u]) % d != phases[ts * vs + u]) {
          ++bad;
          break;
        }
    }
  return bad;
}

std::uint64_t section_defects_right(const SymplecticGroup& group, std::span<const std::uint16_t> phases,
                                    std::span<const std::size_t> gens, std::span<const std::uint32_t> rmul) {
  const std::size_t n = group.order(), vs = group.space().size(), k = gens.size();
  const auto d = static_cast<std::uint32_t>(group.space().phase_denominator());
  std::uint64_t bad = 0;
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t g = 0; g < k; ++g) {
      const std::size_t s = gens[g], ts = rmul[t * k + g];
      const auto sp = group.perm(s);
      for (std::size_t u = 0; u < vs; ++u)
        if ((phases[t * vs + sp[u]] + phases[s * vs + u]) % d != phases[ts * vs + u]) {
          ++bad;
          break;
        }
    }
  return bad;
}

std::vector<std::uint16_t> obstruction_table(const SymplecticGroup& group, std::span<const std::uint16_t> phases) {
  const auto& space = group.space();
  const std::size_t n = group.order(), vs = space.size();
  const std::int64_t d = space.phase_denominator();
  std::vector<std::uint16_t> out(n * n);
  std::vector<std::uint16_t> gamma(vs);
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t s = 0; s < n; ++s) {
      const std::size_t ts = group.multiply(t, s);
      const auto sp = group.perm(s);
      for (std::size_t u = 0; u < vs; ++u)
        gamma[u] = static_cast<std::uint16_t>((phases[t * vs + sp[u]] + phases[s * vs + u] + d - phases[ts * vs + u]) % d);
      PhaseFn g(d, gamma);
      if (!is_character(space, g)) throw ValidationError("section defect is not a character; corrupted section");
      out[t * n + s] = group.perm(ts)[kappa_inv(space, g)];
    }
  return out;
}

std::uint64_t cocycle_failures_all(const SymplecticGroup& group, std::span<const std::uint16_t> table) {
  const auto& space = group.space();
  const std::size_t n = group.order();
  std::uint64_t bad = 0;
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t s = 0; s < n; ++s) {
      const std::size_t ts = group.multiply(t, s);
      for (std::size_t r = 0; r < n; ++r) {
        const std::size_t sr = group.multiply(s, r);
        const Rank lhs = space.add(group.perm(t)[table[s * n + r]], table[t * n + sr]);
        const Rank rhs = space.add(table[t * n + s], table[ts * n + r]);
        if (lhs != rhs) ++bad;
      }
    }
  return bad;
}

std::uint64_t cocycle_failures_sampled(const SymplecticGroup& group, std::span<const std::uint16_t> table,
                                       std::span<const std::uint32_t> triples) {
  const auto& space = group.space();
  const std::size_t n = group.order();
  std::uint64_t bad = 0;
  for (std::size_t i = 0; i + 2 < triples.size(); i += 3) {
    const std::size_t t = triples[i], s = triples[i + 1], r = triples[i + 2];
    const std::size_t ts = group.multiply(t, s), sr = group.multiply(s, r);
    const Rank lhs = space.add(group.perm(t)[table[s * n + r]], table[t * n + sr]);
    const Rank rhs = space.add(table[t * n + s], table[ts * n + r]);
    if (lhs != rhs) ++bad;
  }
  return bad;
}

ComplementScan complement_scan(const SymplecticGroup& group, std::span<const std::size_t> gens,
                               std::span<const std::uint32_t> rmul, std::span<const std::uint16_t> gen_phases,
                               std::uint64_t tuple_count, const Deadline& deadline) {
  const auto omega = omega_table(group.space());
  std::vector<std::uint16_t> lifts, phases;
  std::vector<std::uint32_t> seen, queue;
  ComplementScan res;
  for (std::uint64_t tuple = 0; tuple < tuple_count; ++tuple) {
    if ((tuple & 63) == 0 && deadline.expired()) throw ResourceError("complement search exceeded its time budget");
    lift_tuple_phases(group.space(), omega, gen_phases, gens.size(), tuple, lifts);
    const bool ok = closure_of_lifts(group, gens, rmul, lifts, phases, seen, static_cast<std::uint32_t>(tuple + 1), queue);
    ++res.examined;
    if (ok) {
      res.found = true;
      res.tuple = tuple;
      break;
    }
  }
  return res;
}

}  // namespace serial
}  // namespace cliffext::kernels
