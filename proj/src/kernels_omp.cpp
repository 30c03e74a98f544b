#include <omp.h>

#include <atomic>
#include <limits>

#include "cliffext/errors.hpp"
#include "cliffext/kernels.hpp"

namespace cliffext::kernels::omp {

namespace {

// omega lookups through a table when it fits, otherwise through the space.
struct Omega {
  explicit Omega(const DoubleSpace& s) : space(s), n(s.size()) {
    if (n <= 4096) table = omega_table(s);
  }
  std::uint32_t operator()(Rank u, Rank v) const {
    return table.empty() ? space.omega_num(u, v) : table[static_cast<std::size_t>(u) * n + v];
  }
  const DoubleSpace& space;
  std::size_t n;
  std::vector<std::uint16_t> table;
};

struct Dfs {
  const DoubleSpace& space;
  const Omega& omega;
  const std::vector<std::vector<Rank>>& cand;
  const std::vector<std::uint32_t>& wg;
  std::size_t max_order;
  std::atomic<std::size_t>& total;
  std::atomic<bool>& overflow;

  void run(std::vector<Rank>& img, std::size_t j, std::vector<Rank>& out) const {
    const std::size_t n = space.dim();
    if (overflow.load(std::memory_order_relaxed)) return;
    if (j == n) {
      if (total.fetch_add(1, std::memory_order_relaxed) >= max_order) {
        overflow = true;
        return;
      }
      out.insert(out.end(), img.begin(), img.end());
      return;
    }
    for (Rank x : cand[j]) {
      std::size_t k = 0;
      while (k < j && omega(x, img[k]) == wg[j * n + k]) ++k;
      if (k < j) continue;
      img[j] = x;
      run(img, j + 1, out);
    }
  }
};

}  // namespace

std::vector<Rank> symplectic_images(const DoubleSpace& space, std::size_t max_order) {
  const std::size_t n = space.dim();
  const Omega omega(space);
  std::vector<std::vector<Rank>> cand(n);
  for (std::size_t j = 0; j < n; ++j)
    for (Rank x = 0; x < space.size(); ++x)
      if (space.scale(space.modulus(j), x) == 0) cand[j].push_back(x);
  std::vector<std::uint32_t> wg(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) wg[j * n + k] = space.omega_num(space.generator(j), space.generator(k));

  std::atomic<std::size_t> total{0};
  std::atomic<bool> overflow{false};
  const Dfs dfs{space, omega, cand, wg, max_order, total, overflow};
  const std::size_t roots = cand[0].size();
  std::vector<std::vector<Rank>> parts(roots);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t r = 0; r < roots; ++r) {
    std::vector<Rank> img(n);
    img[0] = cand[0][r];
    dfs.run(img, 1, parts[r]);
  }
  if (overflow)
    throw ResourceError("Sp(V_A) for " + space.base().spec() + " has more than " + std::to_string(max_order) + " elements");
  std::vector<Rank> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::uint64_t section_defects_all(const SymplecticGroup& group, std::span<const std::uint16_t> phases) {
  const std::size_t n = group.order(), vs = group.space().size();
  const auto d = static_cast<std::uint32_t>(group.space().phase_denominator());
  std::uint64_t bad = 0;
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : bad)
  for (std::size_t t = 0; t < n; ++t) {
    const std::uint16_t* lt = phases.data() + t * vs;
    for (std::size_t s = 0; s < n; ++s) {
      const std::uint16_t* ls = phases.data() + s * vs;
      const std::uint16_t* lts = phases.data() + group.multiply(t, s) * vs;
      const std::uint16_t* sp = group.perm(s).data();
      std::uint32_t diff = 0;
      for (std::size_t u = 0; u < vs; ++u) {
        std::uint32_t x = lt[sp[u]] + ls[u];
        x -= x >= d ? d : 0;
        diff |= x ^ lts[u];
      }
      bad += diff != 0;
    }
  }
  return bad;
}

std::uint64_t section_defects_right(const SymplecticGroup& group, std::span<const std::uint16_t> phases,
                                    std::span<const std::size_t> gens, std::span<const std::uint32_t> rmul) {
  const std::size_t n = group.order(), vs = group.space().size(), k = gens.size();
  const auto d = static_cast<std::uint32_t>(group.space().phase_denominator());
  std::uint64_t bad = 0;
#pragma omp parallel for schedule(static) reduction(+ : bad)
  for (std::size_t t = 0; t < n; ++t) {
    const std::uint16_t* lt = phases.data() + t * vs;
    for (std::size_t g = 0; g < k; ++g) {
      const std::uint16_t* ls = phases.data() + gens[g] * vs;
      const std::uint16_t* lts = phases.data() + std::size_t{rmul[t * k + g]} * vs;
      const std::uint16_t* sp = group.perm(gens[g]).data();
      std::uint32_t diff = 0;
      for (std::size_t u = 0; u < vs; ++u) {
        std::uint32_t x = lt[sp[u]] + ls[u];
        x -= x >= d ? d : 0;
        diff |= x ^ lts[u];
      }
      bad += diff != 0;
    }
  }
  return bad;
}

std::vector<std::uint16_t> obstruction_table(const SymplecticGroup& group, std::span<const std::uint16_t> phases) {
  const auto& space = group.space();
  const std::size_t n = group.order(), vs = space.size(), dim = space.dim(), m = space.half();
  const auto d = static_cast<std::uint32_t>(space.phase_denominator());
  // u + g_i for every u and generator i.
  std::vector<Rank> addgen(vs * dim);
  for (Rank u = 0; u < vs; ++u)
    for (std::size_t i = 0; i < dim; ++i) addgen[u * dim + i] = space.add(u, space.generator(i));
  std::vector<std::uint16_t> out(n * n);
  std::atomic<bool> corrupt{false};
#pragma omp parallel
  {
    std::vector<std::uint16_t> gamma(vs);
    std::vector<std::int64_t> c(dim);
#pragma omp for schedule(dynamic, 4)
    for (std::size_t t = 0; t < n; ++t) {
      const std::uint16_t* lt = phases.data() + t * vs;
      for (std::size_t s = 0; s < n; ++s) {
        const std::size_t ts = group.multiply(t, s);
        const std::uint16_t* ls = phases.data() + s * vs;
        const std::uint16_t* lts = phases.data() + ts * vs;
        const std::uint16_t* sp = group.perm(s).data();
        for (std::size_t u = 0; u < vs; ++u) gamma[u] = static_cast<std::uint16_t>((lt[sp[u]] + ls[u] + d - lts[u]) % d);
        bool additive = gamma[0] == 0;
        for (std::size_t u = 0; u < vs && additive; ++u)
          for (std::size_t i = 0; i < dim; ++i)
            if ((gamma[u] + gamma[space.generator(i)]) % d != gamma[addgen[u * dim + i]]) {
              additive = false;
              break;
            }
        if (!additive) {
          corrupt = true;
          continue;
        }
        // An additive table is kappa(v) for the v read off its generator values.
        for (std::size_t i = 0; i < m; ++i) {
          const std::int64_t di = space.modulus(i);
          c[m + i] = gamma[space.generator(i)] * di / d;
          c[i] = -(gamma[space.generator(m + i)] * di / static_cast<std::int64_t>(d));
        }
        out[t * n + s] = group.perm(ts)[space.rank_of(c)];
      }
    }
  }
  if (corrupt) throw ValidationError("section defect is not a character; corrupted section");
  return out;
}

std::uint64_t cocycle_failures_all(const SymplecticGroup& group, std::span<const std::uint16_t> table) {
  const auto& space = group.space();
  const std::size_t n = group.order();
  std::vector<std::uint32_t> mul(n * n);
#pragma omp parallel for schedule(static)
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t s = 0; s < n; ++s) mul[t * n + s] = static_cast<std::uint32_t>(group.multiply(t, s));
  std::uint64_t bad = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : bad)
  for (std::size_t t = 0; t < n; ++t) {
    const auto tp = group.perm(t);
    for (std::size_t s = 0; s < n; ++s) {
      const std::size_t ts = mul[t * n + s];
      const Rank ots = table[t * n + s];
      for (std::size_t r = 0; r < n; ++r) {
        const Rank lhs = space.add(tp[table[s * n + r]], table[t * n + mul[s * n + r]]);
        const Rank rhs = space.add(ots, table[ts * n + r]);
        bad += lhs != rhs;
      }
    }
  }
  return bad;
}

std::uint64_t cocycle_failures_sampled(const SymplecticGroup& group, std::span<const std::uint16_t> table,
                                       std::span<const std::uint32_t> triples) {
  const auto& space = group.space();
  const std::size_t n = group.order(), count = triples.size() / 3;
  std::uint64_t bad = 0;
#pragma omp parallel for schedule(static) reduction(+ : bad)
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t t = triples[3 * i], s = triples[3 * i + 1], r = triples[3 * i + 2];
    const std::size_t ts = group.multiply(t, s), sr = group.multiply(s, r);
    const Rank lhs = space.add(group.perm(t)[table[s * n + r]], table[t * n + sr]);
    const Rank rhs = space.add(table[t * n + s], table[ts * n + r]);
    bad += lhs != rhs;
  }
  return bad;
}

ComplementScan complement_scan(const SymplecticGroup& group, std::span<const std::size_t> gens,
                               std::span<const std::uint32_t> rmul, std::span<const std::uint16_t> gen_phases,
                               std::uint64_t tuple_count, const Deadline& deadline) {
  const auto omega = omega_table(group.space());
  constexpr auto kNone = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> best{kNone};
  std::atomic<std::uint64_t> examined{0};
  std::atomic<bool> expired{false};
#pragma omp parallel
  {
    std::vector<std::uint16_t> lifts, phases;
    std::vector<std::uint32_t> seen, queue;
    std::uint32_t stamp = 0;
#pragma omp for schedule(dynamic, 8)
    for (std::uint64_t tuple = 0; tuple < tuple_count; ++tuple) {
      // Tuples past the best witness so far cannot change the answer.
      if (tuple > best.load(std::memory_order_relaxed) || expired.load(std::memory_order_relaxed)) continue;
      if ((tuple & 63) == 0 && deadline.expired()) {
        expired = true;
        continue;
      }
      lift_tuple_phases(group.space(), omega, gen_phases, gens.size(), tuple, lifts);
      const bool ok = closure_of_lifts(group, gens, rmul, lifts, phases, seen, ++stamp, queue);
      examined.fetch_add(1, std::memory_order_relaxed);
      if (ok) {
        auto cur = best.load();
        while (tuple < cur && !best.compare_exchange_weak(cur, tuple)) {
        }
      }
    }
  }
  if (expired) throw ResourceError("complement search exceeded its time budget");
  ComplementScan res;
  res.examined = examined;
  if (best != kNone) {
    res.found = true;
    res.tuple = best;
  }
  return res;
}

}  // namespace cliffext::kernels::omp
