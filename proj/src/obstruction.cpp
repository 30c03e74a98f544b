#include "cliffext/obstruction.hpp"

#include <random>
#include <sstream>

#include "cliffext/errors.hpp"
#include "cliffext/kernels.hpp"

namespace cliffext {

ObstructionCocycle ObstructionCocycle::from_table(std::shared_ptr<const SymplecticGroup> group, std::vector<std::uint16_t> table) {
  const std::size_t n = group->order();
  if (table.size() != n * n) throw ValidationError("cocycle table must have |Sp|^2 entries");
  for (auto v : table)
    if (v >= group->space().size()) throw ValidationError("cocycle entry is not an element of V_A");
  return ObstructionCocycle(std::move(group), std::move(table), {});
}

ObstructionCocycle ObstructionCocycle::lazy(std::shared_ptr<const SymplecticGroup> group, Entry entry) {
  return ObstructionCocycle(std::move(group), {}, std::move(entry));
}

bool ObstructionCocycle::is_zero() const {
  if (dense()) {
    for (auto v : table_)
      if (v) return false;
    return true;
  }
  const std::size_t n = group_->order();
  bool zero = true;
#pragma omp parallel for schedule(dynamic, 4) reduction(&& : zero)
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t s = 0; s < n && zero; ++s) zero = entry_(t, s) == 0;
  return zero;
}

ObstructionCocycle ObstructionCocycle::operator-(const ObstructionCocycle& o) const {
  if (!(group_->space() == o.group_->space()) || group_->order() != o.group_->order())
    throw ValidationError("cocycles over different groups");
  const DoubleSpace& space = group_->space();
  if (dense() && o.dense()) {
    std::vector<std::uint16_t> t(table_.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<std::uint16_t>(space.sub(table_[i], o.table_[i]));
    return from_table(group_, std::move(t));
  }
  auto a = *this, b = o;
  return lazy(group_, [a, b, &space](std::size_t t, std::size_t s) { return space.sub(a.at(t, s), b.at(t, s)); });
}

Rank obstruction_entry(const Section& sec, std::size_t t, std::size_t s) {
  const auto& group = sec.group();
  const auto& space = sec.space();
  const std::int64_t d = space.phase_denominator();
  const std::size_t ts = group.multiply(t, s);
  auto lt = sec.lambda(t), ls = sec.lambda(s), lts = sec.lambda(ts);
  auto sp = group.perm(s);
  std::vector<std::uint16_t> gamma(space.size());
  for (Rank u = 0; u < space.size(); ++u) gamma[u] = static_cast<std::uint16_t>((lt[sp[u]] + ls[u] + d - lts[u]) % d);
  PhaseFn g(d, std::move(gamma));
  if (!is_character(space, g)) throw ValidationError("section defect is not a character; corrupted section");
  // s(T)s(S) = (id, Gamma o (TS)^-1) s(TS), and Gamma o (TS)^-1 = kappa(TS . kappa_inv(Gamma)).
  return group.perm(ts)[kappa_inv(space, g)];
}

ObstructionCocycle obstruction_cocycle(std::shared_ptr<const Section> sec, std::uint64_t dense_limit) {
  const auto n = static_cast<std::uint64_t>(sec->group().order());
  if (n * n <= dense_limit)
    return ObstructionCocycle::from_table(sec->group_ptr(), kernels::omp::obstruction_table(sec->group(), sec->phases()));
  return ObstructionCocycle::lazy(sec->group_ptr(), [sec](std::size_t t, std::size_t s) { return obstruction_entry(*sec, t, s); });
}

CocycleCheck check_cocycle_identity(const ObstructionCocycle& o, std::uint64_t seed, std::size_t exhaustive_max, std::uint64_t samples) {
  const auto& group = o.group();
  const std::size_t n = group.order();
  CocycleCheck res;
  res.seed = seed;
  if (n <= exhaustive_max && o.dense()) {
    res.triples = static_cast<std::uint64_t>(n) * n * n;
    res.failures = kernels::omp::cocycle_failures_all(group, o.table());
    return res;
  }
  if (n <= exhaustive_max) {
    // Small but lazy: materialize first.
    std::vector<std::uint16_t> t(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<std::uint16_t>(o.at(a, b));
    return check_cocycle_identity(ObstructionCocycle::from_table(o.group_ptr(), std::move(t)), seed, exhaustive_max, samples);
  }
  res.exhaustive = false;
  res.triples = samples;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
  std::vector<std::uint32_t> triples(3 * samples);
  for (auto& x : triples) x = pick(rng);
  if (o.dense()) {
    res.failures = kernels::omp::cocycle_failures_sampled(group, o.table(), triples);
    return res;
  }
  const auto& space = group.space();
  std::uint64_t bad = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : bad)
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::size_t t = triples[3 * i], s = triples[3 * i + 1], r = triples[3 * i + 2];
    const std::size_t ts = group.multiply(t, s), sr = group.multiply(s, r);
    const Rank lhs = space.add(group.perm(t)[o.at(s, r)], o.at(t, sr));
    const Rank rhs = space.add(o.at(t, s), o.at(ts, r));
    bad += lhs != rhs;
  }
  res.failures = bad;
  return res;
}

std::string CoboundaryResult::summary() const {
  std::ostringstream os;
  os << (solvable ? "solvable" : "inconsistent") << "; "
     << (equations == EquationSet::AllPairs ? "all pairs" : "generator pairs") << "; " << equation_count << " equations over "
     << unknowns << " unknowns";
  for (auto& c : components)
    os << "; Z/" << c.modulus << (c.bit_packed ? " (bit-packed)" : "") << ": rank " << c.pivots << " after " << c.equations
       << " equations, " << (c.consistent ? "consistent" : "inconsistent");
  return os.str();
}

CoboundaryResult coboundary_solve(const ObstructionCocycle& o, const CoboundaryOptions& opts) {
  const auto& group = o.group();
  const auto& space = group.space();
  const std::size_t n = group.order(), dim = space.dim();
  CoboundaryResult res;
  res.unknowns = n * dim;
  const auto nn = static_cast<std::uint64_t>(n) * n;
  res.equations = nn <= opts.all_pairs_limit ? EquationSet::AllPairs : EquationSet::GeneratorPairs;
  if (n == 1 || space.exponent() == 1) {
    res.solvable = true;
    res.cochain.assign(n, 0);
    return res;
  }
  std::vector<std::size_t> gens = opts.generators.empty() ? find_generating_set(group) : opts.generators;
  if (closure_size(group, gens) != n) throw ValidationError("coboundary generators do not generate Sp");

  // Columns: non-generators in BFS order from the identity, generators last. Tree equations
  // then reduce to rows touching one non-generator column plus generator columns.
  std::vector<std::uint8_t> is_gen(n, 0);
  for (auto g : gens) is_gen[g] = 1;
  std::vector<std::size_t> bfs{group.identity()};
  std::vector<std::pair<std::size_t, std::size_t>> tree;  // (T, g) defining a new element
  std::vector<std::uint8_t> seen(n, 0);
  seen[group.identity()] = 1;
  for (std::size_t h = 0; h < bfs.size(); ++h)
    for (auto g : gens) {
      const std::size_t y = group.multiply(bfs[h], g);
      if (seen[y]) continue;
      seen[y] = 1;
      bfs.push_back(y);
      if (!is_gen[y]) tree.emplace_back(bfs[h], g);
    }
  std::vector<std::size_t> pos(n);
  std::size_t next = 0;
  for (auto x : bfs)
    if (!is_gen[x]) pos[x] = next++;
  for (auto g : gens) pos[g] = next++;

  const std::int64_t modulus = space.exponent();
  ModularSolver solver(modulus, n * dim);
  std::vector<SparseEntry> row;
  auto col = [&](std::size_t elem, std::size_t i) { return static_cast<std::uint32_t>(pos[elem] * dim + i); };
  auto emit = [&](std::size_t t, std::size_t s) {
    const std::size_t ts = group.multiply(t, s);
    const auto& tm = group.element(t);
    auto rhs = space.coords(space.neg(o.at(t, s)));
    for (std::size_t i = 0; i < dim; ++i) {
      const std::int64_t m = space.modulus(i);
      if (m == 1) continue;
      row.clear();
      row.push_back({col(t, i), 1});
      for (std::size_t j = 0; j < dim; ++j)
        if (tm.at(i, j)) row.push_back({col(s, j), tm.at(i, j)});
      row.push_back({col(ts, i), m - 1});
      solver.add_equation(row, rhs[i], m);
      ++res.equation_count;
    }
    if ((res.equation_count & 0xfff) < dim && opts.deadline.expired())
      throw ResourceError("coboundary solve exceeded its time budget");
  };

  emit(group.identity(), gens.front());
  for (auto [t, g] : tree) emit(t, g);
  if (res.equations == EquationSet::AllPairs) {
    for (std::size_t t = 0; t < n && solver.consistent(); ++t)
      for (std::size_t s = 0; s < n && solver.consistent(); ++s) emit(t, s);
  } else {
    for (std::size_t t = 0; t < n && solver.consistent(); ++t)
      for (auto g : gens) emit(t, g);
  }
  res.components = solver.components();
  auto y = solver.solve();
  if (!y) return res;

  res.cochain.resize(n);
  std::vector<std::int64_t> c(dim);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t i = 0; i < dim; ++i) c[i] = (*y)[col(t, i)];
    res.cochain[t] = space.rank_of(c);
  }
  // c(T) + T c(S) - c(TS) + O(T, S) == 0 on every streamed pair.
  auto holds = [&](std::size_t t, std::size_t s) {
    const Rank lhs = space.add(space.add(res.cochain[t], group.perm(t)[res.cochain[s]]), o.at(t, s));
    return lhs == res.cochain[group.multiply(t, s)];
  };
  bool ok = true;
  if (res.equations == EquationSet::AllPairs) {
#pragma omp parallel for schedule(dynamic, 4) reduction(&& : ok)
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t s = 0; s < n; ++s) ok = ok && holds(t, s);
  } else {
#pragma omp parallel for schedule(static) reduction(&& : ok)
    for (std::size_t t = 0; t < n; ++t)
      for (auto g : gens) ok = ok && holds(t, g);
  }
  if (!ok) throw InternalError("back-substituted cochain violates a coboundary equation");
  res.solvable = true;
  return res;
}

bool class_difference_check(std::shared_ptr<const Section> a, std::shared_ptr<const Section> b, const CoboundaryOptions& opts) {
  if (!(a->space() == b->space())) throw ValidationError("sections over different groups");
  auto oa = obstruction_cocycle(a);
  auto ob = obstruction_cocycle(b);
  if (oa.group_ptr() != ob.group_ptr() && oa.group().order() != ob.group().order())
    throw ValidationError("sections over different enumerations of Sp");
  return coboundary_solve(oa - ob, opts).solvable;
}

}  // namespace cliffext
