#include "cliffext/modular_echelon.hpp"

#include <algorithm>
#include <bit>

#include "cliffext/errors.hpp"
#include "cliffext/phase.hpp"

namespace cliffext {

std::vector<std::pair<std::int64_t, int>> factor_prime_powers(std::int64_t n) {
  if (n < 1) throw ValidationError("modulus must be positive");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (k) out.emplace_back(p, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// ---- Z/p^k -------------------------------------------------------------------------------

PrimePowerEliminator::PrimePowerEliminator(std::int64_t p, int k, std::size_t unknowns, std::size_t entry_limit)
    : p_(p), q_(1), k_(k), n_(unknowns), entry_limit_(entry_limit), pivot_(unknowns) {
  for (int i = 0; i < k; ++i) q_ *= p;
}

int PrimePowerEliminator::valuation(std::int64_t x) const {
  int v = 0;
  while (x % p_ == 0 && v < k_) {
    x /= p_;
    ++v;
  }
  return v;
}

void PrimePowerEliminator::normalize(Row& row) const {
  std::sort(row.begin(), row.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
  std::size_t w = 0;
  for (std::size_t i = 0; i < row.size();) {
    std::int64_t s = 0;
    const auto c = row[i].col;
    for (; i < row.size() && row[i].col == c; ++i) s += row[i].val;
    s = mod_floor(s, q_);
    if (s) row[w++] = {c, s};
  }
  row.resize(w);
}

PrimePowerEliminator::Row PrimePowerEliminator::combine(const Row& a, std::int64_t fa, const Row& b, std::int64_t fb) const {
  Row out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    std::uint32_t c;
    std::int64_t s = 0;
    if (j == b.size() || (i < a.size() && a[i].col < b[j].col)) {
      c = a[i].col;
      s = a[i++].val * fa;
    } else if (i == a.size() || b[j].col < a[i].col) {
      c = b[j].col;
      s = b[j++].val * fb;
    } else {
      c = a[i].col;
      s = a[i++].val * fa + b[j++].val * fb;
    }
    s = mod_floor(s, q_);
    if (s) out.push_back({c, s});
  }
  return out;
}

void PrimePowerEliminator::add_equation(std::span<const SparseEntry> row, std::int64_t rhs) {
  ++equations_;
  if (!consistent_) return;
  Row r(row.begin(), row.end());
  for (auto& e : r)
    if (e.col >= n_) throw ValidationError("equation references an unknown out of range");
  r.push_back({static_cast<std::uint32_t>(n_), rhs});
  normalize(r);
  insert(std::move(r));
}

void PrimePowerEliminator::insert(Row row) {
  std::vector<Row> work;
  work.push_back(std::move(row));
  auto power = [&](int e) {
    std::int64_t x = 1;
    for (int i = 0; i < e; ++i) x *= p_;
    return x;
  };
  while (!work.empty() && consistent_) {
    Row r = std::move(work.back());
    work.pop_back();
    while (!r.empty()) {
      const std::uint32_t c = r[0].col;
      const std::int64_t val = r[0].val;
      if (c == n_) {
        consistent_ = false;
        return;
      }
      const int v = valuation(val);
      const std::int64_t pv = power(v);
      Row& piv = pivot_[c];
      if (piv.empty()) {
        r = combine(r, mod_inverse(val / pv % q_, q_), {}, 0);
        if (v > 0) work.push_back(combine(r, power(k_ - v), {}, 0));
        entries_ += r.size();
        if (entries_ > entry_limit_)
          throw ResourceError("pivot storage for the Z/" + std::to_string(q_) + " component exceeds its memory budget");
        piv = std::move(r);
        ++pivots_;
        break;
      }
      const int vp = valuation(piv[0].val);
      if (v >= vp) {
        r = combine(r, 1, piv, q_ - (val / power(vp)) % q_);
        continue;
      }
      // The row has the smaller valuation: it becomes the pivot, the old pivot is reduced.
      r = combine(r, mod_inverse(val / pv % q_, q_), {}, 0);
      if (v > 0) work.push_back(combine(r, power(k_ - v), {}, 0));
      Row old = std::move(piv);
      entries_ = entries_ - old.size() + r.size();
      piv = std::move(r);
      r = combine(old, 1, piv, q_ - power(vp - v) % q_);
    }
  }
}

std::optional<std::vector<std::int64_t>> PrimePowerEliminator::solve() const {
  if (!consistent_) return std::nullopt;
  std::vector<std::int64_t> x(n_, 0);
  for (std::size_t c = n_; c-- > 0;) {
    const Row& r = pivot_[c];
    if (r.empty()) continue;
    std::int64_t acc = 0;
    for (std::size_t i = 1; i < r.size(); ++i) {
      if (r[i].col == n_)
        acc += r[i].val;
      else
        acc -= r[i].val * x[r[i].col] % q_;
      acc = mod_floor(acc, q_);
    }
    const std::int64_t lead = r[0].val;  // p^v
    if (acc % lead != 0) throw InternalError("strong echelon back substitution hit a non-divisible residue");
    x[c] = acc / lead;
  }
  return x;
}

// ---- GF(2) -------------------------------------------------------------------------------

Gf2Eliminator::Gf2Eliminator(std::size_t unknowns)
    : n_(unknowns), words_((unknowns + 1 + 63) / 64), rows_(unknowns * words_, 0), has_(unknowns, 0), scratch_(words_) {}

void Gf2Eliminator::add_equation(std::span<const SparseEntry> row, std::int64_t rhs) {
  ++equations_;
  if (!consistent_) return;
  std::fill(scratch_.begin(), scratch_.end(), 0);
  for (auto& e : row) {
    if (e.col >= n_) throw ValidationError("equation references an unknown out of range");
    if (e.val & 1) scratch_[e.col / 64] ^= std::uint64_t{1} << (e.col % 64);
  }
  if (rhs & 1) scratch_[n_ / 64] ^= std::uint64_t{1} << (n_ % 64);
  std::size_t w = 0;
  while (true) {
    while (w < words_ && scratch_[w] == 0) ++w;
    if (w == words_) return;
    const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(scratch_[w]));
    if (c == n_) {
      consistent_ = false;
      return;
    }
    std::uint64_t* piv = rows_.data() + c * words_;
    if (!has_[c]) {
      std::copy(scratch_.begin(), scratch_.end(), piv);
      has_[c] = 1;
      ++pivots_;
      return;
    }
    for (std::size_t i = w; i < words_; ++i) scratch_[i] ^= piv[i];
  }
}

std::optional<std::vector<std::int64_t>> Gf2Eliminator::solve() const {
  if (!consistent_) return std::nullopt;
  std::vector<std::uint64_t> xb(words_, 0);
  const std::size_t rw = n_ / 64;
  const std::uint64_t rbit = std::uint64_t{1} << (n_ % 64);
  for (std::size_t c = n_; c-- > 0;) {
    if (!has_[c]) continue;
    const std::uint64_t* r = rows_.data() + c * words_;
    int parity = (r[rw] & rbit) ? 1 : 0;
    for (std::size_t i = c / 64; i < words_; ++i) parity ^= std::popcount(r[i] & xb[i]) & 1;
    if (parity) xb[c / 64] |= std::uint64_t{1} << (c % 64);
  }
  std::vector<std::int64_t> x(n_);
  for (std::size_t c = 0; c < n_; ++c) x[c] = (xb[c / 64] >> (c % 64)) & 1;
  return x;
}

// ---- CRT front end -----------------------------------------------------------------------

struct ModularSolver::Component {
  std::int64_t q;
  std::unique_ptr<PrimePowerEliminator> pp;
  std::unique_ptr<Gf2Eliminator> gf2;
  std::vector<SparseEntry> scratch;

  bool consistent() const { return pp ? pp->consistent() : gf2->consistent(); }
};

ModularSolver::ModularSolver(std::int64_t modulus, std::size_t unknowns) : n_(modulus), unknowns_(unknowns) {
  for (auto [p, k] : factor_prime_powers(modulus)) {
    auto c = std::make_unique<Component>();
    c->q = 1;
    for (int i = 0; i < k; ++i) c->q *= p;
    if (p == 2 && k == 1)
      c->gf2 = std::make_unique<Gf2Eliminator>(unknowns);
    else
      c->pp = std::make_unique<PrimePowerEliminator>(p, k, unknowns);
    parts_.push_back(std::move(c));
  }
}

ModularSolver::~ModularSolver() = default;
ModularSolver::ModularSolver(ModularSolver&&) noexcept = default;
ModularSolver& ModularSolver::operator=(ModularSolver&&) noexcept = default;

void ModularSolver::add_equation(std::span<const SparseEntry> row, std::int64_t rhs, std::int64_t row_modulus) {
  if (row_modulus < 1 || n_ % row_modulus != 0) throw ValidationError("equation modulus must divide the system modulus");
  const std::int64_t lift = n_ / row_modulus;
  for (auto& part : parts_) {
    if (!part->consistent()) continue;
    part->scratch.clear();
    for (auto& e : row) part->scratch.push_back({e.col, mod_floor(e.val % part->q * (lift % part->q), part->q)});
    const std::int64_t r = mod_floor(rhs % part->q * (lift % part->q), part->q);
    if (part->pp)
      part->pp->add_equation(part->scratch, r);
    else
      part->gf2->add_equation(part->scratch, r);
  }
}

bool ModularSolver::consistent() const {
  return std::all_of(parts_.begin(), parts_.end(), [](const auto& p) { return p->consistent(); });
}

std::vector<ComponentStats> ModularSolver::components() const {
  std::vector<ComponentStats> out;
  for (auto& p : parts_) {
    ComponentStats s;
    s.modulus = p->q;
    s.consistent = p->consistent();
    s.bit_packed = p->gf2 != nullptr;
    s.pivots = p->pp ? p->pp->pivot_count() : p->gf2->pivot_count();
    s.equations = p->pp ? p->pp->equation_count() : p->gf2->equation_count();
    out.push_back(s);
  }
  return out;
}

std::optional<std::vector<std::int64_t>> ModularSolver::solve() const {
  std::vector<std::int64_t> y(unknowns_, 0);
  for (auto& p : parts_) {
    auto part = p->pp ? p->pp->solve() : p->gf2->solve();
    if (!part) return std::nullopt;
    const std::int64_t rest = n_ / p->q;
    const std::int64_t e = rest * mod_inverse(rest % p->q, p->q) % n_;  // 1 mod q, 0 mod rest
    for (std::size_t j = 0; j < unknowns_; ++j)
      y[j] = static_cast<std::int64_t>((static_cast<__int128>(y[j]) + static_cast<__int128>((*part)[j]) * e) % n_);
  }
  return y;
}

}  // namespace cliffext
