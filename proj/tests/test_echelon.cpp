#include <random>

#include "cliffext/errors.hpp"
#include "cliffext/modular_echelon.hpp"
#include "cliffext/phase.hpp"
#include "doctest.h"

using namespace cliffext;

namespace {

struct System {
  std::int64_t n;
  std::size_t unknowns;
  std::vector<std::vector<std::int64_t>> rows;  // dense coefficients
  std::vector<std::int64_t> rhs;
};

System random_system(std::mt19937_64& rng, std::int64_t n, std::size_t unknowns, std::size_t equations) {
  System s{n, unknowns, {}, {}};
  std::uniform_int_distribution<std::int64_t> coef(0, n - 1);
  std::bernoulli_distribution sparse(0.4);
  for (std::size_t e = 0; e < equations; ++e) {
    std::vector<std::int64_t> row(unknowns);
    for (auto& c : row) c = sparse(rng) ? 0 : coef(rng);
    s.rows.push_back(row);
    s.rhs.push_back(coef(rng));
  }
  return s;
}

bool satisfies(const System& s, const std::vector<std::int64_t>& x) {
  for (std::size_t e = 0; e < s.rows.size(); ++e) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < s.unknowns; ++j) acc += s.rows[e][j] * x[j];
    if (mod_floor(acc - s.rhs[e], s.n) != 0) return false;
  }
  return true;
}

bool brute_force_solvable(const System& s) {
  std::vector<std::int64_t> x(s.unknowns, 0);
  while (true) {
    if (satisfies(s, x)) return true;
    std::size_t pos = 0;
    while (pos < s.unknowns && ++x[pos] == s.n) x[pos++] = 0;
    if (pos == s.unknowns) return false;
  }
}

std::vector<SparseEntry> sparse_row(const std::vector<std::int64_t>& row) {
  std::vector<SparseEntry> out;
  for (std::size_t j = 0; j < row.size(); ++j)
    if (row[j]) out.push_back({static_cast<std::uint32_t>(j), row[j]});
  return out;
}

}  // namespace

TEST_CASE("prime power factorization") {
  CHECK(factor_prime_powers(1).empty());
  CHECK(factor_prime_powers(12) == std::vector<std::pair<std::int64_t, int>>{{2, 2}, {3, 1}});
  CHECK(factor_prime_powers(8) == std::vector<std::pair<std::int64_t, int>>{{2, 3}});
  CHECK(factor_prime_powers(225) == std::vector<std::pair<std::int64_t, int>>{{3, 2}, {5, 2}});
}

TEST_CASE("prime power eliminator against brute force") {
  std::mt19937_64 rng(41);
  for (auto [p, k] : std::vector<std::pair<std::int64_t, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}, {2, 4}}) {
    std::int64_t q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t unknowns = 1 + rng() % 3, equations = 1 + rng() % 5;
      auto sys = random_system(rng, q, unknowns, equations);
      PrimePowerEliminator el(p, k, unknowns);
      for (std::size_t e = 0; e < equations; ++e) {
        auto r = sparse_row(sys.rows[e]);
        el.add_equation(r, sys.rhs[e]);
      }
      const bool expect = brute_force_solvable(sys);
      REQUIRE_MESSAGE(el.consistent() == expect, "p^k = " << q << " trial " << trial);
      auto x = el.solve();
      REQUIRE(x.has_value() == expect);
      if (x) REQUIRE(satisfies(sys, *x));
    }
  }
}

TEST_CASE("zero divisors need the annihilator rows") {
  // 2x = 2 and 2y = 0 with x + y = 1 is solvable mod 4 (x = 1, y = 0 or x = 3, y = 2).
  PrimePowerEliminator el(2, 2, 2);
  el.add_equation(std::vector<SparseEntry>{{0, 2}}, 2);
  el.add_equation(std::vector<SparseEntry>{{1, 2}}, 0);
  el.add_equation(std::vector<SparseEntry>{{0, 1}, {1, 1}}, 1);
  REQUIRE(el.consistent());
  // 2x = 1 has no solution mod 4.
  PrimePowerEliminator bad(2, 2, 1);
  bad.add_equation(std::vector<SparseEntry>{{0, 2}}, 1);
  CHECK_FALSE(bad.consistent());
  CHECK_FALSE(bad.solve().has_value());
}

TEST_CASE("duplicate columns are summed") {
  PrimePowerEliminator el(3, 1, 1);
  el.add_equation(std::vector<SparseEntry>{{0, 1}, {0, 1}}, 1);  // 2x = 1 mod 3
  auto x = el.solve();
  REQUIRE(x);
  CHECK((*x)[0] == 2);
}

TEST_CASE("bit-packed GF(2) against brute force and the generic path") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t unknowns = 1 + rng() % 70, equations = 1 + rng() % 90;
    // Large systems: brute force is out, so compare against the Z/p^k eliminator.
    auto sys = random_system(rng, 2, unknowns, equations);
    Gf2Eliminator bits(unknowns);
    PrimePowerEliminator generic(2, 1, unknowns);
    for (std::size_t e = 0; e < equations; ++e) {
      auto r = sparse_row(sys.rows[e]);
      bits.add_equation(r, sys.rhs[e]);
      generic.add_equation(r, sys.rhs[e]);
    }
    REQUIRE(bits.consistent() == generic.consistent());
    REQUIRE(bits.pivot_count() == generic.pivot_count());
    if (unknowns <= 12) REQUIRE(bits.consistent() == brute_force_solvable(sys));
    auto x = bits.solve();
    REQUIRE(x.has_value() == bits.consistent());
    if (x) REQUIRE(satisfies(sys, *x));
  }
}

TEST_CASE("modular solver splits by CRT") {
  std::mt19937_64 rng(47);
  for (std::int64_t n : {6, 12, 36, 10, 8, 9, 2}) {
    for (int trial = 0; trial < 120; ++trial) {
      const std::size_t unknowns = 1 + rng() % 3, equations = 1 + rng() % 4;
      auto sys = random_system(rng, n, unknowns, equations);
      ModularSolver ms(n, unknowns);
      for (std::size_t e = 0; e < equations; ++e) ms.add_equation(sparse_row(sys.rows[e]), sys.rhs[e], n);
      const bool expect = brute_force_solvable(sys);
      REQUIRE(ms.consistent() == expect);
      auto x = ms.solve();
      REQUIRE(x.has_value() == expect);
      if (x) REQUIRE(satisfies(sys, *x));
    }
  }
  ModularSolver two(2, 4);
  CHECK(two.components().size() == 1);
  CHECK(two.components()[0].bit_packed);
  ModularSolver twelve(12, 4);
  auto comps = twelve.components();
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].modulus == 4);
  CHECK(comps[1].modulus == 3);
}

TEST_CASE("equations over a divisor modulus are lifted") {
  // x = 1 mod 2 and x = 2 mod 3 inside Z/6: x = 5.
  ModularSolver ms(6, 1);
  ms.add_equation({{0, 1}}, 1, 2);
  ms.add_equation({{0, 1}}, 2, 3);
  auto x = ms.solve();
  REQUIRE(x);
  CHECK((*x)[0] == 5);
  // Mod 4 inside Z/8: x = 3 mod 4 together with x = 1 mod 8 is inconsistent.
  ModularSolver bad(8, 1);
  bad.add_equation({{0, 1}}, 3, 4);
  bad.add_equation({{0, 1}}, 1, 8);
  CHECK_FALSE(bad.consistent());
  CHECK_THROWS_AS(bad.add_equation({{0, 1}}, 0, 3), ValidationError);
}

TEST_CASE("entry budget is reported") {
  PrimePowerEliminator el(3, 1, 200, 50);
  std::mt19937_64 rng(53);
  CHECK_THROWS_AS(
      [&] {
        for (int e = 0; e < 200; ++e) {
          std::vector<SparseEntry> row;
          for (std::uint32_t j = 0; j < 200; ++j) row.push_back({j, static_cast<std::int64_t>(1 + rng() % 2)});
          el.add_equation(row, 1);
        }
      }(),
      ResourceError);
}
