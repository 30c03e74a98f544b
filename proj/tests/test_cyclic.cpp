#include <random>

#include "cliffext/cyclic_two.hpp"
#include "cliffext/errors.hpp"
#include "cliffext/split_check.hpp"
#include "doctest.h"

using namespace cliffext;

namespace {

Rank at(std::int64_t n, std::int64_t a, std::int64_t p) { return static_cast<Rank>(a * n + p); }

// Lambda_N(a, p) = sum_j lambda_t(t^j (a, p)) with t^j (a, p) = (a + j p, p), straight from
// the formula for lambda_t; numerator over 2N.
std::int64_t power_sum(std::int64_t n, std::int64_t x, std::int64_t y, std::int64_t a, std::int64_t p) {
  std::int64_t acc = 0;
  for (std::int64_t j = 0; j < n; ++j) {
    const std::int64_t aj = (a + j * p) % n;
    acc += p * p + 2 * (x * aj + y * p);
  }
  return mod_floor(acc, 2 * n);
}

}  // namespace

TEST_CASE("lift tables") {
  CHECK(lift_t(4, 0, 0).lambda().at(at(4, 0, 1)) == Phase(1, 8));
  CHECK(lift_s(4, 0, 0).lambda().at(at(4, 1, 1)) == Phase(3, 4));
  CHECK(lift_t(2, 1, 0).lambda().at(at(2, 1, 0)) == Phase(1, 2));
  for (std::int64_t n : {2, 4, 8})
    for (std::int64_t x = 0; x < n; ++x)
      for (std::int64_t y = 0; y < n; ++y) {
        REQUIRE(check_coboundary(lift_t(n, x, y)));
        REQUIRE(check_coboundary(lift_s(n, x, y)));
      }
  CHECK_THROWS_AS(lift_t(6, 0, 0), PreconditionError);
  CHECK_THROWS_AS(lift_s(3, 0, 0), PreconditionError);
}

TEST_CASE("power phases") {
  auto p4 = power_phase(lift_t(4, 0, 0), 4);
  for (std::int64_t a = 0; a < 4; ++a)
    for (std::int64_t p = 0; p < 4; ++p) CHECK(p4.at(at(4, a, p)) == Phase(p, 2));
  CHECK(power_phase(lift_t(4, 1, 0), 4).is_zero());
  auto x = lift_s(8, 3, 5);
  CHECK(power_phase(x, 1) == x.lambda());
}

TEST_CASE("power phase against the direct sum") {
  for (std::int64_t n : {2, 4, 8})
    for (std::int64_t x = 0; x < n; ++x)
      for (std::int64_t y = 0; y < n; ++y) {
        auto table = power_phase(lift_t(n, x, y), n);
        for (std::int64_t a = 0; a < n; ++a)
          for (std::int64_t p = 0; p < n; ++p) {
            REQUIRE(table.at(at(n, a, p)) == Phase(power_sum(n, x, y, a, p), 2 * n));
            // (-1)^{p(1 + x)}
            REQUIRE(table.at(at(n, a, p)) == Phase(p * (1 + x), 2));
          }
      }
}

TEST_CASE("parity constraint") {
  auto r4 = parity_constraint_check(4);
  CHECK(r4.ok());
  CHECK(r4.pairs == 16);
  CHECK(r4.trivial_x == std::vector<std::int64_t>{1, 3});
  auto r2 = parity_constraint_check(2);
  CHECK(r2.ok());
  CHECK(r2.trivial_x == std::vector<std::int64_t>{1});
  auto r8 = parity_constraint_check(8);
  CHECK(r8.ok());
  CHECK(r8.pairs == 64);
  CHECK(r8.closed_form_mismatches == 0);
}

TEST_CASE("residual character") {
  auto a = residual_character(4, 1, 0, 0, 0);
  CHECK(a.direct == std::pair<std::int64_t, std::int64_t>{0, 2});
  CHECK(a.closed_form == a.direct);
  auto b = residual_character(4, 0, 0, 0, 0);
  CHECK(b.direct == std::pair<std::int64_t, std::int64_t>{0, 0});
  for (std::int64_t x = 0; x < 4; ++x)
    for (std::int64_t y = 0; y < 4; ++y)
      for (std::int64_t z = 0; z < 4; ++z)
        for (std::int64_t w = 0; w < 4; ++w) {
          auto r = residual_character(4, x, y, z, w);
          REQUIRE(r.direct == r.closed_form);
          // First component does not depend on x.
          REQUIRE(r.direct.first == residual_character(4, 0, y, z, w).direct.first);
        }
  std::mt19937_64 rng(2);
  for (int i = 0; i < 256; ++i) {
    auto r = residual_character(8, rng() % 8, rng() % 8, rng() % 8, rng() % 8);
    REQUIRE(r.direct == r.closed_form);
  }
}

TEST_CASE("reference lifts satisfy (s t)^3 = s^2") {
  for (std::int64_t n : {2, 4, 8, 16}) {
    auto s0 = lift_s(n, 0, 0), t0 = lift_t(n, 0, 0);
    auto st = twisted_mul(s0, t0);
    CHECK(twisted_mul(twisted_mul(st, st), st) == twisted_mul(s0, s0));
  }
}

TEST_CASE("constraint report") {
  auto r2 = constraint_report(2);
  CHECK(r2.intersection == std::vector<std::int64_t>{1});
  CHECK(r2.closed_forms_match);
  auto r4 = constraint_report(4);
  CHECK(r4.order_set == std::vector<std::int64_t>{1, 3});
  CHECK(r4.relation_set == std::vector<std::int64_t>{0, 2});
  CHECK(r4.intersection.empty());
  CHECK(r4.closed_forms_match);
  auto r8 = constraint_report(8);
  CHECK(r8.relation_set == std::vector<std::int64_t>{0, 4});
  CHECK(r8.intersection.empty());
  CHECK(r8.closed_forms_match);
  // Agrees with the splitting verdicts.
  CHECK(split_check(FinAbGroup::make({2})).splits == !r2.intersection.empty());
  CHECK(split_check(FinAbGroup::make({4})).splits == !r4.intersection.empty());
  CHECK(split_check(FinAbGroup::make({8})).splits == !r8.intersection.empty());
}
