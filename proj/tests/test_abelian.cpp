#include <random>
#include <set>

#include "cliffext/abelian.hpp"
#include "cliffext/errors.hpp"
#include "cliffext/group_spec.hpp"
#include "cliffext/phase.hpp"
#include "doctest.h"

using namespace cliffext;

TEST_CASE("phase reduces to lowest terms mod 1") {
  CHECK(Phase(6, 8) == Phase(3, 4));
  CHECK(Phase(-1, 4) == Phase(3, 4));
  CHECK(Phase(5, -4) == Phase(3, 4));
  CHECK(Phase(4, 4).is_zero());
  CHECK(Phase(4, 4).den() == 1);
  CHECK(Phase(2, 6).order() == 3);
  CHECK(Phase(1, 2).scaled(3) == Phase(1, 2));
  CHECK(Phase(3, 4).numerator_over(8) == 6);
  CHECK_THROWS_AS(Phase(1, 3).numerator_over(8), ValidationError);
  CHECK_THROWS_AS(Phase(1, 0), ValidationError);
}

TEST_CASE("phase arithmetic on random triples") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> num(-500, 500), den(1, 60);
  for (int i = 0; i < 1000; ++i) {
    Phase a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    CHECK(((a + b) + c) == (a + (b + c)));
    CHECK((a - a).is_zero());
    CHECK((a + (-a)).is_zero());
    const std::int64_t q = den(rng), p = num(rng);
    const std::int64_t g = std::gcd(mod_floor(p, q), q);
    CHECK(Phase(p, q).order() == q / g);
  }
}

TEST_CASE("odd square root") {
  CHECK(phase_half_odd(Phase(2, 3)) == Phase(1, 3));
  CHECK(phase_half_odd(Phase(0, 1)) == Phase(0, 1));
  CHECK(phase_half_odd(Phase(3, 5)) == Phase(4, 5));
  CHECK_THROWS_AS(phase_half_odd(Phase(1, 2)), PreconditionError);
  CHECK_THROWS_AS(phase_half_odd(Phase(1, 4)), PreconditionError);
  for (std::int64_t q = 1; q <= 81; q += 2)
    for (std::int64_t p = 0; p < q; ++p) {
      const Phase x(p, q);
      const Phase r = phase_half_odd(x);
      CHECK(r + r == x);
      CHECK(r.order() % 2 == 1);
    }
}

TEST_CASE("odd root agrees with brute force over fifth roots") {
  const Phase target(3, 5);
  std::vector<Phase> roots;
  for (int k = 0; k < 5; ++k)
    if (Phase(k, 5) + Phase(k, 5) == target) roots.emplace_back(k, 5);
  REQUIRE(roots.size() == 1);
  CHECK(phase_half_odd(target) == roots[0]);
}

TEST_CASE("group construction") {
  auto g = FinAbGroup::make({2, 4});
  CHECK(g.orders() == std::vector<std::int64_t>{4, 2});
  CHECK(g.size() == 8);
  CHECK(g.exponent() == 4);
  CHECK(FinAbGroup::make({2}).exponent() == 2);
  auto h = FinAbGroup::make({3, 3});
  CHECK(h.size() == 9);
  CHECK(h.exponent() == 3);
  CHECK(FinAbGroup::make({}).orders() == std::vector<std::int64_t>{1});
  CHECK(FinAbGroup().is_trivial());
  CHECK_THROWS_AS(FinAbGroup::make({2, 0}), ValidationError);
  CHECK_THROWS_AS(FinAbGroup::make({-3}), ValidationError);
  CHECK(FinAbGroup::from_factors({2, 4}).orders() == std::vector<std::int64_t>{2, 4});
  CHECK(g.spec() == "Z4xZ2");
}

TEST_CASE("direct sum keeps block order") {
  auto s = direct_sum(FinAbGroup::make({3}), FinAbGroup::make({4, 2}));
  CHECK(s.orders() == std::vector<std::int64_t>{3, 4, 2});
  CHECK(direct_sum(FinAbGroup(), FinAbGroup::make({5})) == FinAbGroup::make({5}));
}

TEST_CASE("element arithmetic in Z4+Z2") {
  auto g = FinAbGroup::make({4, 2});
  GroupElem a(g, {3, 1}), b(g, {2, 1});
  CHECK((a + b) == GroupElem(g, {1, 0}));
  CHECK(-GroupElem(g, {1, 1}) == GroupElem(g, {3, 1}));
  CHECK(GroupElem(g, {1, 1}).scaled(2) == GroupElem(g, {2, 0}));
  CHECK_THROWS(a + GroupElem(FinAbGroup::make({4, 4}), {0, 0}));
}

TEST_CASE("enumeration is complete and closed") {
  for (auto orders : std::vector<std::vector<std::int64_t>>{{1}, {2}, {6}, {4, 2}, {3, 3}, {2, 2, 2}, {8, 4, 2}, {64}}) {
    auto g = FinAbGroup::make(orders);
    auto els = enumerate_elements(g);
    REQUIRE(els.size() == static_cast<std::size_t>(g.size()));
    CHECK(els.front().is_zero());
    std::set<std::vector<std::int64_t>> seen;
    for (auto& e : els) seen.insert(e.coords());
    CHECK(seen.size() == els.size());
    for (std::size_t i = 0; i < els.size(); i += 3)
      for (std::size_t j = 0; j < els.size(); j += 5) {
        CHECK(seen.count((els[i] + els[j]).coords()) == 1);
        CHECK(seen.count((-els[i]).coords()) == 1);
      }
  }
}

TEST_CASE("pairing examples") {
  auto z2 = FinAbGroup::make({2});
  CHECK(pairing(GroupElem(z2, {1}), GroupElem(z2, {1})) == Phase(1, 2));
  auto z4 = FinAbGroup::make({4});
  CHECK(pairing(GroupElem(z4, {1}), GroupElem(z4, {2})) == Phase(1, 2));
  auto z33 = FinAbGroup::make({3, 3});
  CHECK(pairing(GroupElem(z33, {1, 2}), GroupElem(z33, {1, 1})).is_zero());
  CHECK_THROWS(pairing(GroupElem(z2, {1}), GroupElem(z4, {1})));
}

TEST_CASE("pairing is bilinear and non-degenerate") {
  for (auto orders : std::vector<std::vector<std::int64_t>>{{2}, {4}, {4, 2}, {3, 3}, {2, 2}, {16}, {6, 2}}) {
    auto g = FinAbGroup::make(orders);
    auto els = enumerate_elements(g);
    for (auto& chi : els) {
      bool trivial = true;
      for (auto& a : els) {
        if (!pairing(chi, a).is_zero()) trivial = false;
        for (auto& b : els) {
          CHECK(pairing(chi, a + b) == pairing(chi, a) + pairing(chi, b));
          CHECK(pairing(a + b, chi) == pairing(a, chi) + pairing(b, chi));
        }
      }
      CHECK(trivial == chi.is_zero());
    }
  }
}

TEST_CASE("homomorphisms and duals") {
  auto z4 = FinAbGroup::make({4});
  auto z2 = FinAbGroup::make({2});
  GroupHom red(z4, z2, {1});
  CHECK(red.apply(GroupElem(z4, {3})) == GroupElem(z2, {1}));
  CHECK_THROWS_AS(GroupHom(z2, z4, {1}), ValidationError);
  GroupHom inc(z2, z4, {2});
  auto d = dual_map(inc);
  // (chi o inc)(a) = chi(inc a) on every pair.
  for (auto& chi : enumerate_elements(z4))
    for (auto& a : enumerate_elements(z2)) CHECK(pairing(d.apply(chi), a) == pairing(chi, inc.apply(a)));
}

TEST_CASE("primary decomposition") {
  auto pd = primary_decompose(FinAbGroup::make({12}));
  CHECK(pd.odd == FinAbGroup::make({3}));
  CHECK(pd.two == FinAbGroup::make({4}));
  auto pd2 = primary_decompose(FinAbGroup::make({6, 2}));
  CHECK(pd2.odd == FinAbGroup::make({3}));
  CHECK(pd2.two == FinAbGroup::make({2, 2}));
  auto pd3 = primary_decompose(FinAbGroup::make({9}));
  CHECK(pd3.odd == FinAbGroup::make({9}));
  CHECK(pd3.two.is_trivial());
  CHECK(two_adic_valuation(12) == 2);
  CHECK(two_adic_valuation(7) == 0);
}

TEST_CASE("primary decomposition maps are mutually inverse isomorphisms") {
  for (auto orders : std::vector<std::vector<std::int64_t>>{{12}, {6, 2}, {6, 6}, {10}, {5}, {8}}) {
    auto g = FinAbGroup::make(orders);
    auto pd = primary_decompose(g);
    CHECK(pd.parts.size() == g.size());
    for (auto& a : enumerate_elements(g)) CHECK(pd.from_parts.apply(pd.to_parts.apply(a)) == a);
    auto els = enumerate_elements(g);
    for (auto& a : els)
      for (auto& b : els) CHECK(pd.to_parts.apply(a + b) == pd.to_parts.apply(a) + pd.to_parts.apply(b));
  }
}

TEST_CASE("group spec parsing") {
  CHECK(parse_group_spec("Z4xZ2").orders() == std::vector<std::int64_t>{4, 2});
  CHECK(parse_group_spec("z2 x z2").orders() == std::vector<std::int64_t>{2, 2});
  CHECK(parse_group_spec("Z2xZ4").orders() == std::vector<std::int64_t>{4, 2});
  try {
    parse_group_spec("Z0");
    FAIL("Z0 accepted");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 0);
  }
  try {
    parse_group_spec("Z2xQ3");
    FAIL("Q accepted");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 3);
  }
  CHECK_THROWS_AS(parse_group_spec(""), ParseError);
  CHECK_THROWS_AS(parse_group_spec("Z2x"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("Z"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("Z99999999999"), ParseError);
}
