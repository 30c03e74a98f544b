#include "cliffext/errors.hpp"
#include "cliffext/weyl.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cliffext;
using test_support::space_of;

TEST_CASE("Weyl matrices") {
  auto z2 = space_of("Z2");
  CHECK(weyl_matrix(*z2, 0).max_deviation(DenseMatrix::identity(2)) == 0.0);
  auto x = weyl_matrix(*z2, z2->rank_of(std::vector<std::int64_t>{1, 0}));
  CHECK(x(0, 0) == std::complex<double>(0, 0));
  CHECK(x(1, 0) == std::complex<double>(1, 0));
  CHECK(x(0, 1) == std::complex<double>(1, 0));
  auto z = weyl_matrix(*z2, z2->rank_of(std::vector<std::int64_t>{0, 1}));
  CHECK(z(0, 0) == std::complex<double>(1, 0));
  CHECK(std::abs(z(1, 1) - std::complex<double>(-1, 0)) < 1e-15);
  CHECK(z(0, 1) == std::complex<double>(0, 0));
  auto w0 = weyl_matrix(*space_of("Z3"), 0);
  CHECK((w0 * w0).max_deviation(w0) == 0.0);
  CHECK_THROWS_AS(weyl_matrix(*space_of("Z17"), 1), ResourceError);
  CHECK(std::abs(root_of_unity(Phase(1, 4)) - std::complex<double>(0, 1)) < 1e-15);
}

TEST_CASE("Weyl relations agree with beta and omega") {
  for (auto spec : {"Z2", "Z3", "Z4", "Z2xZ2", "Z6", "Z8", "Z4xZ2"}) {
    auto r = check_weyl_relations(*space_of(spec));
    auto s = space_of(spec);
    CHECK(r.pairs == s->size() * s->size());
    CHECK_MESSAGE(r.ok(1e-12), spec << " " << r.worst_product << " " << r.worst_commutation);
  }
  CHECK(check_weyl_relations(*space_of("Z2")).pairs == 16);
  CHECK(check_weyl_relations(*space_of("Z3")).pairs == 81);
}
