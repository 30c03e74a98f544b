#include <algorithm>
#include <random>

#include "cliffext/kernels.hpp"
#include "cliffext/section.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cliffext;
using test_support::space_of;
using test_support::sp_of;

namespace {

// Sorted list of per-element image tuples, for comparing enumerations.
std::vector<std::vector<Rank>> as_sorted_tuples(const std::vector<Rank>& images, std::size_t dim) {
  std::vector<std::vector<Rank>> out;
  for (std::size_t i = 0; i < images.size(); i += dim) out.emplace_back(images.begin() + i, images.begin() + i + dim);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("symplectic images: serial and omp find the same set") {
  for (auto spec : {"Z2", "Z3", "Z4", "Z2xZ2", "Z6", "Z9", "Z4xZ2"}) {
    auto s = space_of(spec);
    auto a = kernels::serial::symplectic_images(*s, 1'000'000);
    auto b = kernels::omp::symplectic_images(*s, 1'000'000);
    CHECK_MESSAGE(as_sorted_tuples(a, s->dim()) == as_sorted_tuples(b, s->dim()), spec);
  }
}

TEST_CASE("section defect kernels agree") {
  for (auto spec : {"Z2", "Z3", "Z4", "Z2xZ2", "Z6"}) {
    auto sp = sp_of(spec);
    Section sec = particular_section(sp);
    CHECK(kernels::serial::section_defects_all(*sp, sec.phases()) == kernels::omp::section_defects_all(*sp, sec.phases()));
    auto gens = find_generating_set(*sp);
    auto rmul = right_multiplication_table(*sp, gens);
    CHECK(kernels::serial::section_defects_right(*sp, sec.phases(), gens, rmul) ==
          kernels::omp::section_defects_right(*sp, sec.phases(), gens, rmul));
  }
}

TEST_CASE("obstruction and cocycle kernels agree") {
  for (auto spec : {"Z2", "Z3", "Z4", "Z2xZ2", "Z8"}) {
    auto sp = sp_of(spec);
    Section sec = particular_section(sp);
    auto a = kernels::serial::obstruction_table(*sp, sec.phases());
    auto b = kernels::omp::obstruction_table(*sp, sec.phases());
    REQUIRE(a == b);
    if (sp->order() <= 150) {
      CHECK(kernels::serial::cocycle_failures_all(*sp, a) == 0);
      CHECK(kernels::omp::cocycle_failures_all(*sp, a) == 0);
    }
    std::mt19937_64 rng(19);
    std::vector<std::uint32_t> triples(3 * 5000);
    for (auto& t : triples) t = static_cast<std::uint32_t>(rng() % sp->order());
    CHECK(kernels::serial::cocycle_failures_sampled(*sp, a, triples) == 0);
    CHECK(kernels::omp::cocycle_failures_sampled(*sp, a, triples) == 0);
    // One corrupted entry: both versions count the same failures.
    auto bad = a;
    auto& e = bad[(sp->order() / 2) * sp->order() + 1];
    e = static_cast<std::uint16_t>(sp->space().add(e, 1));
    CHECK(kernels::serial::cocycle_failures_sampled(*sp, bad, triples) == kernels::omp::cocycle_failures_sampled(*sp, bad, triples));
    if (sp->order() <= 150) {
      const auto fs = kernels::serial::cocycle_failures_all(*sp, bad);
      CHECK(fs > 0);
      CHECK(fs == kernels::omp::cocycle_failures_all(*sp, bad));
    }
  }
}

TEST_CASE("complement scan kernels agree") {
  for (auto spec : {"Z2", "Z3", "Z4", "Z2xZ2"}) {
    auto sp = sp_of(spec);
    const auto& s = sp->space();
    auto gens = find_generating_set(*sp);
    auto rmul = right_multiplication_table(*sp, gens);
    std::vector<std::uint16_t> gen_phases;
    for (auto g : gens) {
      auto lam = particular_lambda(s, sp->element(g));
      gen_phases.insert(gen_phases.end(), lam.values().begin(), lam.values().end());
    }
    std::uint64_t tuples = 1;
    for (std::size_t i = 0; i < gens.size(); ++i) tuples *= s.size();
    auto a = kernels::serial::complement_scan(*sp, gens, rmul, gen_phases, tuples, Deadline{});
    auto b = kernels::omp::complement_scan(*sp, gens, rmul, gen_phases, tuples, Deadline{});
    CHECK(a.found == b.found);
    if (a.found) CHECK(a.tuple == b.tuple);
    else CHECK(a.examined == b.examined);
  }
}
