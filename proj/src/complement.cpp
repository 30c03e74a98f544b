#include "cliffext/complement.hpp"

#include <sstream>

#include "cliffext/errors.hpp"
#include "cliffext/kernels.hpp"

namespace cliffext {

std::string ComplementResult::summary() const {
  std::ostringstream os;
  if (found)
    os << "complement generated by lift tuple " << witness_tuple << " of " << tuples;
  else
    os << "all " << tuples << " lift tuples of " << generators.size() << " generators close onto more than |Sp| elements";
  return os.str();
}

ComplementResult complement_search(std::shared_ptr<const SymplecticGroup> group, const ComplementOptions& opts) {
  const auto& space = group->space();
  const std::size_t n = group->order(), vs = space.size();
  ComplementResult res;
  res.generators = opts.generators.empty() ? find_generating_set(*group) : opts.generators;
  if (closure_size(*group, res.generators) != n) throw ValidationError("complement generators do not generate Sp");
  const std::size_t k = res.generators.size();

  long double tuples = 1;
  for (std::size_t i = 0; i < k; ++i) tuples *= static_cast<long double>(vs);
  if (tuples * static_cast<long double>(n) > static_cast<long double>(opts.work_limit))
    throw ResourceError("complement search needs " + std::to_string(static_cast<double>(tuples)) + " lift tuples over |Sp| = " +
                        std::to_string(n) + ", beyond the work limit");
  res.tuples = static_cast<std::uint64_t>(tuples);

  std::vector<std::uint16_t> gen_phases(k * vs);
  for (std::size_t g = 0; g < k; ++g) {
    auto lam = particular_lambda(space, group->element(res.generators[g]));
    std::copy(lam.values().begin(), lam.values().end(), gen_phases.begin() + static_cast<std::ptrdiff_t>(g * vs));
  }
  const auto rmul = right_multiplication_table(*group, res.generators);
  const auto scan = opts.parallel
                        ? kernels::omp::complement_scan(*group, res.generators, rmul, gen_phases, res.tuples, opts.deadline)
                        : kernels::serial::complement_scan(*group, res.generators, rmul, gen_phases, res.tuples, opts.deadline);
  res.examined = scan.examined;
  if (!scan.found) return res;

  res.found = true;
  res.witness_tuple = scan.tuple;
  const auto omega = kernels::omega_table(space);
  std::vector<std::uint16_t> lifts, phases;
  std::vector<std::uint32_t> seen, queue;
  kernels::lift_tuple_phases(space, omega, gen_phases, k, scan.tuple, lifts);
  if (!kernels::closure_of_lifts(*group, res.generators, rmul, lifts, phases, seen, 1, queue))
    throw InternalError("complement witness does not reproduce");
  res.witness.emplace(std::move(group), std::move(phases));
  return res;
}

}  // namespace cliffext
