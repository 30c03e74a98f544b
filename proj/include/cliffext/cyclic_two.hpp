#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cliffext/clifford.hpp"

namespace cliffext {

/// V for A = Z_N with coordinates (a, p).
std::shared_ptr<const DoubleSpace> cyclic_space(std::int64_t n);

/// t(a, p) = (a + p, p) and s(a, p) = (-p, a).
EndoMap cyclic_t(const DoubleSpace& space);
EndoMap cyclic_s(const DoubleSpace& space);

/// lambda_t(a, p) = p^2 / 2N + (x a + y p) / N with a, p in {0..N-1}. PreconditionError unless
/// N is a power of two.
CliffordElem lift_t(std::int64_t n, std::int64_t x, std::int64_t y);
/// lambda_s(a, p) = -a p / N + (z a + w p) / N.
CliffordElem lift_s(std::int64_t n, std::int64_t z, std::int64_t w);

/// Phase table of the n-th twisted power, by repeated multiplication.
PhaseFn power_phase(const CliffordElem& lift, std::int64_t n);

struct ParityReport {
  std::int64_t n = 0;
  std::uint64_t pairs = 0;
  std::uint64_t closed_form_mismatches = 0;  // brute force vs p(1 + x) / 2
  std::vector<std::int64_t> trivial_x;       // x for which the N-th power is the identity pair
  bool trivial_iff_x_odd = false;
  bool ok() const { return closed_form_mismatches == 0 && trivial_iff_x_odd; }
};

ParityReport parity_constraint_check(std::int64_t n);

struct ResidualCharacter {
  std::pair<std::int64_t, std::int64_t> closed_form;
  std::pair<std::int64_t, std::int64_t> direct;
};

/// v_W for W = (s t)^3 s^-2 from the closed form and from the twisted products.
/// InternalError if W is not over the identity, its phase is not additive, or the two values
/// differ.
ResidualCharacter residual_character(std::int64_t n, std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t w);

struct ConstraintReport {
  std::int64_t n = 0;
  std::vector<std::int64_t> order_set;     // x with t^N lifting to the identity pair
  std::vector<std::int64_t> relation_set;  // x admitting y, z, w with (s t)^3 = s^2 on lifts
  std::vector<std::int64_t> intersection;
  bool closed_forms_match = false;  // order_set == {x odd}, relation_set == {2x = 0}
  std::uint64_t tuples = 0;
};

ConstraintReport constraint_report(std::int64_t n);

}  // namespace cliffext
