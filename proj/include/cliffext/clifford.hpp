#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "cliffext/double_space.hpp"

namespace cliffext {

/// An element (T, lambda) of the pseudo-symplectic group: T symplectic, lambda a phase table
/// over phase_denominator() solving the coboundary condition for T.
class CliffordElem {
 public:
  /// Checks shapes only; use check_coboundary() for the defining condition.
  CliffordElem(std::shared_ptr<const DoubleSpace> space, EndoMap t, PhaseFn lam);
  static CliffordElem identity(std::shared_ptr<const DoubleSpace> space);
  /// (id, kappa(v)).
  static CliffordElem kernel(std::shared_ptr<const DoubleSpace> space, Rank v);

  const DoubleSpace& space() const noexcept { return *space_; }
  const std::shared_ptr<const DoubleSpace>& space_ptr() const noexcept { return space_; }
  const EndoMap& map() const noexcept { return t_; }
  const PhaseFn& lambda() const noexcept { return lam_; }
  std::span<const std::uint16_t> perm() const noexcept { return perm_; }

  friend bool operator==(const CliffordElem& a, const CliffordElem& b) {
    return *a.space_ == *b.space_ && a.t_ == b.t_ && a.lam_ == b.lam_;
  }

 private:
  std::shared_ptr<const DoubleSpace> space_;
  EndoMap t_;
  PhaseFn lam_;
  std::vector<std::uint16_t> perm_;
};

/// lam(u + v) - lam(u) - lam(v) == beta(Tu, Tv) - beta(u, v) for all pairs.
bool check_coboundary(const DoubleSpace& space, const EndoMap& t, const PhaseFn& lam);
bool check_coboundary(const CliffordElem& x);

/// (T, lam)(S, mu) = (TS, u -> lam(Su) + mu(u)).
CliffordElem twisted_mul(const CliffordElem& x, const CliffordElem& y);
/// (T^-1, u -> -lam(T^-1 u)).
CliffordElem clifford_inverse(const CliffordElem& x);

/// A lift of T from the quadratic form of b(u, v) = beta(Tu, Tv) - beta(u, v), checked
/// exhaustively; falls back to solve_lambda_linear when the check fails.
PhaseFn particular_lambda(const DoubleSpace& space, const EndoMap& t);
/// The quadratic-form candidate alone, unchecked.
PhaseFn quadratic_lambda(const DoubleSpace& space, const EndoMap& t);
/// Solves the coboundary condition for T as a linear system over Z/D. InternalError if the
/// system has no solution.
PhaseFn solve_lambda_linear(const DoubleSpace& space, const EndoMap& t);

/// particular_lambda(T) + kappa(v) for every v, in rank order of v.
std::vector<CliffordElem> all_lifts(std::shared_ptr<const DoubleSpace> space, const EndoMap& t);

/// For x = (id, kappa(v)), returns v; nullopt when x is outside the kernel.
std::optional<Rank> kernel_parameter(const CliffordElem& x);

}  // namespace cliffext
