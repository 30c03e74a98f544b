#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cliffext/abelian.hpp"
#include "cliffext/phase.hpp"

namespace cliffext {

/// Index of an element of V_A in the fixed mixed-radix enumeration (rank 0 is zero).
using Rank = std::uint32_t;

/// A function V_A -> Q/Z stored densely as numerators over one common denominator.
class PhaseFn {
 public:
  PhaseFn() = default;
  PhaseFn(std::int64_t denominator, std::vector<std::uint16_t> numerators);
  static PhaseFn zero(std::size_t size, std::int64_t denominator);
  /// Throws ValidationError if some phase does not fit the denominator.
  static PhaseFn from_phases(std::span<const Phase> phases, std::int64_t denominator);

  std::size_t size() const noexcept { return values_.size(); }
  std::int64_t denominator() const noexcept { return den_; }
  std::uint16_t num(Rank u) const { return values_[u]; }
  Phase at(Rank u) const { return Phase(values_.at(u), den_); }
  std::span<const std::uint16_t> values() const noexcept { return values_; }
  bool is_zero() const;

  PhaseFn operator+(const PhaseFn& o) const;
  PhaseFn operator-(const PhaseFn& o) const;
  PhaseFn operator-() const;

  friend bool operator==(const PhaseFn&, const PhaseFn&) = default;

 private:
  std::int64_t den_ = 1;
  std::vector<std::uint16_t> values_;
};

/// The double V_A = A + dual(A), coordinates (a_1..a_m, chi_1..chi_m) with moduli (d, d).
class DoubleSpace {
 public:
  static constexpr std::size_t kMaxSize = 65536;

  /// Throws ResourceError when |V_A| exceeds kMaxSize.
  explicit DoubleSpace(FinAbGroup base);

  const FinAbGroup& base() const noexcept { return base_; }
  std::size_t dim() const noexcept { return moduli_.size(); }
  std::size_t half() const noexcept { return moduli_.size() / 2; }
  const std::vector<std::int64_t>& moduli() const noexcept { return moduli_; }
  std::int64_t modulus(std::size_t i) const { return moduli_[i]; }
  std::size_t size() const noexcept { return size_; }
  std::int64_t exponent() const noexcept { return base_.exponent(); }
  /// 2 * exponent: every phase this library produces on V_A has a denominator dividing it.
  std::int64_t phase_denominator() const noexcept { return 2 * base_.exponent(); }

  Rank rank_of(std::span<const std::int64_t> coords) const;
  Rank rank_of(const GroupElem& a, const GroupElem& chi) const;
  std::span<const std::uint16_t> coords(Rank r) const {
    return {coords_.data() + static_cast<std::size_t>(r) * dim(), dim()};
  }
  std::vector<std::int64_t> coord_vector(Rank r) const;
  Rank generator(std::size_t i) const { return moduli_[i] == 1 ? 0 : static_cast<Rank>(stride_[i]); }

  Rank add(Rank u, Rank v) const;
  Rank neg(Rank u) const;
  Rank sub(Rank u, Rank v) const { return add(u, neg(v)); }
  Rank scale(std::int64_t n, Rank u) const;

  /// beta(u, v) = chi_u(a_v) and omega(u, v) = beta(u, v) - beta(v, u), as numerators over
  /// phase_denominator().
  std::uint32_t beta_num(Rank u, Rank v) const;
  std::uint32_t omega_num(Rank u, Rank v) const;
  Phase beta(Rank u, Rank v) const { return Phase(beta_num(u, v), phase_denominator()); }
  Phase omega(Rank u, Rank v) const { return Phase(omega_num(u, v), phase_denominator()); }

  friend bool operator==(const DoubleSpace& a, const DoubleSpace& b) { return a.base_ == b.base_; }

 private:
  FinAbGroup base_;
  std::vector<std::int64_t> moduli_;
  std::vector<std::size_t> stride_;
  std::vector<std::int64_t> pair_weight_;  // D / d_i
  std::size_t size_ = 1;
  std::vector<std::uint16_t> coords_;
};

/// kappa(v)(u) = omega(v, u).
PhaseFn kappa(const DoubleSpace& space, Rank v);
/// True iff lam is additive on V_A.
bool is_character(const DoubleSpace& space, const PhaseFn& lam);
/// The unique v with kappa(v) == chi. Throws ValidationError when chi is not a character.
Rank kappa_inv(const DoubleSpace& space, const PhaseFn& chi);

/// An endomorphism of V_A as an integer matrix, entry (i, j) reduced mod moduli[i].
class EndoMap {
 public:
  /// Throws ValidationError unless moduli[i] / gcd(moduli[i], moduli[j]) divides entry (i, j).
  EndoMap(std::vector<std::int64_t> moduli, std::vector<std::int64_t> row_major);
  static EndoMap identity(const DoubleSpace& space);
  static EndoMap scalar(const DoubleSpace& space, std::int64_t k);
  /// Column j is the image of generator j.
  static EndoMap from_images(const DoubleSpace& space, std::span<const Rank> images);

  std::size_t dim() const noexcept { return moduli_.size(); }
  const std::vector<std::int64_t>& moduli() const noexcept { return moduli_; }
  const std::vector<std::int64_t>& entries() const noexcept { return entries_; }
  std::int64_t at(std::size_t i, std::size_t j) const { return entries_[i * dim() + j]; }

  std::vector<std::int64_t> apply(std::span<const std::int64_t> coords) const;
  Rank apply(const DoubleSpace& space, Rank u) const;
  std::vector<std::uint16_t> permutation(const DoubleSpace& space) const;

  /// Composition (*this) o rhs.
  EndoMap operator*(const EndoMap& rhs) const;

  std::string str() const;

  friend bool operator==(const EndoMap& a, const EndoMap& b) { return a.entries_ == b.entries_ && a.moduli_ == b.moduli_; }
  friend auto operator<=>(const EndoMap& a, const EndoMap& b) { return a.entries_ <=> b.entries_; }

 private:
  std::vector<std::int64_t> moduli_;
  std::vector<std::int64_t> entries_;
};

/// omega-preserving on all generator pairs and bijective on V_A.
bool is_symplectic(const DoubleSpace& space, const EndoMap& t);

}  // namespace cliffext
