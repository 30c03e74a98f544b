#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace cliffext {

/// An element of Q/Z in lowest terms, standing in for the root of unity exp(2 pi i num/den).
///
/// Invariants: den >= 1, 0 <= num < den, gcd(num, den) == 1 (zero is 0/1).
class Phase {
 public:
  constexpr Phase() = default;
  /// Any integers with den != 0; the value is reduced mod 1 and to lowest terms.
  Phase(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  /// Order in Q/Z, which equals the reduced denominator.
  std::int64_t order() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_ == 0; }

  Phase operator+(const Phase& o) const;
  Phase operator-(const Phase& o) const;
  Phase operator-() const;
  /// n * p, reduced mod 1.
  Phase scaled(std::int64_t n) const;

  /// Numerator of this phase over a denominator that it divides; throws ValidationError otherwise.
  std::int64_t numerator_over(std::int64_t denominator) const;

  std::string str() const;

  friend bool operator==(const Phase&, const Phase&) = default;
  friend auto operator<=>(const Phase&, const Phase&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// The unique odd-order r with 2r = p. Throws PreconditionError when p has even order.
Phase phase_half_odd(const Phase& p);

/// Inverse of a modulo m (gcd(a, m) == 1 required, m >= 1).
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

/// Representative of a in [0, m).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace cliffext
