#include "cliffext/phase.hpp"

#include <numeric>

#include "cliffext/errors.hpp"

namespace cliffext {

Phase::Phase(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ValidationError("phase denominator must be nonzero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  num = mod_floor(num, den);
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Phase Phase::operator+(const Phase& o) const {
  const std::int64_t l = std::lcm(den_, o.den_);
  return Phase(num_ * (l / den_) + o.num_ * (l / o.den_), l);
}

Phase Phase::operator-(const Phase& o) const { return *this + (-o); }

Phase Phase::operator-() const { return Phase(-num_, den_); }

Phase Phase::scaled(std::int64_t n) const {
  return Phase(mod_floor(n, den_) * num_, den_);
}

std::int64_t Phase::numerator_over(std::int64_t denominator) const {
  if (denominator <= 0 || denominator % den_ != 0)
    throw ValidationError("phase " + str() + " is not expressible over denominator " +
                          std::to_string(denominator));
  return num_ * (denominator / den_);
}

std::string Phase::str() const {
  if (num_ == 0) return "0";
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t old_r = mod_floor(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw PreconditionError("no inverse of " + std::to_string(a) + " mod " + std::to_string(m));
  return mod_floor(old_s, m);
}

Phase phase_half_odd(const Phase& p) {
  if (p.den() % 2 == 0)
    throw PreconditionError("no unique odd square root: phase " + p.str() + " has even order");
  // 2 is invertible mod an odd denominator; inv(2) * p is the unique odd-order half.
  return p.scaled(mod_inverse(2, p.den()));
}

}  // namespace cliffext
