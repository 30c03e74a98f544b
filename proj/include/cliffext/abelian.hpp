#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cliffext/phase.hpp"

namespace cliffext {

/// A finite abelian group Z_{d_1} + ... + Z_{d_m}, kept in the factor form it was built from.
///
/// make() sorts the factors descending. direct_sum() concatenates blocks so that summand
/// coordinates stay addressable; such groups are not re-sorted.
class FinAbGroup {
 public:
  /// The trivial group, orders = [1].
  FinAbGroup();

  /// Empty list gives the trivial group; any order < 1 throws ValidationError.
  static FinAbGroup make(std::vector<std::int64_t> orders);
  /// Same validation as make() but keeps the factor order as given.
  static FinAbGroup from_factors(std::vector<std::int64_t> orders);

  const std::vector<std::int64_t>& orders() const noexcept { return orders_; }
  std::size_t rank() const noexcept { return orders_.size(); }
  std::int64_t order(std::size_t i) const { return orders_.at(i); }
  std::int64_t size() const noexcept { return size_; }
  std::int64_t exponent() const noexcept { return exponent_; }
  bool is_trivial() const noexcept { return size_ == 1; }

  /// Canonical text form, e.g. "Z4xZ2".
  std::string spec() const;

  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) { return a.orders_ == b.orders_; }

 private:
  explicit FinAbGroup(std::vector<std::int64_t> orders);
  std::vector<std::int64_t> orders_;
  std::int64_t size_ = 1;
  std::int64_t exponent_ = 1;
};

/// B + C with B's factors first; trivial factors are dropped (trivial + C == C).
FinAbGroup direct_sum(const FinAbGroup& b, const FinAbGroup& c);

/// An element of a FinAbGroup in canonical coordinates 0 <= n_i < d_i.
class GroupElem {
 public:
  GroupElem(FinAbGroup group, std::vector<std::int64_t> coords);
  static GroupElem zero(const FinAbGroup& group);

  const FinAbGroup& group() const noexcept { return group_; }
  const std::vector<std::int64_t>& coords() const noexcept { return coords_; }
  std::int64_t operator[](std::size_t i) const { return coords_.at(i); }
  bool is_zero() const;

  GroupElem operator+(const GroupElem& o) const;
  GroupElem operator-() const;
  GroupElem operator-(const GroupElem& o) const { return *this + (-o); }
  GroupElem scaled(std::int64_t n) const;

  friend bool operator==(const GroupElem& a, const GroupElem& b) {
    return a.group_ == b.group_ && a.coords_ == b.coords_;
  }

 private:
  FinAbGroup group_;
  std::vector<std::int64_t> coords_;
};

/// All |A| elements in mixed-radix order (first coordinate most significant).
std::vector<GroupElem> enumerate_elements(const FinAbGroup& group);

/// chi(a) for chi in the dual copy of A, via the fixed identification chi_i(a) = a_i / d_i.
Phase pairing(const GroupElem& chi, const GroupElem& a);

/// A homomorphism given by an integer matrix: target coordinate i = sum_j m(i, j) * source_j mod d_i.
class GroupHom {
 public:
  /// Throws ValidationError unless the matrix is well defined on the source.
  GroupHom(FinAbGroup source, FinAbGroup target, std::vector<std::int64_t> row_major);

  const FinAbGroup& source() const noexcept { return source_; }
  const FinAbGroup& target() const noexcept { return target_; }
  std::int64_t at(std::size_t i, std::size_t j) const { return m_.at(i * source_.rank() + j); }

  GroupElem apply(const GroupElem& a) const;
  std::vector<std::int64_t> apply(const std::vector<std::int64_t>& coords) const;

 private:
  FinAbGroup source_, target_;
  std::vector<std::int64_t> m_;
};

/// For psi: A' -> A, the dual map (chi -> chi o psi) from the dual of A to the dual of A',
/// written in the fixed coordinates of both duals.
GroupHom dual_map(const GroupHom& psi);

/// A = A_odd + A_2 with the coordinate maps to and from direct_sum(odd, two).
struct PrimaryDecomposition {
  FinAbGroup odd;
  FinAbGroup two;
  FinAbGroup parts;  // direct_sum(odd, two)
  GroupHom to_parts;
  GroupHom from_parts;
};

PrimaryDecomposition primary_decompose(const FinAbGroup& group);

/// 2-adic valuation and odd part of n > 0.
int two_adic_valuation(std::int64_t n);

}  // namespace cliffext
