#pragma once

// Streaming linear elimination over Z/n. Equations arrive one at a time; only reduced pivot
// rows are kept, so memory is bounded by the number of unknowns rather than equations.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cliffext {

struct SparseEntry {
  std::uint32_t col;
  std::int64_t val;
};

/// Strong echelon (Howell) elimination over Z/p^k on sparse rows.
///
/// A new row is reduced against the pivot of its leading column. When the pivot's leading
/// entry has higher p-valuation than the row's, the two swap roles. Every stored pivot with
/// leading entry p^v also contributes its annihilator multiple p^(k-v) * row, which keeps
/// back substitution free of divisibility failures.
class PrimePowerEliminator {
 public:
  PrimePowerEliminator(std::int64_t p, int k, std::size_t unknowns, std::size_t entry_limit = 400'000'000);

  /// Adds sum val * x_col = rhs (mod p^k). Duplicate columns are summed.
  void add_equation(std::span<const SparseEntry> row, std::int64_t rhs);

  bool consistent() const noexcept { return consistent_; }
  std::int64_t modulus() const noexcept { return q_; }
  std::size_t unknowns() const noexcept { return n_; }
  std::size_t pivot_count() const noexcept { return pivots_; }
  std::size_t equation_count() const noexcept { return equations_; }
  /// Solution with free unknowns set to 0, or nullopt when inconsistent.
  std::optional<std::vector<std::int64_t>> solve() const;

 private:
  using Row = std::vector<SparseEntry>;  // sorted by column; column n_ is the right-hand side
  void insert(Row row);
  int valuation(std::int64_t x) const;
  Row combine(const Row& a, std::int64_t fa, const Row& b, std::int64_t fb) const;
  void normalize(Row& row) const;

  std::int64_t p_, q_;
  int k_;
  std::size_t n_;
  std::size_t entry_limit_;
  std::size_t entries_ = 0;
  std::vector<Row> pivot_;  // indexed by leading column, empty when none
  std::size_t pivots_ = 0;
  std::size_t equations_ = 0;
  bool consistent_ = true;
};

/// Gaussian elimination over GF(2) with bit-packed dense rows.
class Gf2Eliminator {
 public:
  explicit Gf2Eliminator(std::size_t unknowns);
  void add_equation(std::span<const SparseEntry> row, std::int64_t rhs);
  bool consistent() const noexcept { return consistent_; }
  std::size_t unknowns() const noexcept { return n_; }
  std::size_t pivot_count() const noexcept { return pivots_; }
  std::size_t equation_count() const noexcept { return equations_; }
  std::optional<std::vector<std::int64_t>> solve() const;

 private:
  std::size_t n_, words_;
  std::vector<std::uint64_t> rows_;  // pivot for column c at rows_[c * words_]
  std::vector<std::uint8_t> has_;
  std::vector<std::uint64_t> scratch_;
  std::size_t pivots_ = 0;
  std::size_t equations_ = 0;
  bool consistent_ = true;
};

struct ComponentStats {
  std::int64_t modulus = 0;  // p^k
  std::size_t pivots = 0;
  std::size_t equations = 0;
  bool consistent = true;
  bool bit_packed = false;
};

/// Linear system over Z/n split by the Chinese remainder theorem into prime-power parts.
/// Each equation may carry its own modulus dividing n; it is lifted by the factor n / m.
class ModularSolver {
 public:
  ModularSolver(std::int64_t modulus, std::size_t unknowns);
  ~ModularSolver();
  ModularSolver(ModularSolver&&) noexcept;
  ModularSolver& operator=(ModularSolver&&) noexcept;

  void add_equation(std::span<const SparseEntry> row, std::int64_t rhs, std::int64_t row_modulus);
  void add_equation(std::initializer_list<SparseEntry> row, std::int64_t rhs, std::int64_t row_modulus) {
    add_equation(std::span<const SparseEntry>(row.begin(), row.size()), rhs, row_modulus);
  }
  bool consistent() const;
  std::int64_t modulus() const noexcept { return n_; }
  std::vector<ComponentStats> components() const;
  /// Values mod n, free unknowns 0.
  std::optional<std::vector<std::int64_t>> solve() const;

 private:
  struct Component;
  std::int64_t n_;
  std::size_t unknowns_;
  std::vector<std::unique_ptr<Component>> parts_;
};

/// Prime-power factorization of n >= 1 as (p, k) pairs, ascending p.
std::vector<std::pair<std::int64_t, int>> factor_prime_powers(std::int64_t n);

}  // namespace cliffext
