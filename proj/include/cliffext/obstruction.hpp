#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cliffext/budget.hpp"
#include "cliffext/modular_echelon.hpp"
#include "cliffext/section.hpp"

namespace cliffext {

/// O(T, S) = s(T) s(S) s(TS)^-1 read as an element of V_A through kappa. Dense tables hold
/// |Sp|^2 ranks; larger groups evaluate entries on demand.
class ObstructionCocycle {
 public:
  using Entry = std::function<Rank(std::size_t, std::size_t)>;

  static ObstructionCocycle from_table(std::shared_ptr<const SymplecticGroup> group, std::vector<std::uint16_t> table);
  static ObstructionCocycle lazy(std::shared_ptr<const SymplecticGroup> group, Entry entry);

  const SymplecticGroup& group() const noexcept { return *group_; }
  const std::shared_ptr<const SymplecticGroup>& group_ptr() const noexcept { return group_; }
  bool dense() const noexcept { return !table_.empty() || group_->order() == 0; }
  Rank at(std::size_t t, std::size_t s) const {
    return dense() ? table_[t * group_->order() + s] : entry_(t, s);
  }
  std::span<const std::uint16_t> table() const noexcept { return table_; }
  /// Every entry is zero (evaluates all |Sp|^2 entries).
  bool is_zero() const;
  /// Entrywise difference.
  ObstructionCocycle operator-(const ObstructionCocycle& o) const;

 private:
  ObstructionCocycle(std::shared_ptr<const SymplecticGroup> group, std::vector<std::uint16_t> table, Entry entry)
      : group_(std::move(group)), table_(std::move(table)), entry_(std::move(entry)) {}
  std::shared_ptr<const SymplecticGroup> group_;
  std::vector<std::uint16_t> table_;
  Entry entry_;
};

/// A single entry, computed directly. ValidationError when the defect is not a character.
Rank obstruction_entry(const Section& sec, std::size_t t, std::size_t s);

/// Dense when |Sp|^2 <= dense_limit; the lazy form keeps a reference to the section.
ObstructionCocycle obstruction_cocycle(std::shared_ptr<const Section> sec, std::uint64_t dense_limit = 40'000'000);

struct CocycleCheck {
  bool exhaustive = true;
  std::uint64_t triples = 0;
  std::uint64_t failures = 0;
  std::uint64_t seed = 0;
  bool ok() const { return failures == 0; }
};

/// T.O(S, R) + O(T, SR) == O(T, S) + O(TS, R): all triples when |Sp| <= exhaustive_max, else
/// `samples` seeded random triples.
CocycleCheck check_cocycle_identity(const ObstructionCocycle& o, std::uint64_t seed = 1, std::size_t exhaustive_max = 150,
                                    std::uint64_t samples = 100'000);

enum class EquationSet { AllPairs, GeneratorPairs };

struct CoboundaryOptions {
  /// AllPairs when |Sp|^2 <= all_pairs_limit, else GeneratorPairs.
  std::uint64_t all_pairs_limit = 1'000'000;
  std::vector<std::size_t> generators;  // found automatically when empty
  Deadline deadline;
};

struct CoboundaryResult {
  bool solvable = false;
  std::vector<Rank> cochain;  // c with c(T) + T c(S) - c(TS) = -O(T, S); lambda = -c
  EquationSet equations = EquationSet::AllPairs;
  std::uint64_t equation_count = 0;
  std::size_t unknowns = 0;
  std::vector<ComponentStats> components;
  std::string summary() const;
};

/// Decides whether O is a coboundary by streaming elimination per prime-power component.
///
/// Equations (T, S) for all pairs or for S in a generating set; the latter is exact because
/// a cochain solving the generator equations makes the shifted section homomorphic on
/// (T, g) pairs, hence everywhere. When solvable the cochain is re-checked against every
/// streamed equation.
CoboundaryResult coboundary_solve(const ObstructionCocycle& o, const CoboundaryOptions& opts = {});

/// Whether the difference of the two sections' cocycles is a coboundary.
bool class_difference_check(std::shared_ptr<const Section> a, std::shared_ptr<const Section> b, const CoboundaryOptions& opts = {});

}  // namespace cliffext
