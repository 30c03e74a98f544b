#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "cliffext/double_space.hpp"

namespace cliffext {

struct EnumerationBudget {
  std::size_t max_order = 200000;
};

/// An enumerated Sp(V_A), canonically sorted by row-major matrix entries.
///
/// Each element is stored three ways: its matrix, its action as a permutation of ranks, and
/// the ranks of its generator images (the matrix columns). Lookup goes through a hash of the
/// mixed-radix key of the row-major entries.
class SymplecticGroup {
 public:
  /// `images` holds dim() generator images per element, in any order. Throws InternalError
  /// on duplicates or on a non-bijective element.
  SymplecticGroup(std::shared_ptr<const DoubleSpace> space, std::vector<Rank> images);

  const DoubleSpace& space() const noexcept { return *space_; }
  const std::shared_ptr<const DoubleSpace>& space_ptr() const noexcept { return space_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const EndoMap& element(std::size_t i) const { return elements_[i]; }
  const std::vector<EndoMap>& elements() const noexcept { return elements_; }
  std::span<const std::uint16_t> perm(std::size_t i) const {
    return {perms_.data() + i * space_->size(), space_->size()};
  }
  std::span<const Rank> images(std::size_t i) const { return {images_.data() + i * dim_, dim_}; }
  std::size_t identity() const noexcept { return identity_; }

  /// Index of element(i) o element(j).
  std::size_t multiply(std::size_t i, std::size_t j) const;
  std::size_t inverse(std::size_t i) const { return inverse_[i]; }
  std::optional<std::size_t> find(const EndoMap& t) const;
  std::optional<std::size_t> find_images(std::span<const Rank> images) const;

  std::uint64_t key_of_images(std::span<const Rank> images) const;

 private:
  std::optional<std::size_t> lookup(std::uint64_t key) const;

  std::shared_ptr<const DoubleSpace> space_;
  std::size_t dim_;
  std::vector<EndoMap> elements_;
  std::vector<Rank> images_;
  std::vector<std::uint16_t> perms_;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> slots_;
  int slot_shift_ = 0;
  std::vector<std::size_t> inverse_;
  std::size_t identity_ = 0;
};

/// All symplectic automorphisms of V_A by pruned depth-first search over generator images.
/// Throws ResourceError once more than budget.max_order elements are found.
SymplecticGroup enumerate_sp(std::shared_ptr<const DoubleSpace> space, const EnumerationBudget& budget = {});

/// Size of the subgroup generated by the given elements.
std::size_t closure_size(const SymplecticGroup& group, std::span<const std::size_t> gens);

std::size_t element_order(const SymplecticGroup& group, std::size_t i);

/// A small generating set: a single element or a pair when one can be found cheaply,
/// otherwise a greedy selection. Empty for the trivial group.
std::vector<std::size_t> find_generating_set(const SymplecticGroup& group);

/// Right-multiplication table: entry [t * gens.size() + k] = index of element(t) o element(gens[k]).
std::vector<std::uint32_t> right_multiplication_table(const SymplecticGroup& group, std::span<const std::size_t> gens);

}  // namespace cliffext
