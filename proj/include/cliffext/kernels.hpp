#pragma once

// Hot loops of the engine, each in two versions: `serial` is the plain reference kept for
// testing, `omp` distributes the outer loop with OpenMP. Both must return identical results;
// tests/test_kernels.cpp and bench/kernels_bench.cpp compare them.
//
// Phase tables are flat |Sp| x |V| arrays of numerators over space.phase_denominator(), row t
// belonging to group.element(t).

#include <cstdint>
#include <span>
#include <vector>

#include "cliffext/budget.hpp"
#include "cliffext/double_space.hpp"
#include "cliffext/symplectic_group.hpp"

namespace cliffext::kernels {

struct ComplementScan {
  bool found = false;
  std::uint64_t tuple = 0;     // smallest successful lift tuple (valid when found)
  std::uint64_t examined = 0;  // tuples whose closure was fully decided
};

#define CLIFFEXT_KERNEL_SET                                                                              \
  /* Generator images of every omega-preserving endomorphism, dim() ranks each, unsorted. */             \
  std::vector<Rank> symplectic_images(const DoubleSpace& space, std::size_t max_order);                  \
  /* Pairs (T, S) over all of Sp x Sp with s(T)s(S) != s(TS). */                                         \
  std::uint64_t section_defects_all(const SymplecticGroup& group, std::span<const std::uint16_t> phases); \
  /* Pairs (T, g) for g in gens; rmul is right_multiplication_table(group, gens). */                     \
  std::uint64_t section_defects_right(const SymplecticGroup& group, std::span<const std::uint16_t> phases, \
                                      std::span<const std::size_t> gens, std::span<const std::uint32_t> rmul); \
  /* Dense obstruction table (ranks of V_A), entry [t * |Sp| + s]. Throws ValidationError if some */     \
  /* defect is not a character. */                                                                       \
  std::vector<std::uint16_t> obstruction_table(const SymplecticGroup& group, std::span<const std::uint16_t> phases); \
  /* Cocycle identity failures over all |Sp|^3 triples. */                                               \
  std::uint64_t cocycle_failures_all(const SymplecticGroup& group, std::span<const std::uint16_t> table); \
  /* Cocycle identity failures over the given triples (3 indices each). */                               \
  std::uint64_t cocycle_failures_sampled(const SymplecticGroup& group, std::span<const std::uint16_t> table, \
                                         std::span<const std::uint32_t> triples);                        \
  /* Scan lift tuples of gens in rank order for a closure of size |Sp|. gen_phases holds the */          \
  /* reference lift of each generator (gens.size() x |V|). */                                            \
  ComplementScan complement_scan(const SymplecticGroup& group, std::span<const std::size_t> gens,        \
                                 std::span<const std::uint32_t> rmul, std::span<const std::uint16_t> gen_phases, \
                                 std::uint64_t tuple_count, const Deadline& deadline);

namespace serial {
CLIFFEXT_KERNEL_SET
}  // namespace serial

namespace omp {
CLIFFEXT_KERNEL_SET
}  // namespace omp

#undef CLIFFEXT_KERNEL_SET

/// Closure of one lift tuple: fills `phases` (|Sp| x |V|) and returns true when the tuple
/// generates a complement. `seen` entries equal to `stamp` (nonzero) mark visited elements. Shared by both kernel sets and by witness reconstruction.
bool closure_of_lifts(const SymplecticGroup& group, std::span<const std::size_t> gens, std::span<const std::uint32_t> rmul,
                      std::span<const std::uint16_t> lift_phases, std::vector<std::uint16_t>& phases,
                      std::vector<std::uint32_t>& seen, std::uint32_t stamp, std::vector<std::uint32_t>& queue);

/// omega numerators for all pairs, |V| x |V|.
std::vector<std::uint16_t> omega_table(const DoubleSpace& space);

/// Lift phases for tuple index `tuple`: generator k gets gen_phases[k] + kappa(v_k).
void lift_tuple_phases(const DoubleSpace& space, std::span<const std::uint16_t> omega, std::span<const std::uint16_t> gen_phases,
                       std::size_t gen_count, std::uint64_t tuple, std::vector<std::uint16_t>& out);

}  // namespace cliffext::kernels
