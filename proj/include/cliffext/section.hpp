#pragma once

#include <memory>
#include <vector>

#include "cliffext/clifford.hpp"
#include "cliffext/symplectic_group.hpp"

namespace cliffext {

/// One lift (T, lambda_T) for every T of an enumerated Sp(V_A), stored as a flat
/// |Sp| x |V| table of numerators over phase_denominator().
class Section {
 public:
  /// Throws ValidationError on a wrong shape or when the identity row is not zero.
  Section(std::shared_ptr<const SymplecticGroup> group, std::vector<std::uint16_t> phases);

  const SymplecticGroup& group() const noexcept { return *group_; }
  const std::shared_ptr<const SymplecticGroup>& group_ptr() const noexcept { return group_; }
  const DoubleSpace& space() const noexcept { return group_->space(); }
  std::span<const std::uint16_t> phases() const noexcept { return phases_; }
  std::span<const std::uint16_t> lambda(std::size_t t) const {
    return {phases_.data() + t * space().size(), space().size()};
  }
  CliffordElem elem(std::size_t t) const;

  /// Every row passes check_coboundary.
  bool rows_valid() const;

 private:
  std::shared_ptr<const SymplecticGroup> group_;
  std::vector<std::uint16_t> phases_;
};

Section particular_section(std::shared_ptr<const SymplecticGroup> group);
/// lambda_T(u) = (beta(Tu, Tu) - beta(u, u)) / 2 in the odd-order sense. PreconditionError
/// for even |A|.
Section odd_section(std::shared_ptr<const SymplecticGroup> group);
/// Adds kappa(c_T) o T to every row: the section (id, kappa(c_T)) s(T).
Section shift_section(const Section& sec, std::span<const Rank> cochain);

enum class VerifyMode { All, Generators, Sampled };

struct HomomorphismCheck {
  VerifyMode mode = VerifyMode::All;
  std::uint64_t pairs = 0;
  std::uint64_t defects = 0;
  bool ok() const { return defects == 0; }
};

/// s(T)s(S) == s(TS) over all pairs, or over (T, g) for g in a generating set. The two are
/// equivalent: the set of S with s(T)s(S) = s(TS) for every T is closed under products.
HomomorphismCheck verify_homomorphism(const Section& sec, VerifyMode mode = VerifyMode::All,
                                      std::span<const std::size_t> gens = {});
/// `samples` pairs drawn from mt19937_64(seed); a spot check next to the generator-pair test.
HomomorphismCheck verify_homomorphism_sampled(const Section& sec, std::uint64_t samples, std::uint64_t seed = 1);
/// All pairs when |Sp|^2 <= pair_limit, otherwise generator pairs.
HomomorphismCheck verify_homomorphism_auto(const Section& sec, std::uint64_t pair_limit);

/// Section on B + C assembled from sections on B and C (coprime orders), over the given
/// enumeration of Sp(V_{B+C}) whose base must be direct_sum(B, C).
Section coprime_compose(const Section& sec_b, const Section& sec_c, std::shared_ptr<const SymplecticGroup> group_bc);

/// iota(S, mu) = (S + id, (v_B, v_C) -> mu(v_B)) for the block layout of direct_sum(B, C).
CliffordElem embed_clifford(const CliffordElem& x, const FinAbGroup& c);

/// Section on the summand of A spanned by the factors `factors` (in order), with group_b an
/// enumeration of Sp(V_B) for B = from_factors of those orders. PreconditionError unless sec_a
/// is a homomorphism.
Section restrict_section(const Section& sec_a, std::span<const std::size_t> factors,
                         std::shared_ptr<const SymplecticGroup> group_b);

/// Pulls a section back along a beta-preserving isomorphism phi: V_target -> V_source given as
/// a rank map. lambda_T(u) = lambda'_{phi T phi^-1}(phi u).
Section transport_section(const Section& src, std::shared_ptr<const SymplecticGroup> target, std::span<const Rank> phi);

/// phi = to_parts + dual(from_parts) on the doubles of A and of its primary parts.
std::vector<Rank> primary_double_map(const DoubleSpace& a, const DoubleSpace& parts, const PrimaryDecomposition& pd);

/// 64-bit FNV-1a over the group spec and the phase table, as 16 hex digits.
std::string section_digest(const Section& sec);

}  // namespace cliffext
