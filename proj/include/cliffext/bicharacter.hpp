#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cliffext/abelian.hpp"
#include "cliffext/double_space.hpp"
#include "cliffext/phase.hpp"

namespace cliffext {

/// A bicharacter on a finite abelian group V, held as its matrix of generator pairings
/// B(g_i, g_j). Values on arbitrary pairs are induced bilinearly.
class Bicharacter {
 public:
  static constexpr std::size_t kMaxTableSize = 64;

  /// Row-major pairings; throws ValidationError unless the order of entry (i, j) divides
  /// gcd(d_i, d_j).
  Bicharacter(FinAbGroup group, std::vector<Phase> pairings);
  static Bicharacter zero(const FinAbGroup& group);
  /// beta_A and omega_A on V_A (as a group with the double's moduli).
  static Bicharacter beta(const DoubleSpace& space);
  static Bicharacter omega(const DoubleSpace& space);
  /// Reads generator pairings off a full |V| x |V| table after checking biadditivity.
  /// Throws ValidationError on a non-biadditive table.
  static Bicharacter from_table(const FinAbGroup& group, const std::vector<Phase>& table);

  const FinAbGroup& group() const noexcept { return group_; }
  const Phase& pairing(std::size_t i, std::size_t j) const { return m_[i * group_.rank() + j]; }
  const std::vector<Phase>& pairings() const noexcept { return m_; }

  Phase at(std::span<const std::int64_t> u, std::span<const std::int64_t> v) const;
  /// Full table by element rank; ResourceError above kMaxTableSize elements.
  std::vector<Phase> table() const;

  bool is_symmetric() const;
  bool is_alternating() const;
  Bicharacter transpose() const;

  Bicharacter operator+(const Bicharacter& o) const;
  Bicharacter operator-(const Bicharacter& o) const;

  friend bool operator==(const Bicharacter& a, const Bicharacter& b) { return a.group_ == b.group_ && a.m_ == b.m_; }

 private:
  FinAbGroup group_;
  std::vector<Phase> m_;
};

/// B(u, v) - B(v, u).
Bicharacter antisymmetrize(const Bicharacter& b);

/// Exhaustive biadditivity of a full table (|V| x |V| by rank).
bool is_biadditive_table(const FinAbGroup& group, const std::vector<Phase>& table);

struct TambaraReport {
  std::string group;
  std::uint64_t bil = 0;
  std::uint64_t sym = 0;
  std::uint64_t alt = 0;
  std::uint64_t image = 0;   // distinct antisymmetrizations
  std::uint64_t kernel = 0;  // bicharacters with zero antisymmetrization
  bool images_alternating = false;
  bool kernel_is_sym = false;
  bool surjective = false;
  bool tables_checked = false;  // full tables re-checked for |V| <= 64
  bool ok() const { return images_alternating && kernel_is_sym && surjective && bil == sym * alt; }
};

/// Enumerates Bil(V) and checks 0 -> Sym -> Bil -> Alt -> 0. ResourceError when |Bil|
/// exceeds max_bil.
TambaraReport tambara_check(const FinAbGroup& v, std::uint64_t max_bil = 1u << 20);

}  // namespace cliffext
