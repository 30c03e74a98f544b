#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cliffext/obstruction.hpp"
#include "cliffext/section.hpp"

namespace cliffext {

enum class OracleChoice { Coboundary, Complement, Both };
std::optional<OracleChoice> parse_oracle(std::string_view text);
std::string to_string(OracleChoice c);

struct SplitOptions {
  OracleChoice oracle = OracleChoice::Both;
  std::int64_t budget_ms = 0;  // 0: no deadline
  std::size_t max_sp_order = 200'000;
  std::size_t coboundary_max_sp = 20'000;
  std::uint64_t complement_work_limit = 400'000'000;
  /// Witnesses are checked on all |Sp|^2 pairs up to this many pairs, on generator pairs above.
  std::uint64_t full_verify_limit = 50'000'000;
  /// Obstruction tables above this many entries are evaluated lazily.
  std::uint64_t obstruction_dense_limit = 4'000'000;
  std::uint64_t seed = 1;
};

struct OracleRecord {
  std::string oracle;  // odd-construction, coboundary, complement
  std::string part;    // group the oracle ran on
  bool ran = false;
  bool splits = false;
  std::string detail;
  double ms = 0;
};

struct CocycleRecord {
  std::string part;
  std::string section;  // which section the cocycle belongs to
  CocycleCheck check;
  std::optional<bool> zero;  // set when the full table was compared with zero
};

struct SplitVerdict {
  std::string group;
  std::size_t v_size = 0;
  std::size_t sp_order = 0;
  bool splits = false;
  bool theorem_prediction = false;  // 4 does not divide |A|
  bool discrepancy = false;
  bool agreement = true;
  std::vector<OracleRecord> oracles;
  std::vector<CocycleRecord> cocycles;
  std::optional<Section> witness;           // on A's own coordinates
  std::optional<Section> composed_witness;  // on direct_sum(A_odd, A_2) for mixed A
  HomomorphismCheck witness_check;
  std::string witness_digest;
  std::string evidence;
  std::vector<std::pair<std::string, double>> timings;
};

/// Decides whether the Clifford extension of A splits.
///
/// Mixed A is split into A_odd + A_2 and each part decided on its own; splittings are
/// composed blockwise and carried back to A's coordinates. Odd parts use the explicit odd
/// section, the 2-part the coboundary solver and/or the complement search. The result is
/// compared with the prediction 4 !| |A|; a mismatch sets `discrepancy`.
/// ResourceError messages name the stage that ran out of budget.
SplitVerdict split_check(const FinAbGroup& a, const SplitOptions& opts = {});

}  // namespace cliffext
