#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cliffext/budget.hpp"
#include "cliffext/section.hpp"

namespace cliffext {

struct ComplementOptions {
  std::vector<std::size_t> generators;  // found automatically when empty
  /// ResourceError when |V|^|gens| * |Sp| exceeds this.
  std::uint64_t work_limit = 400'000'000;
  Deadline deadline;
  bool parallel = true;
};

struct ComplementResult {
  bool found = false;
  std::vector<std::size_t> generators;
  std::uint64_t tuples = 0;    // |V|^|gens|
  std::uint64_t examined = 0;  // tuples decided before the answer was fixed
  std::uint64_t witness_tuple = 0;
  std::optional<Section> witness;  // the closure as a section when found
  std::string summary() const;
};

/// Searches all tuples of lifts of the generators for one whose closure under the twisted
/// product meets the kernel trivially. Lift v of generator g is particular_lambda(g) + kappa(v);
/// tuples run in mixed-radix order, first generator most significant, and the first success
/// wins.
ComplementResult complement_search(std::shared_ptr<const SymplecticGroup> group, const ComplementOptions& opts = {});

}  // namespace cliffext
