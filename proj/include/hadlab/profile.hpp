#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hadlab/cycles.hpp"
#include "hadlab/matrix.hpp"

namespace hadlab {

/// Necessary-condition fingerprint for equivalence under row/column
/// permutations and phases. Equal profiles do not imply equivalence.
struct EquivalenceProfile {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::optional<std::size_t> defect;
  std::vector<std::string> pair_labels;  ///< sorted
  /// Butson order of the cross-ratios H_ij conj(H_ib) conj(H_aj) H_ab.
  std::optional<std::int64_t> butson_order;

  friend bool operator==(const EquivalenceProfile&, const EquivalenceProfile&) = default;
};

struct ProfileOptions {
  bool with_defect = true;
  double cycle_tol = kCycleTol;
  std::uint64_t budget = kDefaultNodeBudget;
  std::int64_t butson_l_max = 120;
};

EquivalenceProfile equivalence_profile(const PHMatrix& h, const ProfileOptions& options = {});

}  // namespace hadlab
