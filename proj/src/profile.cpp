#include "hadlab/profile.hpp"

#include <algorithm>

#include "hadlab/defect.hpp"

namespace hadlab {

EquivalenceProfile equivalence_profile(const PHMatrix& h, const ProfileOptions& options) {
  require_hadamard(h, "equivalence_profile");
  EquivalenceProfile p;
  p.rows = h.rows();
  p.cols = h.cols();
  if (options.with_defect && h.rows() <= h.cols()) p.defect = defect(h).defect;
  for (const auto& pl : cycle_structure_profile(h, options.cycle_tol, options.budget)) p.pair_labels.push_back(pl.label);
  std::sort(p.pair_labels.begin(), p.pair_labels.end());

  const std::size_t m = h.rows(), n = h.cols();
  std::vector<Phase> cross;
  cross.reserve(m * n * m * n);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) cross.push_back(h(i, j) * h(i, b).conj() * h(a, j).conj() * h(a, b));
  const PHMatrix grid(m * n, m * n, std::move(cross));
  if (auto form = detect_butson(grid, options.butson_l_max)) p.butson_order = form->order;
  return p;
}

}  // namespace hadlab
