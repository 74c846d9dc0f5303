#include "hadlab/linalg.hpp"

#include <algorithm>

#include "hadlab/phase.hpp"

namespace hadlab {

RankResult numerical_rank(const Eigen::MatrixXd& a, double tol, double reference_scale) {
  if (!(tol > 0)) throw InvalidInput("numerical_rank: tolerance must be positive");
  RankResult out;
  if (a.size() == 0) return out;
  if (!a.allFinite()) throw InvalidInput("numerical_rank: non-finite coefficients");
  // BDCSVD can report spurious nonzero values on these sparse structured systems.
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  const double dim = static_cast<double>(std::max(a.rows(), a.cols()));
  out.threshold = tol * std::max(smax, reference_scale) * dim;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > out.threshold && s(k) > 0.0) {
      ++out.rank;
      out.smallest_kept = s(k);
    } else {
      out.largest_dropped = std::max(out.largest_dropped, s(k));
    }
  }
  if (out.rank == 0) {
    out.gap_ratio = std::numeric_limits<double>::infinity();
  } else if (out.largest_dropped > 0.0) {
    out.gap_ratio = out.smallest_kept / out.largest_dropped;
  }
  return out;
}

RankResult numerical_rank(const RealLinearSystem& system, double tol, double reference_scale) {
  return numerical_rank(system.coefficients, tol, reference_scale);
}

Eigen::MatrixXd column_space_basis(const Eigen::MatrixXd& a, double tol, double reference_scale) {
  const RankResult r = numerical_rank(a, tol, reference_scale);
  if (r.rank == 0) return Eigen::MatrixXd(a.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(static_cast<Eigen::Index>(r.rank));
}

}  // namespace hadlab
