#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hadlab {

/// Which real quantity a column of a RealLinearSystem stands for.
struct Unknown {
  std::string block;  ///< "A", "X", "Y", "B", ...
  std::size_t row = 0;
  std::size_t col = 0;
  enum class Part { real, imag } part = Part::real;
};

struct RealLinearSystem {
  Eigen::MatrixXd coefficients;  ///< rows = scalar constraints, cols = unknowns
  std::vector<Unknown> layout;   ///< one per column

  std::size_t unknowns() const { return static_cast<std::size_t>(coefficients.cols()); }
  std::size_t constraints() const { return static_cast<std::size_t>(coefficients.rows()); }
};

struct RankResult {
  std::size_t rank = 0;
  double smallest_kept = std::numeric_limits<double>::quiet_NaN();
  double largest_dropped = 0.0;
  double gap_ratio = std::numeric_limits<double>::infinity();  ///< +inf when nothing is dropped
  double threshold = 0.0;
};

/// Singular values above τ = tol · max(σ_max, reference_scale) · max(rows, cols).
/// reference_scale keeps a numerically-zero matrix from being read as rank one
/// when the caller knows the natural size of nonzero entries.
RankResult numerical_rank(const Eigen::MatrixXd& a, double tol, double reference_scale = 0.0);
RankResult numerical_rank(const RealLinearSystem& system, double tol, double reference_scale = 0.0);

/// Orthonormal basis of the column space, columns kept by numerical_rank.
Eigen::MatrixXd column_space_basis(const Eigen::MatrixXd& a, double tol, double reference_scale = 0.0);

}  // namespace hadlab
