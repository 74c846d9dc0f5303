#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hadlab/matrix.hpp"
#include "hadlab/partial_permutation.hpp"

namespace hadlab {

/// M x M grid of N x N projections, row-major.
struct ProjectionGrid {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<Eigen::MatrixXcd> cells;

  const Eigen::MatrixXcd& operator()(std::size_t i, std::size_t j) const { return cells[i * m + j]; }
  Eigen::MatrixXcd& operator()(std::size_t i, std::size_t j) { return cells[i * m + j]; }
};

/// P_ij = (1/N) v v*, v = H_i / H_j.
ProjectionGrid projection_grid(const PHMatrix& h);

struct SubmagicReport {
  bool is_submagic = false;
  double max_residual = 0.0;
};

/// Hermitian, idempotent, rank one per cell; P_ij P_ik = 0 and P_ij P_kj = 0 off the diagonal.
SubmagicReport verify_submagic(const ProjectionGrid& grid, double tol = 1e-9);

/// Every |<H_i/H_j, H_k/H_l>| is 0 or N within tol·N.
bool classicality_test(const PHMatrix& h, double tol = 1e-9);

struct PreLatinSquare {
  std::size_t m = 0;
  std::vector<int> labels;  ///< row-major, 1-based, first-occurrence order
  int label_count = 0;
  std::vector<Eigen::VectorXcd> representatives;  ///< unit vector per label

  int operator()(std::size_t i, std::size_t j) const { return labels[i * m + j]; }
};

/// Proportionality classes of H_i/H_j; nullopt when H is not classical.
std::optional<PreLatinSquare> pre_latin_square(const PHMatrix& h, double tol = 1e-9);

/// σ_x(j) = i iff L_ij = x.
PartialPermutation sigma_from_square(const PreLatinSquare& square, int label);

/// σ_x for every label of the square.
std::vector<PartialPermutation> square_generators(const PreLatinSquare& square);

inline constexpr std::size_t kMomentDimensionBudget = 2048;

/// (T_p)_{I,J} = tr(P_{i_1 j_1} ... P_{i_p j_p}) with tr = Tr/N; multi-indices row-major.
Eigen::MatrixXcd moment_matrix(const PHMatrix& h, std::size_t p, std::size_t dimension_budget = kMomentDimensionBudget);

struct MomentResult {
  std::size_t value = 0;         ///< eigenvalues with |λ - 1| < tol
  std::size_t dimension = 0;     ///< M^p
  double nearest_excluded = 0.0; ///< min |λ - 1| over the rest (+inf if none)
  double max_imaginary = 0.0;
  bool ambiguous = false;        ///< some eigenvalue has |λ - 1| in [tol, 10 tol]
  bool formal = false;           ///< M < N
};

MomentResult moment(const PHMatrix& h, std::size_t p, double tol = 1e-8,
                    std::size_t dimension_budget = kMomentDimensionBudget);

/// N^{p-1}.
std::int64_t cyclic_moment_oracle(std::int64_t n, std::int64_t p);

}  // namespace hadlab
