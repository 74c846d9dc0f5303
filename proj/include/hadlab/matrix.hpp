#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hadlab/phase.hpp"

namespace hadlab {

inline constexpr double kDefaultTol = 1e-9;

class PHMatrix;

struct VerificationReport {
  bool is_hadamard = false;
  double max_inner_product = 0.0;  ///< max_{i<j} |<H_i, H_j>|
  double max_modulus_deviation = 0.0;
  double tolerance = kDefaultTol;
};

/// Pure check: inner products against tol·N, moduli against tol.
VerificationReport check_partial_hadamard(const PHMatrix& h, double tol = kDefaultTol);

/// Same check; additionally marks `h` as verified when it passes.
VerificationReport verify_partial_hadamard(PHMatrix& h, double tol = kDefaultTol);

/// M×N grid of unit-modulus entries, row-major, immutable once built.
class PHMatrix {
 public:
  PHMatrix() = default;
  PHMatrix(std::size_t rows, std::size_t cols, std::vector<Phase> entries, std::string label = {});

  static PHMatrix from_complex(const Eigen::MatrixXcd& values, std::string label = {}, double tol = 1e-9);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  const Phase& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const Phase& at(std::size_t i, std::size_t j) const;
  cdouble value(std::size_t i, std::size_t j) const { return (*this)(i, j).value(); }
  std::span<const Phase> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }
  std::span<const Phase> entries() const noexcept { return entries_; }

  Eigen::MatrixXcd to_complex() const;

  const std::string& label() const noexcept { return label_; }
  PHMatrix with_label(std::string label) const;
  /// Copy with one entry replaced; the copy is not verified.
  PHMatrix with_entry(std::size_t i, std::size_t j, Phase p) const;
  /// Rows selected in the given order.
  PHMatrix select_rows(std::span<const std::size_t> rows) const;

  bool verified() const noexcept { return verified_; }

  friend VerificationReport verify_partial_hadamard(PHMatrix& h, double tol);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Phase> entries_;
  std::string label_;
  bool verified_ = false;
};

/// Throws InvalidInput unless `h` is flagged verified or passes a check at `tol`.
void require_hadamard(const PHMatrix& h, const char* operation, double tol = kDefaultTol);

struct Dephased {
  PHMatrix matrix;
  std::vector<Phase> row_phases;  ///< H_ij = row_phases[i] · col_phases[j] · matrix(i,j)
  std::vector<Phase> col_phases;
};

Dephased dephase(const PHMatrix& h);

/// Entrywise H_ik · conj(H_jk).
Eigen::VectorXcd row_quotient(const PHMatrix& h, std::size_t i, std::size_t j);

struct ButsonForm {
  std::int64_t order = 1;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> exponents;  ///< row-major, each in [0, order)

  std::int64_t exponent(std::size_t i, std::size_t j) const { return exponents[i * cols + j]; }
  PHMatrix to_matrix(std::string label = {}) const;
};

/// Smallest l <= l_max with every entry within `tol` of an l-th root of unity.
std::optional<ButsonForm> detect_butson(const PHMatrix& h, std::int64_t l_max, double tol = 1e-9);

/// (H⊗K)_{ia,jb} = H_ij K_ab, composite index i·rows(K) + a.
PHMatrix tensor_product(const PHMatrix& h, const PHMatrix& k);

struct Equivalence {
  std::vector<std::size_t> row_perm;  ///< row i of H lands on row row_perm[i]
  std::vector<std::size_t> col_perm;
  std::vector<Phase> row_phases;
  std::vector<Phase> col_phases;

  static Equivalence identity(std::size_t rows, std::size_t cols);
};

/// H'_{σ(i)τ(j)} = a_i b_j H_ij.
PHMatrix apply_equivalence(const PHMatrix& h, const Equivalence& eq);

/// Random permutations; phases are random roots of unity of order `root_order`
/// or, when root_order == 0, random float turns.
template <class Rng>
Equivalence random_equivalence(std::size_t rows, std::size_t cols, Rng& rng, std::int64_t root_order = 0) {
  Equivalence eq = Equivalence::identity(rows, cols);
  std::shuffle(eq.row_perm.begin(), eq.row_perm.end(), rng);
  std::shuffle(eq.col_perm.begin(), eq.col_perm.end(), rng);
  auto draw = [&]() {
    if (root_order > 0) {
      std::uniform_int_distribution<std::int64_t> e(0, root_order - 1);
      return Phase::butson(e(rng), root_order);
    }
    std::uniform_real_distribution<double> t(0.0, 1.0);
    return Phase::turns(t(rng));
  };
  for (auto& p : eq.row_phases) p = draw();
  for (auto& p : eq.col_phases) p = draw();
  return eq;
}

}  // namespace hadlab
