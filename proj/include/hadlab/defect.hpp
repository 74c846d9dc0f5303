#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hadlab/constructors.hpp"
#include "hadlab/linalg.hpp"
#include "hadlab/matrix.hpp"

namespace hadlab {

enum class DefectMethod { direct, extension, split, master, closed_form, exact };

std::string to_string(DefectMethod method);
std::optional<DefectMethod> parse_defect_method(const std::string& name);

struct DefectOptions {
  double tol = 1e-9;
  double confidence = 1e6;  ///< gap ratios below this flag the result as ambiguous
};

struct SplitBreakdown {
  std::size_t dim_kernel = 0;  ///< dim K
  std::size_t dim_image = 0;   ///< dim I
};

struct DefectReport {
  std::size_t defect = 0;
  DefectMethod method = DefectMethod::direct;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t unknowns = 0;
  std::size_t rank = 0;
  double smallest_kept = 0.0;
  double largest_dropped = 0.0;
  double gap_ratio = 0.0;
  double tolerance = 0.0;
  bool ambiguous = false;
  std::optional<SplitBreakdown> split;
};

/// Real rows of Σ_k H_ik conj(H_jk)(A_ik - A_jk) = 0 for i < j; unknown A_ik
/// sits in column i·N + k.
RealLinearSystem tangent_system(const PHMatrix& h);

/// MN - rank(tangent_system(H)).
DefectReport defect(const PHMatrix& h, const DefectOptions& options = {});

/// K ∈ √N·U_N whose first M rows are H. The remaining rows span the orthogonal
/// complement; a seed mixes them by a random unitary (a different completion).
Eigen::MatrixXcd unitary_completion(const PHMatrix& h, std::optional<std::uint64_t> seed = std::nullopt);

/// Solution dimension of {E = (X Y) : X = X*, Im((EK)_ij conj(H_ij)) = 0}.
DefectReport defect_via_extension(const PHMatrix& h, const DefectOptions& options = {},
                                  std::optional<std::uint64_t> completion_seed = std::nullopt);

/// dim K + dim I for F_{S,G}. Columns of P = A F^t run over U = S - S, and
/// P_{i,g} = P_{i+g,g} is imposed when i and i+g both lie in S.
DefectReport defect_split_truncated_fourier(const std::vector<std::vector<std::int64_t>>& rows,
                                            const std::vector<std::int64_t>& orders, const DefectOptions& options = {});
DefectReport defect_split_truncated_fourier(const std::vector<std::int64_t>& rows, std::int64_t n,
                                            const DefectOptions& options = {});

/// Real solution dimension of conj(B) = (1/N) B L, (BR)_{i,(i,j)} = (BR)_{j,(i,j)}
/// with L_ij = f(1/(λ_iλ_j)), R_{s,(i,j)} = f(λ_i/(λ_sλ_j)) on lifted angles.
DefectReport defect_master(const MasterSpec& spec, const DefectOptions& options = {});

/// Σ_{g∈G} [G : <g>].
std::int64_t fourier_defect_formula(const std::vector<std::int64_t>& orders);
/// N Π_i (1 + a_i - a_i/p_i) for N = Π p_i^{a_i}.
std::int64_t fourier_defect_product_form(std::int64_t n);
/// Number of entries of F_G equal to 1.
std::int64_t count_one_entries(const std::vector<std::int64_t>& orders);
/// M(M+1)/2 + M(N-M).
std::int64_t real_defect_formula(std::int64_t m, std::int64_t n);

/// MN - rank over Q(ζ_l) for Butson inputs with l <= max_order and
/// M, N <= max_size; nullopt when out of range.
std::optional<std::size_t> exact_defect(const PHMatrix& h, std::int64_t max_order = 12, std::size_t max_size = 8);

enum class IsolationStatus { certified_isolated, undetermined };
std::string to_string(IsolationStatus status);

struct IsolationCertificate {
  IsolationStatus status = IsolationStatus::undetermined;
  std::size_t minimal_defect = 0;  ///< M + N - 1
  DefectReport report;
};

/// Certified iff the dephased defect equals M+N-1 with a confident gap.
IsolationCertificate isolation_certificate(const PHMatrix& h, const DefectOptions& options = {});

struct TruncationRow {
  std::size_t rows = 0;
  std::size_t defect = 0;
  std::size_t minimal_defect = 0;
  bool minimal = false;
  double gap_ratio = 0.0;
  bool ambiguous = false;
  std::optional<std::size_t> exact;  ///< exact-arithmetic value when in range
};

/// defect(F_{M,p}) for S = {0..M-1}; report only.
std::vector<TruncationRow> truncation_probe(std::int64_t p, const std::vector<std::size_t>& sizes,
                                            const DefectOptions& options = {});

}  // namespace hadlab
