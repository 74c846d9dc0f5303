#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hadlab/defect.hpp"
#include "hadlab/matrix.hpp"

namespace hadlab {

struct ExactTerms {
  std::int64_t order = 1;               ///< l
  std::vector<std::int64_t> exponents;  ///< term k = exp(2πi e_k / l)
};

struct TermMultiset {
  std::vector<cdouble> terms;
  std::optional<ExactTerms> exact;
};

/// Terms H_ik conj(H_jk), k = 0..N-1; i != j.
TermMultiset term_multiset(const PHMatrix& h, std::size_t i, std::size_t j);

struct Cycle {
  std::int64_t prime = 2;
  cdouble rotation{1.0, 0.0};
  std::vector<std::size_t> members;  ///< members[m] ≈ rotation · ζ_p^m
};

struct CycleDecomposition {
  std::vector<Cycle> cycles;
  std::string label;  ///< cycle lengths, descending, e.g. "3+2+2"
};

enum class SearchStatus { found, none, inconclusive };
std::string to_string(SearchStatus status);

struct DecomposeResult {
  SearchStatus status = SearchStatus::none;
  std::optional<CycleDecomposition> decomposition;
  std::uint64_t nodes = 0;
};

inline constexpr double kCycleTol = 1e-8;
inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

/// Exact cover of the terms by rotated full prime cycles. Cycle-length
/// multisets are tried in descending lexicographic order, so the returned
/// label is the largest feasible one. Throws InvalidInput when the terms do
/// not sum to zero within tol·N.
DecomposeResult cycle_decompose(const TermMultiset& terms, double tol = kCycleTol,
                                std::uint64_t budget = kDefaultNodeBudget);
DecomposeResult cycle_decompose(const std::vector<cdouble>& terms, double tol = kCycleTol,
                                std::uint64_t budget = kDefaultNodeBudget);

struct IntegerCycle {
  std::int64_t prime = 2;
  std::int64_t offset = 0;  ///< cycle {offset + t·l/p : t}
  std::int64_t coefficient = 0;
};

enum class IntegerDecomposeStatus { non_vanishing, nonnegative, integer };
std::string to_string(IntegerDecomposeStatus status);

struct IntegerDecomposition {
  IntegerDecomposeStatus status = IntegerDecomposeStatus::non_vanishing;
  std::vector<IntegerCycle> cycles;  ///< nonzero coefficients only
};

/// For exponents over Z_l: exact vanishing test, then a decomposition into
/// rotated prime cycles (p | l), with nonnegative coefficients when one exists
/// and integer coefficients otherwise. The result reproduces the multiplicity
/// vector of the input exactly.
IntegerDecomposition cycle_decompose_integer(const std::vector<std::int64_t>& exponents, std::int64_t l);

/// Multiplicities Σ_c coefficient · indicator(cycle), indexed by exponent 0..l-1.
std::vector<std::int64_t> integer_reconstruction(const IntegerDecomposition& d, std::int64_t l);

/// N ∈ p_1 N + ... + p_k N for the distinct primes p_i | l.
bool lam_leung_length_admissible(std::int64_t n, std::int64_t l);

struct PairLabel {
  std::size_t i = 0;
  std::size_t j = 0;
  SearchStatus status = SearchStatus::none;
  std::string label;  ///< "irregular" when no decomposition, "inconclusive" on budget exhaustion
};

/// One entry per pair i < j.
std::vector<PairLabel> cycle_structure_profile(const PHMatrix& h, double tol = kCycleTol,
                                               std::uint64_t budget = kDefaultNodeBudget);

enum class Regularity { regular, irregular, inconclusive };
std::string to_string(Regularity r);

Regularity regularity(const std::vector<PairLabel>& profile);
Regularity regularity(const PHMatrix& h, double tol = kCycleTol, std::uint64_t budget = kDefaultNodeBudget);
bool is_regular(const PHMatrix& h, double tol = kCycleTol, std::uint64_t budget = kDefaultNodeBudget);

struct WeakIsolationReport {
  Regularity regularity = Regularity::inconclusive;
  IsolationCertificate isolation;
  std::optional<std::int64_t> butson_order;
  bool counterexample_candidate = false;  ///< regular, certified isolated, not Butson
};

/// Runs on the dephased matrix. Report only.
WeakIsolationReport weak_isolation_probe(const PHMatrix& h, double tol = kCycleTol,
                                         std::int64_t butson_l_max = 120);

}  // namespace hadlab
