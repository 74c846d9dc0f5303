#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hadlab/defect.hpp"
#include "hadlab/matrix.hpp"

namespace hadlab {

/// Euler's criterion; q must be an odd prime.
int legendre_symbol(std::int64_t s, std::int64_t q);

/// Inverse of a modulo a prime q (extended Euclid).
std::int64_t mod_inverse(std::int64_t a, std::int64_t q);

/// 1 if q ≡ 1 (mod 4), i if q ≡ 3 (mod 4).
Phase gauss_delta(std::int64_t q);

/// Exponents c(c-1)/2 mod q, c = 0..q-1, of D = diag(w^{c(c-1)/2}).
std::vector<std::int64_t> quadratic_diag(std::int64_t q);

/// {F_q, D F_q, ..., D^{q-1} F_q}.
std::vector<PHMatrix> mub_unitaries(std::int64_t q);

struct ClosedVector {
  std::int64_t q = 3;
  std::int64_t k = 1;
  std::vector<Phase> values;  ///< exact, Butson order dividing 4q
};

struct DirectVector {
  std::int64_t q = 3;
  std::int64_t k = 1;
  std::vector<cdouble> values;
  double circulant_residual = 0.0;  ///< max |G_ab - G_{0,b-a}|
};

/// V^k_i = δ_q · (k/2 | q) · w^{k(q²-1)/8} · w^{-k·x(x-1)/2}, x = i/k in Z_q.
ClosedVector mw_vector_closed(std::int64_t q, std::int64_t k);

/// First row of G_k = (1/√q) F_q* D^k F_q, i.e. V^k_i = (1/√q) Σ_c w^{k c(c-1)/2 + ic}.
DirectVector mw_vector_direct(std::int64_t q, std::int64_t k);

struct MWSpec {
  std::int64_t q = 3;
  std::vector<std::int64_t> s;  ///< row offsets, one per row of K
  std::vector<std::int64_t> t;  ///< column offsets, one per column of K
  PHMatrix base;                ///< K
};

/// H_{ia,jb} = K_ij V^{t_j - s_i}_{b-a}, composite index i·q + a.
PHMatrix mw_construct(const MWSpec& spec);

struct ArithmeticIsolationRow {
  std::int64_t p = 0;  ///< columns of K
  std::int64_t q = 0;
  std::size_t s_size = 0;
  std::size_t t_size = 0;
  DefectReport report;
  std::size_t minimal_defect = 0;
  bool minimal = false;
  std::vector<std::string> warnings;
};

/// Builds mw_construct(spec) and reports its defect; report only.
ArithmeticIsolationRow arithmetic_isolation_probe(const MWSpec& spec, const DefectOptions& options = {});

}  // namespace hadlab
