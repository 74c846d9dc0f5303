#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hadlab/matrix.hpp"

namespace hadlab {

/// F_N = (w^{ij}), w = e^{2πi/N}; Butson order N.
PHMatrix fourier_cyclic(std::int64_t n);

/// F_G = F_{N_1} ⊗ ... ⊗ F_{N_s}; Butson order lcm(orders).
PHMatrix fourier_group(const std::vector<std::int64_t>& orders);

/// Rows of F_G indexed by the given group elements, in the given order.
PHMatrix truncated_fourier(const std::vector<std::vector<std::int64_t>>& rows, const std::vector<std::int64_t>& orders);
/// Cyclic shorthand: rows S ⊂ Z_N.
PHMatrix truncated_fourier(const std::vector<std::int64_t>& rows, std::int64_t n);

struct DitaParams {
  PHMatrix outer;   ///< H
  PHMatrix inner;   ///< K
  PHMatrix params;  ///< Q, rows(H) x cols(K)
};

/// (H ⊗_Q K)_{ia,jb} = Q_ib H_ij K_ab.
PHMatrix dita_deformation(const DitaParams& params);

/// Rows (1,1,1,1), (1,-1,1,-1), (1,q,-1,-q), (1,-q,-1,q).
PHMatrix f22q(const Phase& q);

/// 7x7 Petrescu family. The sixth-root choice for w does not give orthogonal
/// rows; w = e^{2πi/3} does, for every q.
PHMatrix petrescu(const Phase& q);

/// H_ij = λ_i^{n_j}, powers taken with the principal turn in [0, 1).
struct MasterSpec {
  std::vector<Phase> eigenphases;
  std::vector<double> exponents;
};

/// Not verified; the caller decides.
PHMatrix master_matrix(const MasterSpec& spec);

/// f evaluated on a lifted angle: Σ_k exp(i n_k θ).
cdouble master_function(const MasterSpec& spec, double angle);

/// Principal angle of λ_i in [0, 2π).
double master_angle(const MasterSpec& spec, std::size_t i);

struct MasterDita {
  PHMatrix dita;
  MasterSpec spec;
  PHMatrix master;
  double max_deviation = 0.0;  ///< max |dita - master| entrywise
};

/// F_N ⊗_Q F_M with q = e^{2πi/MNk}, Q_ib = q^{i(M p_b + b)}, alongside the
/// master data λ_{ia} = q^i w^a, n_{jb} = Mk(N r_j + j) + M p_b + b.
/// The two matrices coincide when every p_b and r_j is an integer.
MasterDita master_dita(std::int64_t n, std::int64_t m, std::int64_t k, const std::vector<double>& p,
                       const std::vector<double>& r);

/// Master data reproducing f22q(q) entrywise. Exists when q = e^{2πiP/Q}
/// with 4 | Q; nullopt otherwise (including non-exact q).
std::optional<MasterSpec> f22q_master_spec(const Phase& q);

/// λ_i = w^i, n_j = j.
MasterSpec fourier_master_spec(std::int64_t n);

}  // namespace hadlab
