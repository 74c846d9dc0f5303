#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace hadlab {

/// Coefficients of Φ_l, constant term first.
std::vector<std::int64_t> cyclotomic_polynomial(std::int64_t l);

/// Euler φ(l) = deg Φ_l.
std::int64_t euler_phi(std::int64_t l);

/// Distinct primes dividing n, ascending.
std::vector<std::int64_t> prime_divisors(std::int64_t n);

bool is_prime(std::int64_t n);

/// Σ_k ζ^{e_k} == 0 exactly, ζ = e^{2πi/l} (reduction mod Φ_l over Z).
bool vanishes_exactly(const std::vector<std::int64_t>& exponents, std::int64_t l);

/// Residue of Σ_k c_k x^k mod Φ_l (the input indexed by exponent 0..l-1).
std::vector<std::int64_t> reduce_mod_cyclotomic(const std::vector<std::int64_t>& coefficients, std::int64_t l);

/// Integer combination Σ c · ζ^e of l-th roots of unity.
using CycloInt = std::vector<std::pair<std::int64_t, std::int64_t>>;  // (exponent, coefficient)

/// Rank over Q(ζ_l) by exact elimination with rational coefficients.
std::size_t exact_rank(const std::vector<std::vector<CycloInt>>& matrix, std::int64_t l);

}  // namespace hadlab
