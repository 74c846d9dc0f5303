#include <doctest.h>

#include <random>

#include "hadlab/constructors.hpp"
#include "hadlab/defect.hpp"
#include "hadlab/mcnulty_weigert.hpp"
#include "support.hpp"

using namespace hadlab;

namespace {

const std::vector<std::int64_t> kPrimes = {3, 5, 7, 11, 13};

std::int64_t md(std::int64_t a, std::int64_t q) { return ((a % q) + q) % q; }

std::int64_t inv(std::int64_t a, std::int64_t q) {
  for (std::int64_t x = 1; x < q; ++x)
    if (md(a * x, q) == 1) return x;
  return 0;
}

cdouble w(std::int64_t e, std::int64_t q) { return std::polar(1.0, kTwoPi * static_cast<double>(md(e, q)) / static_cast<double>(q)); }

// First row of (1/√q) F_q^* D^k F_q with D = diag(w^{c(c-1)/2}), by matrix products.
std::vector<cdouble> first_row_oracle(std::int64_t q, std::int64_t k) {
  const auto n = static_cast<Eigen::Index>(q);
  Eigen::MatrixXcd f(n, n), d = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) f(a, b) = w(a * b, q);
    d(a, a) = w(k * (a * (a - 1) / 2), q);
  }
  const Eigen::MatrixXcd g = f.adjoint() * d * f / std::sqrt(static_cast<double>(q));
  std::vector<cdouble> out;
  for (Eigen::Index b = 0; b < n; ++b) out.push_back(g(0, b));
  return out;
}

cdouble delta(std::int64_t q) { return q % 4 == 1 ? cdouble(1.0, 0.0) : cdouble(0.0, 1.0); }

// The displayed closed form read literally: exponent -(i/k)(i/k - 1)/2 without a factor k.
std::vector<cdouble> literal_display(std::int64_t q, std::int64_t k) {
  std::vector<cdouble> out;
  const double sign = oracle::legendre(k * inv(2, q), q);
  for (std::int64_t i = 0; i < q; ++i) {
    const std::int64_t x = md(i * inv(k, q), q);
    out.push_back(delta(q) * sign * w(k * ((q * q - 1) / 8), q) * w(-(x * (x - 1) / 2), q));
  }
  return out;
}

double distance(const std::vector<Phase>& a, const std::vector<cdouble>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i].value() - b[i]));
  return worst;
}

double distance(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

TEST_CASE("legendre_symbol") {
  CHECK(legendre_symbol(0, 5) == 0);
  CHECK(legendre_symbol(2, 7) == 1);
  CHECK(legendre_symbol(3, 7) == -1);
  for (auto q : kPrimes)
    for (std::int64_t s = -q; s < 2 * q; ++s) {
      CHECK(legendre_symbol(s, q) == oracle::legendre(s, q));
      for (std::int64_t t = 1; t < q; ++t)
        if (md(s, q) != 0) CHECK(legendre_symbol(s, q) * legendre_symbol(t, q) == legendre_symbol(s * t, q));
    }
  CHECK_THROWS_AS(legendre_symbol(1, 9), InvalidInput);
  CHECK_THROWS_AS(legendre_symbol(1, 2), InvalidInput);
}

TEST_CASE("modular helpers") {
  for (auto q : kPrimes)
    for (std::int64_t a = 1; a < q; ++a) CHECK(md(a * mod_inverse(a, q), q) == 1);
  CHECK(gauss_delta(5).distance(Phase::one()) < 1e-15);
  CHECK(gauss_delta(7).distance(Phase::butson(1, 4)) < 1e-15);
  CHECK(gauss_delta(13).distance(Phase::one()) < 1e-15);
  CHECK(quadratic_diag(3) == std::vector<std::int64_t>{0, 0, 1});
  const auto d5 = quadratic_diag(5);
  const std::vector<std::int64_t> expect5 = {0, 0, 1, 3, 1};
  for (std::size_t c = 0; c < 5; ++c) CHECK(md(d5[c], 5) == expect5[c]);
}

TEST_CASE("mub_unitaries are mutually unbiased") {
  for (std::int64_t q : {3, 5, 7}) {
    const auto e = mub_unitaries(q);
    REQUIRE(e.size() == static_cast<std::size_t>(q));
    for (std::size_t a = 0; a < e.size(); ++a)
      for (std::size_t b = 0; b < e.size(); ++b) {
        const Eigen::MatrixXcd g = e[a].to_complex().adjoint() * e[b].to_complex() / std::sqrt(static_cast<double>(q));
        if (a == b) {
          CHECK((g - std::sqrt(static_cast<double>(q)) * Eigen::MatrixXcd::Identity(q, q)).norm() < 1e-10);
        } else {
          CHECK((g.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-10);
        }
      }
  }
}

TEST_CASE("direct vectors match the matrix-product oracle and are circulant") {
  for (auto q : kPrimes)
    for (std::int64_t k = 1; k < q; ++k) {
      const auto d = mw_vector_direct(q, k);
      CHECK(d.circulant_residual < 1e-10);
      CHECK(distance(d.values, first_row_oracle(q, k)) < 1e-10);
      for (auto z : d.values) CHECK(std::abs(std::abs(z) - 1.0) < 1e-10);
    }
  CHECK(mw_vector_direct(3, 1).values.size() == 3);
}

TEST_CASE("closed form equals direct sum for every k") {
  int count = 0;
  for (auto q : kPrimes)
    for (std::int64_t k = 1; k < q; ++k) {
      const auto c = mw_vector_closed(q, k);
      for (const auto& v : c.values) {
        CHECK(v.is_exact());
        CHECK(std::abs(std::abs(v.value()) - 1.0) < 1e-15);
      }
      CHECK(distance(c.values, mw_vector_direct(q, k).values) < 1e-10);
      ++count;
    }
  CHECK(count == 2 + 4 + 6 + 10 + 12);
  CHECK(distance(mw_vector_closed(3, 1).values, mw_vector_direct(3, 1).values) < 1e-12);
  CHECK_THROWS_AS(mw_vector_closed(5, 0), InvalidInput);
  CHECK_THROWS_AS(mw_vector_closed(2, 1), InvalidInput);
}

TEST_CASE("the literal displayed exponent fails for k != 1") {
  for (auto q : kPrimes) {
    CHECK(distance(literal_display(q, 1), mw_vector_direct(q, 1).values) < 1e-10);
    for (std::int64_t k = 2; k < q; ++k) CHECK(distance(literal_display(q, k), mw_vector_direct(q, k).values) > 1e-3);
  }
}

TEST_CASE("mw_construct") {
  const PHMatrix h = mw_construct({5, {1, 3}, {0, 2}, fourier_cyclic(2)});
  CHECK(h.rows() == 10);
  CHECK(h.cols() == 10);
  CHECK(check_partial_hadamard(h, 1e-9).is_hadamard);
  CHECK(check_partial_hadamard(mw_construct({7, {1, 3}, {0, 2}, fourier_cyclic(2)}), 1e-9).is_hadamard);
  CHECK_THROWS_AS(mw_construct({5, {1}, {0, 2}, fourier_cyclic(2)}), InvalidInput);
  CHECK_THROWS_AS(mw_construct({4, {1, 3}, {0, 2}, fourier_cyclic(2)}), InvalidInput);

  // Block (i,j), entry (a,b) reads V^{t_j - s_i} at (b - a) mod q.
  const auto v = mw_vector_closed(5, md(0 - 3, 5)).values;
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = 0; b < 5; ++b) {
      const auto idx = static_cast<std::size_t>(md(static_cast<std::int64_t>(b) - static_cast<std::int64_t>(a), 5));
      CHECK(std::abs(h.value(5 + a, b) - fourier_cyclic(2).value(1, 0) * v[idx].value()) < 1e-12);
    }
}

TEST_CASE("mw_construct randomized draws verify") {
  std::mt19937_64 rng(44);
  const std::vector<PHMatrix> bases = {fourier_cyclic(2), fourier_cyclic(3),
                                       truncated_fourier(std::vector<std::int64_t>{0, 1}, 3),
                                       truncated_fourier(std::vector<std::int64_t>{0, 1, 2}, 5)};
  int built = 0;
  for (int trial = 0; built < 20 && trial < 1000; ++trial) {
    const PHMatrix& k = bases[rng() % bases.size()];
    const std::int64_t q = kPrimes[rng() % kPrimes.size()];
    std::vector<std::int64_t> s, t;
    for (std::size_t i = 0; i < k.rows(); ++i) s.push_back(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q)));
    for (std::size_t j = 0; j < k.cols(); ++j) t.push_back(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q)));
    try {
      const PHMatrix h = mw_construct({q, s, t, k});
      CHECK(check_partial_hadamard(h, 1e-9).is_hadamard);
      ++built;
    } catch (const InvalidInput&) {
      // Offset sets that violate the construction's preconditions are skipped.
    }
  }
  CHECK(built == 20);
}

TEST_CASE("arithmetic isolation probe") {
  const auto r = arithmetic_isolation_probe({5, {1, 3}, {0, 2}, fourier_cyclic(2)});
  CHECK(r.report.rows == 10);
  CHECK(r.report.defect >= 19);
  CHECK(r.minimal_defect == 19);
  CHECK(r.warnings.empty());
  CHECK(r.report.gap_ratio > 1e6);
  const auto big = arithmetic_isolation_probe({7, {1, 3, 5}, {0, 2, 4}, fourier_cyclic(3)});
  CHECK(big.report.rows == 21);
  CHECK(big.report.cols == 21);
  const auto warn = arithmetic_isolation_probe({7, {1, 5}, {0, 2}, fourier_cyclic(2)});
  CHECK_FALSE(warn.warnings.empty());
  CHECK(warn.report.rows == 14);
}
