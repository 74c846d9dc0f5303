#include "hadlab/mcnulty_weigert.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "hadlab/constructors.hpp"
#include "hadlab/cyclotomic.hpp"

namespace hadlab {

namespace {

void require_odd_prime(std::int64_t q, const char* op) {
  if (q < 3 || !is_prime(q)) throw InvalidInput(std::string(op) + ": q must be an odd prime");
}

std::int64_t mod(std::int64_t a, std::int64_t q) {
  const std::int64_t r = a % q;
  return r < 0 ? r + q : r;
}

std::int64_t pow_mod(std::int64_t base, std::int64_t e, std::int64_t q) {
  __int128 result = 1, b = mod(base, q);
  while (e > 0) {
    if (e & 1) result = result * b % q;
    b = b * b % q;
    e >>= 1;
  }
  return static_cast<std::int64_t>(result);
}

bool consecutive_with_parity(std::vector<std::int64_t> v, int parity) {
  std::sort(v.begin(), v.end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] % 2 != parity) return false;
    if (i > 0 && v[i] - v[i - 1] != 2) return false;
  }
  return true;
}

}  // namespace

int legendre_symbol(std::int64_t s, std::int64_t q) {
  require_odd_prime(q, "legendre_symbol");
  const std::int64_t r = mod(s, q);
  if (r == 0) return 0;
  return pow_mod(r, (q - 1) / 2, q) == 1 ? 1 : -1;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t q) {
  std::int64_t r0 = q, r1 = mod(a, q), s0 = 0, s1 = 1;
  if (r1 == 0) throw InvalidInput("mod_inverse: zero has no inverse");
  while (r1 != 0) {
    const std::int64_t t = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - t * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - t * s1);
  }
  if (r0 != 1) throw InvalidInput("mod_inverse: not invertible");
  return mod(s0, q);
}

Phase gauss_delta(std::int64_t q) {
  require_odd_prime(q, "gauss_delta");
  return q % 4 == 1 ? Phase::one() : Phase::butson(1, 4);
}

std::vector<std::int64_t> quadratic_diag(std::int64_t q) {
  require_odd_prime(q, "quadratic_diag");
  std::vector<std::int64_t> out;
  for (std::int64_t c = 0; c < q; ++c) out.push_back(mod(c * (c - 1) / 2, q));
  return out;
}

std::vector<PHMatrix> mub_unitaries(std::int64_t q) {
  const auto d = quadratic_diag(q);
  const auto uq = static_cast<std::size_t>(q);
  std::vector<PHMatrix> out;
  for (std::int64_t c = 0; c < q; ++c) {
    std::vector<Phase> e;
    e.reserve(uq * uq);
    for (std::int64_t a = 0; a < q; ++a)
      for (std::int64_t b = 0; b < q; ++b) e.push_back(Phase::butson(c * d[static_cast<std::size_t>(a)] + a * b, q));
    out.emplace_back(uq, uq, std::move(e), "D^" + std::to_string(c) + " F_" + std::to_string(q));
  }
  return out;
}

ClosedVector mw_vector_closed(std::int64_t q, std::int64_t k) {
  require_odd_prime(q, "mw_vector_closed");
  if (mod(k, q) == 0) throw InvalidInput("mw_vector_closed: k must be nonzero mod q");
  k = mod(k, q);
  const std::int64_t inv2 = mod_inverse(2, q), invk = mod_inverse(k, q);
  const int sign = legendre_symbol(k * inv2, q);
  Phase prefactor = gauss_delta(q) * Phase::butson(mod(((q * q - 1) / 8) % q * k, q), q);
  if (sign < 0) prefactor = -prefactor;
  ClosedVector out{q, k, {}};
  for (std::int64_t i = 0; i < q; ++i) {
    const std::int64_t x = i * invk % q;
    out.values.push_back(prefactor * Phase::butson(-k * (x * (x - 1) / 2 % q), q));
  }
  return out;
}

DirectVector mw_vector_direct(std::int64_t q, std::int64_t k) {
  require_odd_prime(q, "mw_vector_direct");
  if (mod(k, q) == 0) throw InvalidInput("mw_vector_direct: k must be nonzero mod q");
  const auto d = quadratic_diag(q);
  const double scale = 1.0 / std::sqrt(static_cast<double>(q));
  auto root = [q](std::int64_t e) { return std::polar(1.0, kTwoPi * static_cast<double>(mod(e, q)) / static_cast<double>(q)); };
  const auto nq = static_cast<Eigen::Index>(q);
  Eigen::MatrixXcd g(nq, nq);
  for (std::int64_t a = 0; a < q; ++a)
    for (std::int64_t b = 0; b < q; ++b) {
      cdouble s = 0.0;
      for (std::int64_t c = 0; c < q; ++c) s += root(-c * a + k * d[static_cast<std::size_t>(c)] + c * b);
      g(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = scale * s;
    }
  DirectVector out{q, mod(k, q), {}, 0.0};
  for (Eigen::Index b = 0; b < nq; ++b) out.values.push_back(g(0, b));
  for (Eigen::Index a = 0; a < nq; ++a)
    for (Eigen::Index b = 0; b < nq; ++b)
      out.circulant_residual = std::max(out.circulant_residual, std::abs(g(a, b) - g(0, mod(b - a, q))));
  return out;
}

PHMatrix mw_construct(const MWSpec& spec) {
  const std::int64_t q = spec.q;
  require_odd_prime(q, "mw_construct");
  const PHMatrix& k = spec.base;
  if (spec.s.size() != k.rows()) throw InvalidInput("mw_construct: |S| must equal rows(K)");
  if (spec.t.size() != k.cols()) throw InvalidInput("mw_construct: |T| must equal cols(K)");
  std::vector<std::int64_t> s, t;
  for (auto x : spec.s) s.push_back(mod(x, q));
  for (auto x : spec.t) t.push_back(mod(x, q));
  const std::set<std::int64_t> ss(s.begin(), s.end()), ts(t.begin(), t.end());
  if (ss.size() != s.size() || ts.size() != t.size()) throw InvalidInput("mw_construct: repeated offsets");
  for (auto x : s)
    if (ts.count(x)) throw InvalidInput("mw_construct: S and T must be disjoint");
  require_hadamard(k, "mw_construct");

  std::vector<std::vector<Phase>> v(static_cast<std::size_t>(q));
  for (std::int64_t d = 1; d < q; ++d) v[static_cast<std::size_t>(d)] = mw_vector_closed(q, d).values;

  const std::size_t m = k.rows(), n = k.cols(), uq = static_cast<std::size_t>(q);
  const std::size_t rows = m * uq, cols = n * uq;
  std::vector<Phase> entries(rows * cols);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t a = 0; a < uq; ++a)
      for (std::size_t j = 0; j < n; ++j) {
        const auto& vec = v[static_cast<std::size_t>(mod(t[j] - s[i], q))];
        for (std::size_t b = 0; b < uq; ++b)
          entries[(i * uq + a) * cols + j * uq + b] =
              k(i, j) * vec[static_cast<std::size_t>(mod(static_cast<std::int64_t>(b) - static_cast<std::int64_t>(a), q))];
      }
  return PHMatrix(rows, cols, std::move(entries), "MW(" + k.label() + ",q=" + std::to_string(q) + ")");
}

ArithmeticIsolationRow arithmetic_isolation_probe(const MWSpec& spec, const DefectOptions& options) {
  ArithmeticIsolationRow row;
  row.p = static_cast<std::int64_t>(spec.base.cols());
  row.q = spec.q;
  row.s_size = spec.s.size();
  row.t_size = spec.t.size();
  std::vector<std::int64_t> s, t;
  for (auto x : spec.s) s.push_back(mod(x, spec.q));
  for (auto x : spec.t) t.push_back(mod(x, spec.q));
  if (!consecutive_with_parity(s, 1)) row.warnings.push_back("S is not a run of consecutive odd numbers");
  if (!consecutive_with_parity(t, 0)) row.warnings.push_back("T is not a run of consecutive even numbers");
  const PHMatrix h = mw_construct(spec);
  row.report = defect(h, options);
  row.minimal_defect = h.rows() + h.cols() - 1;
  row.minimal = row.report.defect == row.minimal_defect && !row.report.ambiguous;
  return row;
}

}  // namespace hadlab
