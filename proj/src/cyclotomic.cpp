#include "hadlab/cyclotomic.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>

#include "hadlab/phase.hpp"

namespace hadlab {

namespace {

using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;

void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// p / d for monic d, exact division expected.
ZPoly divide_exact(ZPoly p, const ZPoly& d) {
  trim(p);
  const std::size_t dd = d.size() - 1;
  if (p.size() < d.size()) return {};
  ZPoly q(p.size() - dd, 0);
  for (std::size_t k = p.size(); k-- > dd;) {
    const mpz_class c = p[k];
    if (c == 0) continue;
    q[k - dd] = c;
    for (std::size_t t = 0; t <= dd; ++t) p[k - dd + t] -= c * d[t];
  }
  return q;
}

ZPoly cyclo_z(std::int64_t l) {
  if (l < 1) throw InvalidInput("cyclotomic polynomial needs l >= 1");
  ZPoly p(static_cast<std::size_t>(l) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(l)] = 1;
  for (std::int64_t d = 1; d < l; ++d)
    if (l % d == 0) p = divide_exact(p, cyclo_z(d));
  trim(p);
  return p;
}

// Remainder of p modulo monic d.
template <class T>
std::vector<T> remainder(std::vector<T> p, const ZPoly& d) {
  const std::size_t dd = d.size() - 1;
  for (std::size_t k = p.size(); k-- > dd;) {
    const T c = p[k];
    if (c == 0) continue;
    for (std::size_t t = 0; t <= dd; ++t) p[k - dd + t] -= c * T(d[t]);
  }
  p.resize(dd, T(0));
  return p;
}

// Arithmetic in Q[x]/Φ_l.
class Field {
 public:
  explicit Field(std::int64_t l) : l_(l), mod_(cyclo_z(l)), deg_(mod_.size() - 1) {
    powers_.reserve(static_cast<std::size_t>(l));
    for (std::int64_t e = 0; e < l; ++e) {
      QPoly mono(static_cast<std::size_t>(e) + 1, 0);
      mono[static_cast<std::size_t>(e)] = 1;
      powers_.push_back(remainder(mono, mod_));
    }
  }

  std::size_t degree() const { return deg_; }

  QPoly from(const CycloInt& c) const {
    QPoly out(deg_, 0);
    for (auto [e, k] : c) {
      std::int64_t r = e % l_;
      if (r < 0) r += l_;
      const QPoly& pw = powers_[static_cast<std::size_t>(r)];
      for (std::size_t t = 0; t < deg_; ++t) out[t] += pw[t] * k;
    }
    return out;
  }

  static bool is_zero(const QPoly& a) {
    return std::all_of(a.begin(), a.end(), [](const mpq_class& c) { return c == 0; });
  }

  QPoly mul(const QPoly& a, const QPoly& b) const {
    QPoly prod(2 * deg_, 0);
    for (std::size_t i = 0; i < deg_; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < deg_; ++j) prod[i + j] += a[i] * b[j];
    }
    return remainder(prod, mod_);
  }

  QPoly sub(const QPoly& a, const QPoly& b) const {
    QPoly out(deg_);
    for (std::size_t t = 0; t < deg_; ++t) out[t] = a[t] - b[t];
    return out;
  }

  // Solve (multiplication-by-a matrix) · x = e_0.
  QPoly inverse(const QPoly& a) const {
    const std::size_t d = deg_;
    std::vector<QPoly> m(d, QPoly(d + 1, 0));
    QPoly basis(d, 0);
    for (std::size_t j = 0; j < d; ++j) {
      std::fill(basis.begin(), basis.end(), 0);
      basis[j] = 1;
      const QPoly col = mul(a, basis);
      for (std::size_t i = 0; i < d; ++i) m[i][j] = col[i];
    }
    m[0][d] = 1;
    for (std::size_t c = 0; c < d; ++c) {
      std::size_t piv = c;
      while (piv < d && m[piv][c] == 0) ++piv;
      if (piv == d) throw std::logic_error("cyclotomic inverse of zero");
      std::swap(m[piv], m[c]);
      const mpq_class inv = 1 / m[c][c];
      for (std::size_t t = c; t <= d; ++t) m[c][t] *= inv;
      for (std::size_t r = 0; r < d; ++r) {
        if (r == c || m[r][c] == 0) continue;
        const mpq_class f = m[r][c];
        for (std::size_t t = c; t <= d; ++t) m[r][t] -= f * m[c][t];
      }
    }
    QPoly out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = m[i][d];
    return out;
  }

 private:
  std::int64_t l_;
  ZPoly mod_;
  std::size_t deg_;
  std::vector<QPoly> powers_;
};

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(std::int64_t l) {
  const ZPoly p = cyclo_z(l);
  std::vector<std::int64_t> out;
  out.reserve(p.size());
  for (const auto& c : p) {
    if (!c.fits_slong_p()) throw std::overflow_error("cyclotomic coefficient overflow");
    out.push_back(c.get_si());
  }
  return out;
}

std::int64_t euler_phi(std::int64_t l) {
  if (l < 1) throw InvalidInput("euler_phi needs l >= 1");
  std::int64_t r = l;
  for (auto p : prime_divisors(l)) r = r / p * (p - 1);
  return r;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

std::vector<std::int64_t> reduce_mod_cyclotomic(const std::vector<std::int64_t>& coefficients, std::int64_t l) {
  const ZPoly mod = cyclo_z(l);
  ZPoly p(coefficients.begin(), coefficients.end());
  const ZPoly r = remainder(p, mod);
  std::vector<std::int64_t> out;
  for (const auto& c : r) out.push_back(c.get_si());
  return out;
}

bool vanishes_exactly(const std::vector<std::int64_t>& exponents, std::int64_t l) {
  if (l < 1) throw InvalidInput("vanishes_exactly needs l >= 1");
  ZPoly counts(static_cast<std::size_t>(l), 0);
  for (auto e : exponents) {
    std::int64_t r = e % l;
    if (r < 0) r += l;
    counts[static_cast<std::size_t>(r)] += 1;
  }
  const ZPoly r = remainder(counts, cyclo_z(l));
  return std::all_of(r.begin(), r.end(), [](const mpz_class& c) { return c == 0; });
}

std::size_t exact_rank(const std::vector<std::vector<CycloInt>>& matrix, std::int64_t l) {
  if (matrix.empty()) return 0;
  const Field field(l);
  const std::size_t rows = matrix.size(), cols = matrix.front().size();
  std::vector<std::vector<QPoly>> a(rows, std::vector<QPoly>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (matrix[i].size() != cols) throw InvalidInput("exact_rank: ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = field.from(matrix[i][j]);
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && Field::is_zero(a[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const QPoly inv = field.inverse(a[rank][c]);
    for (std::size_t t = c; t < cols; ++t) a[rank][t] = field.mul(a[rank][t], inv);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (Field::is_zero(a[r][c])) continue;
      const QPoly f = a[r][c];
      for (std::size_t t = c; t < cols; ++t)
        if (!Field::is_zero(a[rank][t])) a[r][t] = field.sub(a[r][t], field.mul(f, a[rank][t]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace hadlab
