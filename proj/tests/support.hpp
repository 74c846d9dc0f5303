#pragma once

// Test-side oracles. These are written from first principles and do not call
// into the library routines they are used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "hadlab/constructors.hpp"
#include "hadlab/matrix.hpp"
#include "hadlab/partial_permutation.hpp"

namespace oracle {

// All elements of Z_{o_1} x ... x Z_{o_k}, first factor most significant.
inline std::vector<std::vector<std::int64_t>> group_elements(const std::vector<std::int64_t>& orders) {
  std::vector<std::vector<std::int64_t>> out{{}};
  for (auto o : orders) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& e : out)
      for (std::int64_t x = 0; x < o; ++x) {
        auto f = e;
        f.push_back(x);
        next.push_back(f);
      }
    out = next;
  }
  return out;
}

// Σ_g [G : <g>], via element orders.
inline std::int64_t subgroup_index_sum(const std::vector<std::int64_t>& orders) {
  std::int64_t size = 1;
  for (auto o : orders) size *= o;
  std::int64_t total = 0;
  for (const auto& g : group_elements(orders)) {
    std::int64_t ord = 1;
    for (std::size_t i = 0; i < orders.size(); ++i) ord = std::lcm(ord, orders[i] / std::gcd(g[i], orders[i]));
    total += size / ord;
  }
  return total;
}

// Number of (g, h) with <g, h> = Σ g_i h_i / o_i an integer: the 1-entries of F_G.
inline std::int64_t one_entries(const std::vector<std::int64_t>& orders) {
  const auto els = group_elements(orders);
  std::int64_t l = 1;
  for (auto o : orders) l = std::lcm(l, o);
  std::int64_t count = 0;
  for (const auto& g : els)
    for (const auto& h : els) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < orders.size(); ++i) s += g[i] * h[i] * (l / orders[i]);
      count += s % l == 0;
    }
  return count;
}

// N ∏ (1 + a_i - a_i / p_i) over N = ∏ p_i^{a_i}.
inline std::int64_t fourier_product_form(std::int64_t n) {
  double value = static_cast<double>(n);
  std::int64_t m = n;
  for (std::int64_t p = 2; p * p <= m || m > 1; ++p) {
    if (p * p > m) p = m;
    int a = 0;
    while (m % p == 0) {
      m /= p;
      ++a;
    }
    if (a) value *= 1.0 + a - static_cast<double>(a) / static_cast<double>(p);
  }
  return std::llround(value);
}

// dim Sym_M(R) + dim M_{M x (N-M)}(R).
inline std::int64_t real_formula(std::int64_t m, std::int64_t n) { return m * (m + 1) / 2 + m * (n - m); }

// Every partial permutation of {0..m-1}, targets with -1 for undefined.
inline std::vector<std::vector<int>> all_partial_permutations(int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(m), -1);
  std::vector<bool> used(static_cast<std::size_t>(m), false);
  std::function<void(int)> rec = [&](int j) {
    if (j == m) {
      out.push_back(cur);
      return;
    }
    cur[static_cast<std::size_t>(j)] = -1;
    rec(j + 1);
    for (int t = 0; t < m; ++t)
      if (!used[static_cast<std::size_t>(t)]) {
        used[static_cast<std::size_t>(t)] = true;
        cur[static_cast<std::size_t>(j)] = t;
        rec(j + 1);
        used[static_cast<std::size_t>(t)] = false;
      }
    cur[static_cast<std::size_t>(j)] = -1;
  };
  rec(0);
  return out;
}

// Shift maps j -> j - x between intervals, plus the empty map.
inline bool is_interval_shift(const std::vector<int>& t) {
  std::vector<int> dom;
  for (int j = 0; j < static_cast<int>(t.size()); ++j)
    if (t[static_cast<std::size_t>(j)] >= 0) dom.push_back(j);
  if (dom.empty()) return true;
  const int shift = t[static_cast<std::size_t>(dom[0])] - dom[0];
  for (std::size_t k = 0; k < dom.size(); ++k) {
    if (dom[k] != dom[0] + static_cast<int>(k)) return false;
    if (t[static_cast<std::size_t>(dom[k])] - dom[k] != shift) return false;
  }
  return true;
}

inline std::set<std::vector<int>> interval_shift_model(int m) {
  std::set<std::vector<int>> out;
  for (const auto& t : all_partial_permutations(m))
    if (is_interval_shift(t)) out.insert(t);
  return out;
}

inline std::size_t kappa(const std::vector<int>& t) {
  std::size_t k = 0;
  for (int x : t) k += x >= 0;
  return k;
}

// Legendre symbol by listing squares.
inline int legendre(std::int64_t s, std::int64_t q) {
  s = ((s % q) + q) % q;
  if (s == 0) return 0;
  for (std::int64_t x = 1; x < q; ++x)
    if (x * x % q == s) return 1;
  return -1;
}

inline double max_entry_distance(const hadlab::PHMatrix& a, const hadlab::PHMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) worst = std::max(worst, std::abs(a.value(i, j) - b.value(i, j)));
  return worst;
}

inline std::vector<std::int64_t> iota_rows(std::int64_t m) {
  std::vector<std::int64_t> r(static_cast<std::size_t>(m));
  std::iota(r.begin(), r.end(), std::int64_t{0});
  return r;
}

}  // namespace oracle
