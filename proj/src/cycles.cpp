#include "hadlab/cycles.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "hadlab/cyclotomic.hpp"

namespace hadlab {

namespace {

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p <= n; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

void prime_partitions(std::int64_t remaining, std::int64_t max_part, const std::vector<std::int64_t>& primes,
                      std::vector<std::int64_t>& current, std::vector<std::vector<std::int64_t>>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
    const std::int64_t p = *it;
    if (p > max_part || p > remaining) continue;
    current.push_back(p);
    prime_partitions(remaining - p, p, primes, current, out);
    current.pop_back();
  }
}

std::string label_of(std::vector<std::int64_t> lengths) {
  std::sort(lengths.rbegin(), lengths.rend());
  std::string s;
  for (auto p : lengths) s += (s.empty() ? "" : "+") + std::to_string(p);
  return s;
}

class CoverSearch {
 public:
  CoverSearch(const std::vector<cdouble>& terms, double tol, std::uint64_t budget)
      : terms_(terms), tol_(tol), budget_(budget), covered_(terms.size(), false) {
    // Interchangeable terms are grouped so that only one member per group is tried.
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      std::size_t c = classes_.size();
      for (std::size_t g = 0; g < classes_.size(); ++g)
        if (std::abs(terms_[classes_[g].front()] - terms_[k]) < tol_) {
          c = g;
          break;
        }
      if (c == classes_.size()) classes_.emplace_back();
      classes_[c].push_back(k);
    }
  }

  // true: found; false: exhausted or budget hit (see budget_hit()).
  bool run(const std::vector<std::int64_t>& partition) {
    remaining_.clear();
    for (auto p : partition) remaining_[p] += 1;
    cycles_.clear();
    return solve();
  }

  bool budget_hit() const { return budget_hit_; }
  std::uint64_t nodes() const { return nodes_; }
  const std::vector<Cycle>& cycles() const { return cycles_; }

 private:
  bool solve() {
    std::size_t anchor = 0;
    while (anchor < covered_.size() && covered_[anchor]) ++anchor;
    if (anchor == covered_.size()) return true;
    for (auto it = remaining_.rbegin(); it != remaining_.rend(); ++it) {
      const std::int64_t p = it->first;
      if (it->second == 0) continue;
      // Candidate members for each root ζ_p^m, m = 1..p-1.
      std::vector<std::vector<std::size_t>> options(static_cast<std::size_t>(p));
      options[0] = {anchor};
      bool feasible = true;
      for (std::int64_t m = 1; m < p && feasible; ++m) {
        const cdouble target = terms_[anchor] * std::polar(1.0, kTwoPi * static_cast<double>(m) / static_cast<double>(p));
        for (const auto& cls : classes_) {
          if (std::abs(terms_[cls.front()] - target) >= tol_) continue;
          for (auto k : cls)
            if (!covered_[k] && k != anchor) {
              options[static_cast<std::size_t>(m)].push_back(k);
              break;
            }
        }
        feasible = !options[static_cast<std::size_t>(m)].empty();
      }
      if (!feasible) continue;
      std::vector<std::size_t> pick(static_cast<std::size_t>(p), 0);
      it->second -= 1;
      if (choose(p, options, pick, 1, anchor)) return true;
      it->second += 1;
      if (budget_hit_) return false;
    }
    return false;
  }

  bool choose(std::int64_t p, const std::vector<std::vector<std::size_t>>& options, std::vector<std::size_t>& pick,
              std::size_t m, std::size_t anchor) {
    if (m == static_cast<std::size_t>(p)) {
      if (++nodes_ > budget_) {
        budget_hit_ = true;
        return false;
      }
      Cycle c;
      c.prime = p;
      c.rotation = terms_[anchor];
      c.members.push_back(anchor);
      for (std::size_t t = 1; t < pick.size(); ++t) c.members.push_back(options[t][pick[t]]);
      for (auto k : c.members) covered_[k] = true;
      cycles_.push_back(c);
      if (solve()) return true;
      cycles_.pop_back();
      for (auto k : c.members) covered_[k] = false;
      return false;
    }
    for (std::size_t o = 0; o < options[m].size(); ++o) {
      pick[m] = o;
      if (choose(p, options, pick, m + 1, anchor)) return true;
      if (budget_hit_) return false;
    }
    return false;
  }

  const std::vector<cdouble>& terms_;
  double tol_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool budget_hit_ = false;
  std::vector<bool> covered_;
  std::vector<std::vector<std::size_t>> classes_;
  std::map<std::int64_t, std::int64_t> remaining_;
  std::vector<Cycle> cycles_;
};

std::int64_t mod(std::int64_t a, std::int64_t l) {
  const std::int64_t r = a % l;
  return r < 0 ? r + l : r;
}

bool nonnegative_cover(std::vector<std::int64_t>& counts, std::int64_t l, const std::vector<std::int64_t>& primes,
                       std::vector<IntegerCycle>& out, std::set<std::vector<std::int64_t>>& dead, std::uint64_t& nodes) {
  std::size_t r = 0;
  while (r < counts.size() && counts[r] == 0) ++r;
  if (r == counts.size()) return true;
  if (dead.count(counts) || ++nodes > 2'000'000) return false;
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
    const std::int64_t p = *it, step = l / p;
    bool ok = true;
    for (std::int64_t t = 0; t < p && ok; ++t) ok = counts[static_cast<std::size_t>(mod(static_cast<std::int64_t>(r) + t * step, l))] > 0;
    if (!ok) continue;
    for (std::int64_t t = 0; t < p; ++t) counts[static_cast<std::size_t>(mod(static_cast<std::int64_t>(r) + t * step, l))] -= 1;
    out.push_back({p, static_cast<std::int64_t>(r), 1});
    if (nonnegative_cover(counts, l, primes, out, dead, nodes)) return true;
    out.pop_back();
    for (std::int64_t t = 0; t < p; ++t) counts[static_cast<std::size_t>(mod(static_cast<std::int64_t>(r) + t * step, l))] += 1;
  }
  dead.insert(counts);
  return false;
}

// Integer solution of A x = c by unimodular column reduction; nullopt if none.
std::optional<std::vector<mpz_class>> integer_solve(std::vector<std::vector<mpz_class>> a, const std::vector<mpz_class>& c) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<std::vector<mpz_class>> u(cols, std::vector<mpz_class>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) u[i][i] = 1;
  auto combine = [&](std::size_t k, std::size_t j, const mpz_class& s, const mpz_class& t, const mpz_class& x,
                     const mpz_class& y) {
    // col_k <- s col_k + t col_j ; col_j <- x col_k + y col_j
    for (auto* m : {&a, &u})
      for (auto& row : *m) {
        const mpz_class ck = row[k], cj = row[j];
        row[k] = s * ck + t * cj;
        row[j] = x * ck + y * cj;
      }
  };
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::size_t k = 0;
  for (std::size_t r = 0; r < rows && k < cols; ++r) {
    for (std::size_t j = k + 1; j < cols; ++j) {
      if (a[r][j] == 0) continue;
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[r][k].get_mpz_t(), a[r][j].get_mpz_t());
      const mpz_class x = -a[r][j] / g, y = a[r][k] / g;
      combine(k, j, s, t, x, y);
    }
    if (a[r][k] != 0) pivots.emplace_back(r, k++);
  }
  std::vector<mpz_class> yv(cols, 0);
  std::size_t next = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    mpz_class residual = c[r];
    for (std::size_t j = 0; j < next; ++j) residual -= a[r][j] * yv[j];
    if (next < pivots.size() && pivots[next].first == r) {
      const mpz_class& d = a[r][next];
      if (residual % d != 0) return std::nullopt;
      yv[next] = residual / d;
      ++next;
    } else if (residual != 0) {
      return std::nullopt;
    }
  }
  std::vector<mpz_class> x(cols, 0);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < cols; ++j) x[i] += u[i][j] * yv[j];
  return x;
}

}  // namespace

std::string to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::found: return "found";
    case SearchStatus::none: return "none";
    case SearchStatus::inconclusive: return "inconclusive";
  }
  return "none";
}

std::string to_string(IntegerDecomposeStatus status) {
  switch (status) {
    case IntegerDecomposeStatus::non_vanishing: return "non-vanishing";
    case IntegerDecomposeStatus::nonnegative: return "nonnegative";
    case IntegerDecomposeStatus::integer: return "integer";
  }
  return "non-vanishing";
}

std::string to_string(Regularity r) {
  switch (r) {
    case Regularity::regular: return "regular";
    case Regularity::irregular: return "irregular";
    case Regularity::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

TermMultiset term_multiset(const PHMatrix& h, std::size_t i, std::size_t j) {
  if (i >= h.rows() || j >= h.rows()) throw InvalidInput("term_multiset: row index out of range");
  if (i == j) throw InvalidInput("term_multiset: needs two distinct rows");
  TermMultiset out;
  std::vector<Rational> exact;
  bool all_exact = true;
  for (std::size_t k = 0; k < h.cols(); ++k) {
    const Phase t = h(i, k) * h(j, k).conj();
    out.terms.push_back(t.value());
    if (auto r = t.exact_turns())
      exact.push_back(*r);
    else
      all_exact = false;
  }
  if (all_exact) {
    ExactTerms e;
    for (const auto& r : exact) e.order = std::lcm(e.order, r.den);
    for (const auto& r : exact) e.exponents.push_back(r.num * (e.order / r.den));
    out.exact = std::move(e);
  }
  return out;
}

DecomposeResult cycle_decompose(const std::vector<cdouble>& terms, double tol, std::uint64_t budget) {
  if (!(tol > 0)) throw InvalidInput("cycle_decompose: tolerance must be positive");
  cdouble sum = 0.0;
  for (const auto& t : terms) {
    if (std::abs(std::abs(t) - 1.0) > 1e-9) throw InvalidInput("cycle_decompose: terms must be unit-modulus");
    sum += t;
  }
  const auto n = static_cast<std::int64_t>(terms.size());
  if (std::abs(sum) > tol * static_cast<double>(std::max<std::int64_t>(n, 1)))
    throw InvalidInput("cycle_decompose: terms do not sum to zero");
  DecomposeResult result;
  if (n == 0) {
    result.status = SearchStatus::found;
    result.decomposition = CycleDecomposition{};
    return result;
  }
  std::vector<std::vector<std::int64_t>> partitions;
  std::vector<std::int64_t> current;
  prime_partitions(n, n, primes_up_to(n), current, partitions);
  CoverSearch search(terms, tol, budget);
  for (const auto& part : partitions) {
    if (search.run(part)) {
      CycleDecomposition d;
      d.cycles = search.cycles();
      d.label = label_of(part);
      result.status = SearchStatus::found;
      result.decomposition = std::move(d);
      result.nodes = search.nodes();
      return result;
    }
    if (search.budget_hit()) {
      result.status = SearchStatus::inconclusive;
      result.nodes = search.nodes();
      return result;
    }
  }
  result.status = SearchStatus::none;
  result.nodes = search.nodes();
  return result;
}

DecomposeResult cycle_decompose(const TermMultiset& terms, double tol, std::uint64_t budget) {
  return cycle_decompose(terms.terms, tol, budget);
}

IntegerDecomposition cycle_decompose_integer(const std::vector<std::int64_t>& exponents, std::int64_t l) {
  if (l < 1) throw InvalidInput("cycle_decompose_integer: l must be >= 1");
  IntegerDecomposition out;
  if (!vanishes_exactly(exponents, l)) return out;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(l), 0);
  for (auto e : exponents) counts[static_cast<std::size_t>(mod(e, l))] += 1;
  const std::vector<std::int64_t> primes = prime_divisors(l);

  std::vector<IntegerCycle> cover;
  std::set<std::vector<std::int64_t>> dead;
  std::uint64_t nodes = 0;
  std::vector<std::int64_t> work = counts;
  if (nonnegative_cover(work, l, primes, cover, dead, nodes)) {
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> merged;
    for (const auto& c : cover) merged[{c.prime, c.offset}] += 1;
    for (const auto& [key, coef] : merged) out.cycles.push_back({key.first, key.second, coef});
    out.status = IntegerDecomposeStatus::nonnegative;
    return out;
  }

  // Columns: every rotated prime cycle {r + t·l/p}, r < l/p.
  std::vector<std::pair<std::int64_t, std::int64_t>> cols;
  for (auto p : primes)
    for (std::int64_t r = 0; r < l / p; ++r) cols.emplace_back(p, r);
  std::vector<std::vector<mpz_class>> a(static_cast<std::size_t>(l), std::vector<mpz_class>(cols.size(), 0));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto [p, r] = cols[c];
    for (std::int64_t t = 0; t < p; ++t) a[static_cast<std::size_t>(r + t * (l / p))][c] = 1;
  }
  std::vector<mpz_class> rhs(counts.begin(), counts.end());
  const auto x = integer_solve(a, rhs);
  if (!x) throw std::logic_error("cycle_decompose_integer: no integer solution for a vanishing sum");
  bool nonneg = true;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if ((*x)[c] == 0) continue;
    if (!(*x)[c].fits_slong_p()) throw std::overflow_error("cycle_decompose_integer: coefficient overflow");
    out.cycles.push_back({cols[c].first, cols[c].second, (*x)[c].get_si()});
    nonneg = nonneg && (*x)[c] > 0;
  }
  out.status = nonneg ? IntegerDecomposeStatus::nonnegative : IntegerDecomposeStatus::integer;
  if (integer_reconstruction(out, l) != counts) throw std::logic_error("cycle_decompose_integer: reconstruction mismatch");
  return out;
}

std::vector<std::int64_t> integer_reconstruction(const IntegerDecomposition& d, std::int64_t l) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(l), 0);
  for (const auto& c : d.cycles)
    for (std::int64_t t = 0; t < c.prime; ++t)
      counts[static_cast<std::size_t>(mod(c.offset + t * (l / c.prime), l))] += c.coefficient;
  return counts;
}

bool lam_leung_length_admissible(std::int64_t n, std::int64_t l) {
  if (n < 0 || l < 1) return false;
  const auto primes = prime_divisors(l);
  std::vector<bool> reach(static_cast<std::size_t>(n) + 1, false);
  reach[0] = true;
  for (std::int64_t s = 1; s <= n; ++s)
    for (auto p : primes)
      if (p <= s && reach[static_cast<std::size_t>(s - p)]) {
        reach[static_cast<std::size_t>(s)] = true;
        break;
      }
  return reach[static_cast<std::size_t>(n)];
}

std::vector<PairLabel> cycle_structure_profile(const PHMatrix& h, double tol, std::uint64_t budget) {
  require_hadamard(h, "cycle_structure_profile");
  std::vector<PairLabel> out;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = i + 1; j < h.rows(); ++j) {
      PairLabel pl{i, j, SearchStatus::none, "irregular"};
      const auto r = cycle_decompose(term_multiset(h, i, j), tol, budget);
      pl.status = r.status;
      if (r.status == SearchStatus::found)
        pl.label = r.decomposition->label;
      else if (r.status == SearchStatus::inconclusive)
        pl.label = "inconclusive";
      out.push_back(pl);
    }
  return out;
}

Regularity regularity(const std::vector<PairLabel>& profile) {
  bool inconclusive = false;
  for (const auto& p : profile) {
    if (p.status == SearchStatus::none) return Regularity::irregular;
    if (p.status == SearchStatus::inconclusive) inconclusive = true;
  }
  return inconclusive ? Regularity::inconclusive : Regularity::regular;
}

Regularity regularity(const PHMatrix& h, double tol, std::uint64_t budget) {
  return regularity(cycle_structure_profile(h, tol, budget));
}

bool is_regular(const PHMatrix& h, double tol, std::uint64_t budget) {
  return regularity(h, tol, budget) == Regularity::regular;
}

WeakIsolationReport weak_isolation_probe(const PHMatrix& h, double tol, std::int64_t butson_l_max) {
  require_hadamard(h, "weak_isolation_probe");
  const PHMatrix d = dephase(h).matrix;
  WeakIsolationReport rep;
  rep.regularity = regularity(d, tol);
  rep.isolation = isolation_certificate(d);
  if (auto b = detect_butson(d, butson_l_max)) rep.butson_order = b->order;
  rep.counterexample_candidate = rep.regularity == Regularity::regular &&
                                 rep.isolation.status == IsolationStatus::certified_isolated && !rep.butson_order;
  return rep;
}

}  // namespace hadlab
