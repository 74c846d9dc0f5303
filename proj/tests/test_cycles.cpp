#include <doctest.h>

#include <random>
#include <set>

#include "hadlab/constructors.hpp"
#include "hadlab/cycles.hpp"
#include "hadlab/cyclotomic.hpp"
#include "hadlab/defect.hpp"
#include "hadlab/mcnulty_weigert.hpp"
#include "support.hpp"

using namespace hadlab;

namespace {

cdouble root(double num, double den) { return std::polar(1.0, kTwoPi * num / den); }

const std::vector<std::int64_t> kL30 = {5, 6, 12, 18, 24, 25};

// Members partition the indices and every cycle is a rotated full set of p-th roots.
void check_decomposition(const std::vector<cdouble>& terms, const CycleDecomposition& d, double tol = 1e-8) {
  std::multiset<std::size_t> used;
  for (const auto& c : d.cycles) {
    CHECK(static_cast<std::int64_t>(c.members.size()) == c.prime);
    cdouble sum = 0.0;
    for (std::size_t m = 0; m < c.members.size(); ++m) {
      used.insert(c.members[m]);
      sum += terms[c.members[m]];
      CHECK(std::abs(terms[c.members[m]] - c.rotation * root(static_cast<double>(m), static_cast<double>(c.prime))) < tol);
    }
    CHECK(std::abs(sum) < tol * static_cast<double>(c.prime));
  }
  CHECK(used.size() == terms.size());
  for (std::size_t k = 0; k < terms.size(); ++k) CHECK(used.count(k) == 1);
}

}  // namespace

TEST_CASE("cyclotomic helpers") {
  CHECK(cyclotomic_polynomial(1) == std::vector<std::int64_t>{-1, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<std::int64_t>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<std::int64_t>{1, 0, -1, 0, 1});
  CHECK(euler_phi(30) == 8);
  CHECK(prime_divisors(60) == std::vector<std::int64_t>{2, 3, 5});
  CHECK(vanishes_exactly(kL30, 30));
  CHECK(vanishes_exactly({0, 2, 4}, 6));
  CHECK_FALSE(vanishes_exactly({0, 1, 2, 3}, 5));
}

TEST_CASE("term_multiset") {
  const auto t2 = term_multiset(fourier_cyclic(2), 0, 1);
  REQUIRE(t2.terms.size() == 2);
  CHECK(std::abs(t2.terms[0] - 1.0) < 1e-15);
  CHECK(std::abs(t2.terms[1] + 1.0) < 1e-15);
  const auto t6 = term_multiset(fourier_cyclic(6), 0, 1);
  REQUIRE(t6.exact);
  std::set<std::int64_t> seen;
  for (auto e : t6.exact->exponents) seen.insert(e * (6 / t6.exact->order) % 6);
  CHECK(seen.size() == 6);
  const PHMatrix p = petrescu(Phase::turns(0.1));
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = i + 1; j < 7; ++j) {
      const auto t = term_multiset(p, i, j);
      cdouble s = 0.0;
      for (auto z : t.terms) s += z;
      CHECK(t.terms.size() == 7);
      CHECK(std::abs(s) < 1e-12);
    }
  CHECK_THROWS_AS(term_multiset(p, 1, 1), InvalidInput);
}

TEST_CASE("rotated sum of a 3-cycle and a 2-cycle") {
  const cdouble q = std::polar(1.0, 0.731);
  const std::vector<cdouble> terms = {1.0, root(2, 6), root(4, 6), q * root(1, 6), q * root(4, 6)};
  const auto r = cycle_decompose(terms);
  REQUIRE(r.status == SearchStatus::found);
  CHECK(r.decomposition->label == "3+2");
  check_decomposition(terms, *r.decomposition);
  const auto& c3 = r.decomposition->cycles[0];
  CHECK(c3.prime == 3);
  CHECK(std::abs(c3.rotation - 1.0) < 1e-12);
  const auto& c2 = r.decomposition->cycles[1];
  CHECK(c2.prime == 2);
  CHECK((std::abs(c2.rotation - q * root(1, 6)) < 1e-12 || std::abs(c2.rotation - q * root(4, 6)) < 1e-12));
}

TEST_CASE("the l=30 sum is not a sum of cycles") {
  std::vector<cdouble> terms;
  for (auto e : kL30) terms.push_back(root(static_cast<double>(e), 30));
  CHECK(cycle_decompose(terms).status == SearchStatus::none);
  const auto d = cycle_decompose_integer(kL30, 30);
  CHECK(d.status == IntegerDecomposeStatus::integer);
  bool negative = false;
  for (const auto& c : d.cycles) negative = negative || c.coefficient < 0;
  CHECK(negative);
  auto rebuilt = integer_reconstruction(d, 30);
  std::vector<std::int64_t> expect(30, 0);
  for (auto e : kL30) expect[static_cast<std::size_t>(e)] += 1;
  CHECK(rebuilt == expect);
}

TEST_CASE("simple decompositions") {
  const auto full3 = cycle_decompose(std::vector<cdouble>{1.0, root(1, 3), root(2, 3)});
  REQUIRE(full3.status == SearchStatus::found);
  CHECK(full3.decomposition->label == "3");
  const auto d6 = cycle_decompose_integer({0, 1, 2, 3, 4, 5}, 6);
  CHECK(d6.status == IntegerDecomposeStatus::nonnegative);
  for (const auto& c : d6.cycles) CHECK(c.coefficient > 0);
  CHECK(cycle_decompose_integer({0, 1, 2, 3}, 5).status == IntegerDecomposeStatus::non_vanishing);
  CHECK_THROWS_AS(cycle_decompose(std::vector<cdouble>{1.0, root(1, 5)}), InvalidInput);
  CHECK_THROWS_AS(cycle_decompose(std::vector<cdouble>{1.0, 1.0}), InvalidInput);
  CHECK_THROWS_AS(cycle_decompose(std::vector<cdouble>{2.0, -2.0}), InvalidInput);
}

TEST_CASE("Lam-Leung admissibility") {
  CHECK(lam_leung_length_admissible(6, 30));
  CHECK_FALSE(lam_leung_length_admissible(1, 6));
  CHECK(lam_leung_length_admissible(7, 10));
  CHECK_FALSE(lam_leung_length_admissible(3, 4));
  CHECK(lam_leung_length_admissible(0, 7));
}

TEST_CASE("regularity of Fourier and Petrescu matrices") {
  for (std::int64_t n = 2; n <= 12; ++n) CHECK(is_regular(fourier_cyclic(n)));
  for (std::int64_t p : {2, 3, 5, 7, 11}) {
    for (const auto& pl : cycle_structure_profile(fourier_cyclic(p))) CHECK(pl.label == std::to_string(p));
  }
  for (const auto& pl : cycle_structure_profile(fourier_cyclic(6)))
    CHECK((pl.label == "2+2+2" || pl.label == "3+3"));
  const auto p = cycle_structure_profile(petrescu(Phase::turns(0.1)));
  CHECK(p.size() == 21);
  for (const auto& pl : p) CHECK(pl.label == "3+2+2");
  CHECK(is_regular(petrescu(Phase::turns(0.1))));
}

TEST_CASE("a matrix built on the l=30 sum is irregular") {
  std::vector<Phase> e(6, Phase::one());
  for (auto x : kL30) e.push_back(Phase::butson(x, 30));
  const PHMatrix h(2, 6, std::move(e));
  REQUIRE(check_partial_hadamard(h).is_hadamard);
  CHECK_FALSE(is_regular(h));
  CHECK(regularity(h) == Regularity::irregular);
  CHECK(cycle_structure_profile(h)[0].label == "irregular");
}

TEST_CASE("budget exhaustion is inconclusive") {
  const auto r = cycle_decompose(term_multiset(fourier_cyclic(12), 0, 1), kCycleTol, 1);
  CHECK(r.status == SearchStatus::inconclusive);
  CHECK(regularity(fourier_cyclic(12), kCycleTol, 1) == Regularity::inconclusive);
}

TEST_CASE("decomposition properties on Butson row pairs") {
  const std::vector<PHMatrix> fixtures = {fourier_cyclic(6), fourier_cyclic(10), fourier_group({2, 6}),
                                          petrescu(Phase::butson(1, 6)), f22q(Phase::butson(1, 12)),
                                          mw_construct({5, {1, 3}, {0, 2}, fourier_cyclic(2)})};
  for (const auto& h : fixtures) {
    for (std::size_t i = 0; i < h.rows(); ++i)
      for (std::size_t j = i + 1; j < h.rows(); ++j) {
        const auto t = term_multiset(h, i, j);
        REQUIRE(t.exact);
        CHECK(lam_leung_length_admissible(static_cast<std::int64_t>(h.cols()), t.exact->order));
        const auto a = cycle_decompose(t), b = cycle_decompose(t);
        CHECK(a.status == b.status);
        const auto integer = cycle_decompose_integer(t.exact->exponents, t.exact->order);
        if (a.status == SearchStatus::found) {
          check_decomposition(t.terms, *a.decomposition);
          CHECK(a.decomposition->label == b.decomposition->label);
          for (std::size_t c = 0; c < a.decomposition->cycles.size(); ++c)
            CHECK(a.decomposition->cycles[c].members == b.decomposition->cycles[c].members);
          CHECK(integer.status == IntegerDecomposeStatus::nonnegative);
        }
        CHECK(integer.status != IntegerDecomposeStatus::non_vanishing);
      }
  }
}

TEST_CASE("labels do not depend on column order") {
  std::mt19937_64 rng(31);
  const PHMatrix p = petrescu(Phase::turns(0.27));
  for (int trial = 0; trial < 5; ++trial) {
    const auto g = apply_equivalence(p, random_equivalence(7, 7, rng));
    for (const auto& pl : cycle_structure_profile(g)) CHECK(pl.label == "3+2+2");
  }
}

TEST_CASE("weak isolation probe") {
  const auto f5 = weak_isolation_probe(fourier_cyclic(5));
  CHECK(f5.regularity == Regularity::regular);
  CHECK(f5.isolation.status == IsolationStatus::certified_isolated);
  REQUIRE(f5.butson_order);
  CHECK(*f5.butson_order == 5);
  CHECK_FALSE(f5.counterexample_candidate);

  const auto fq = weak_isolation_probe(f22q(Phase::turns(0.1234567)));
  CHECK(fq.regularity == Regularity::regular);
  CHECK(fq.isolation.status == IsolationStatus::undetermined);
  CHECK_FALSE(fq.counterexample_candidate);

  // 2 x N: regular and isolated forces Butson.
  std::mt19937_64 rng(8);
  for (std::int64_t n = 2; n <= 9; ++n)
    for (std::int64_t s = 1; s < n; ++s) {
      const PHMatrix h = truncated_fourier(std::vector<std::int64_t>{0, s}, n);
      const auto eq = random_equivalence(2, static_cast<std::size_t>(n), rng);
      const auto r = weak_isolation_probe(apply_equivalence(h, eq));
      if (r.regularity == Regularity::regular && r.isolation.status == IsolationStatus::certified_isolated)
        CHECK(r.butson_order);
      CHECK_FALSE(r.counterexample_candidate);
    }
}
