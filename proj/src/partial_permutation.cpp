#include "hadlab/partial_permutation.hpp"

#include <algorithm>
#include <set>

#include "hadlab/phase.hpp"

namespace hadlab {

PartialPermutation::PartialPermutation(std::vector<int> targets) : targets_(std::move(targets)) {
  std::vector<bool> used(targets_.size(), false);
  for (int t : targets_) {
    if (t < -1 || t >= static_cast<int>(targets_.size())) throw InvalidInput("partial permutation target out of range");
    if (t < 0) continue;
    if (used[static_cast<std::size_t>(t)]) throw InvalidInput("partial permutation is not injective");
    used[static_cast<std::size_t>(t)] = true;
  }
}

PartialPermutation PartialPermutation::identity(std::size_t m) {
  std::vector<int> t(m);
  for (std::size_t j = 0; j < m; ++j) t[j] = static_cast<int>(j);
  return PartialPermutation(std::move(t));
}

PartialPermutation PartialPermutation::empty(std::size_t m) { return PartialPermutation(std::vector<int>(m, -1)); }

std::size_t PartialPermutation::kappa() const noexcept {
  return static_cast<std::size_t>(std::count_if(targets_.begin(), targets_.end(), [](int t) { return t >= 0; }));
}

bool PartialPermutation::is_identity() const noexcept {
  for (std::size_t j = 0; j < targets_.size(); ++j)
    if (targets_[j] != static_cast<int>(j)) return false;
  return true;
}

std::string PartialPermutation::str() const {
  if (is_identity()) return "id";
  if (kappa() == 0) return "∅";
  std::string s;
  for (std::size_t j = 0; j < targets_.size(); ++j) {
    if (targets_[j] < 0) continue;
    if (!s.empty()) s += ",";
    s += std::to_string(j + 1) + std::to_string(targets_[j] + 1);
  }
  return s;
}

PartialPermutation compose(const PartialPermutation& sigma, const PartialPermutation& tau) {
  if (sigma.size() != tau.size()) throw InvalidInput("compose: size mismatch");
  std::vector<int> out(tau.size(), -1);
  for (std::size_t j = 0; j < tau.size(); ++j) {
    const int t = tau(j);
    if (t >= 0) out[j] = sigma(static_cast<std::size_t>(t));
  }
  return PartialPermutation(std::move(out));
}

SemigroupClosure semigroup_closure(const std::vector<PartialPermutation>& generators, std::size_t cap) {
  SemigroupClosure out;
  if (generators.empty()) return out;
  const std::size_t m = generators.front().size();
  if (m > kMaxClosureSize) throw InvalidInput("semigroup_closure: ground set larger than 8");
  for (const auto& g : generators)
    if (g.size() != m) throw InvalidInput("semigroup_closure: generators of different sizes");
  if (cap < generators.size()) throw InvalidInput("semigroup_closure: cap below number of generators");

  std::set<PartialPermutation> gens(generators.begin(), generators.end());
  out.generators.assign(gens.begin(), gens.end());
  std::set<PartialPermutation> seen(gens);
  std::vector<PartialPermutation> frontier(gens.begin(), gens.end());
  while (!frontier.empty() && !out.cap_hit) {
    ++out.rounds;
    std::vector<PartialPermutation> next;
    for (const auto& x : frontier)
      for (const auto& g : out.generators) {
        PartialPermutation y = compose(g, x);
        if (seen.count(y)) continue;
        if (seen.size() >= cap) {
          out.cap_hit = true;
          break;
        }
        seen.insert(y);
        next.push_back(std::move(y));
      }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  out.elements.assign(seen.begin(), seen.end());
  return out;
}

std::vector<PartialPermutation> interval_shift_maps(std::size_t m) {
  if (m == 0 || m > kMaxClosureSize) throw InvalidInput("interval_shift_maps: M must lie in 1..8");
  std::set<PartialPermutation> out;
  out.insert(PartialPermutation::empty(m));
  for (std::size_t k = 1; k <= m; ++k)
    for (std::size_t a = 0; a + k <= m; ++a)      // I = [a, a+k)
      for (std::size_t b = 0; b + k <= m; ++b) {  // J = [b, b+k)
        std::vector<int> t(m, -1);
        for (std::size_t d = 0; d < k; ++d) t[a + d] = static_cast<int>(b + d);
        out.insert(PartialPermutation(std::move(t)));
      }
  return {out.begin(), out.end()};
}

std::vector<PartialPermutation> predicted_truncated_semigroup(std::size_t m, std::size_t n) {
  if (n + 2 <= 2 * m) throw InvalidInput("predicted_truncated_semigroup: needs N > 2M - 2");
  return interval_shift_maps(m);
}

std::uint64_t partial_permutation_count(std::size_t m) {
  std::uint64_t total = 0;
  for (std::size_t k = 0; k <= m; ++k) {
    std::uint64_t c = 1;
    for (std::size_t i = 0; i < k; ++i) c = c * (m - i) / (i + 1);
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= k; ++i) f *= i;
    total += c * c * f;
  }
  return total;
}

}  // namespace hadlab
