#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hadlab {

/// Injective partial map of {0..M-1}; targets[j] = σ(j) or -1 when undefined.
class PartialPermutation {
 public:
  PartialPermutation() = default;
  /// Throws InvalidInput on out-of-range or repeated targets.
  explicit PartialPermutation(std::vector<int> targets);

  static PartialPermutation identity(std::size_t m);
  static PartialPermutation empty(std::size_t m);

  std::size_t size() const noexcept { return targets_.size(); }
  /// κ(σ): size of the domain.
  std::size_t kappa() const noexcept;
  bool defined(std::size_t j) const { return targets_.at(j) >= 0; }
  int operator()(std::size_t j) const { return targets_.at(j); }
  const std::vector<int>& targets() const noexcept { return targets_; }

  bool is_identity() const noexcept;

  /// "id", "∅", or comma-separated 1-based "ij" pairs meaning i -> j.
  std::string str() const;

  friend bool operator==(const PartialPermutation&, const PartialPermutation&) = default;
  friend auto operator<=>(const PartialPermutation& a, const PartialPermutation& b) { return a.targets_ <=> b.targets_; }

 private:
  std::vector<int> targets_;
};

/// (σ∘τ)(j) = σ(τ(j)) where both are defined.
PartialPermutation compose(const PartialPermutation& sigma, const PartialPermutation& tau);

struct SemigroupClosure {
  std::vector<PartialPermutation> elements;  ///< sorted
  std::vector<PartialPermutation> generators;
  std::size_t rounds = 0;
  bool cap_hit = false;
};

inline constexpr std::size_t kDefaultClosureCap = 1'000'000;
inline constexpr std::size_t kMaxClosureSize = 8;

/// Breadth-first closure under left multiplication by generators.
SemigroupClosure semigroup_closure(const std::vector<PartialPermutation>& generators,
                                   std::size_t cap = kDefaultClosureCap);

/// Maps σ: I -> J, σ(j) = j - x, with I, J ⊂ {0..M-1} intervals, plus the empty map.
std::vector<PartialPermutation> interval_shift_maps(std::size_t m);

/// interval_shift_maps(M); requires N > 2M - 2.
std::vector<PartialPermutation> predicted_truncated_semigroup(std::size_t m, std::size_t n);

/// |S̃_M| = Σ_k C(M,k)² k!.
std::uint64_t partial_permutation_count(std::size_t m);

}  // namespace hadlab
