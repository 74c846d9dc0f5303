#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hadlab {

/// Z_{N_1} x ... x Z_{N_s}, elements indexed in mixed radix with the first
/// factor most significant (the same order as the tensor product F_{N_1}⊗...).
class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<std::int64_t> orders);

  const std::vector<std::int64_t>& orders() const noexcept { return orders_; }
  std::size_t size() const noexcept { return size_; }
  std::int64_t exponent() const noexcept { return exponent_; }  ///< lcm of the orders

  std::size_t index(const std::vector<std::int64_t>& element) const;
  std::vector<std::int64_t> element(std::size_t index) const;

  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t neg(std::size_t a) const;
  std::size_t sub(std::size_t a, std::size_t b) const { return add(a, neg(b)); }
  /// Order of the element, i.e. |<g>|.
  std::int64_t element_order(std::size_t a) const;
  /// Exponent e with <a, b> = exp(2πi e / exponent()).
  std::int64_t character_exponent(std::size_t a, std::size_t b) const;

 private:
  std::vector<std::int64_t> orders_;
  std::size_t size_ = 1;
  std::int64_t exponent_ = 1;
};

}  // namespace hadlab
