#include "hadlab/group.hpp"

#include <numeric>

#include "hadlab/phase.hpp"

namespace hadlab {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> orders) : orders_(std::move(orders)) {
  if (orders_.empty()) throw InvalidInput("group: empty order list");
  for (auto n : orders_) {
    if (n < 1) throw InvalidInput("group: orders must be positive");
    size_ *= static_cast<std::size_t>(n);
    exponent_ = std::lcm(exponent_, n);
    if (size_ > (std::size_t{1} << 24)) throw InvalidInput("group: too large");
  }
}

std::size_t FiniteAbelianGroup::index(const std::vector<std::int64_t>& element) const {
  if (element.size() != orders_.size()) throw InvalidInput("group element has wrong number of coordinates");
  std::size_t idx = 0;
  for (std::size_t t = 0; t < orders_.size(); ++t) {
    std::int64_t c = element[t] % orders_[t];
    if (c < 0) c += orders_[t];
    idx = idx * static_cast<std::size_t>(orders_[t]) + static_cast<std::size_t>(c);
  }
  return idx;
}

std::vector<std::int64_t> FiniteAbelianGroup::element(std::size_t index) const {
  if (index >= size_) throw InvalidInput("group index out of range");
  std::vector<std::int64_t> out(orders_.size());
  for (std::size_t t = orders_.size(); t-- > 0;) {
    const auto n = static_cast<std::size_t>(orders_[t]);
    out[t] = static_cast<std::int64_t>(index % n);
    index /= n;
  }
  return out;
}

std::size_t FiniteAbelianGroup::add(std::size_t a, std::size_t b) const {
  auto x = element(a);
  const auto y = element(b);
  for (std::size_t t = 0; t < x.size(); ++t) x[t] += y[t];
  return index(x);
}

std::size_t FiniteAbelianGroup::neg(std::size_t a) const {
  auto x = element(a);
  for (auto& c : x) c = -c;
  return index(x);
}

std::int64_t FiniteAbelianGroup::element_order(std::size_t a) const {
  const auto x = element(a);
  std::int64_t ord = 1;
  for (std::size_t t = 0; t < x.size(); ++t) ord = std::lcm(ord, orders_[t] / std::gcd(x[t], orders_[t]));
  return ord;
}

std::int64_t FiniteAbelianGroup::character_exponent(std::size_t a, std::size_t b) const {
  const auto x = element(a);
  const auto y = element(b);
  std::int64_t e = 0;
  for (std::size_t t = 0; t < x.size(); ++t) e = (e + (x[t] * y[t] % orders_[t]) * (exponent_ / orders_[t])) % exponent_;
  return e;
}

}  // namespace hadlab
