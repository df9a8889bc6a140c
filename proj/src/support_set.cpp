#include "srl/support_set.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "srl/errors.hpp"

namespace srl {

SupportSet::SupportSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw InvalidArgument("SupportSet: duplicate index");
  }
}

bool SupportSet::contains(std::size_t j) const noexcept {
  return std::binary_search(indices_.begin(), indices_.end(), j);
}

void SupportSet::check_bounds(std::size_t p) const {
  if (!indices_.empty() && indices_.back() >= p) {
    throw InvalidArgument("SupportSet: index " + std::to_string(indices_.back()) +
                          " out of range for p = " + std::to_string(p));
  }
}

std::size_t SupportSet::count_not_in(const SupportSet& other) const noexcept {
  std::size_t count = 0;
  auto it = other.indices_.begin();
  for (std::size_t j : indices_) {
    while (it != other.indices_.end() && *it < j) ++it;
    if (it == other.indices_.end() || *it != j) ++count;
  }
  return count;
}

std::string SupportSet::to_string() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i) out << ',';
    out << indices_[i];
  }
  out << '}';
  return out.str();
}

std::size_t hamming(const SupportSet& a, const SupportSet& b) noexcept {
  return a.count_not_in(b) + b.count_not_in(a);
}

std::vector<std::size_t> top_k_by_magnitude(std::span<const double> values, std::size_t k) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  k = std::min(k, values.size());
  auto before = [&](std::size_t i, std::size_t j) {
    const double ai = std::abs(values[i]);
    const double aj = std::abs(values[j]);
    return ai > aj || (ai == aj && i < j);
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    before);
  order.resize(k);
  return order;
}

}  // namespace srl
