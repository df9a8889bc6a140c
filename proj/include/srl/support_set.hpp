#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace srl {

/// Strictly increasing list of column indices.
class SupportSet {
 public:
  SupportSet() = default;
  /// Sorts the input; throws InvalidArgument on duplicates.
  explicit SupportSet(std::vector<std::size_t> indices);
  SupportSet(std::initializer_list<std::size_t> indices)
      : SupportSet(std::vector<std::size_t>(indices)) {}

  [[nodiscard]] std::size_t size() const noexcept { return indices_.size(); }
  [[nodiscard]] bool empty() const noexcept { return indices_.empty(); }
  [[nodiscard]] bool contains(std::size_t j) const noexcept;
  [[nodiscard]] std::span<const std::size_t> indices() const noexcept { return indices_; }
  [[nodiscard]] auto begin() const noexcept { return indices_.begin(); }
  [[nodiscard]] auto end() const noexcept { return indices_.end(); }
  [[nodiscard]] std::size_t operator[](std::size_t i) const noexcept { return indices_[i]; }

  /// Throws InvalidArgument unless every index is below p.
  void check_bounds(std::size_t p) const;

  /// Number of elements of *this not in other.
  [[nodiscard]] std::size_t count_not_in(const SupportSet& other) const noexcept;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  std::vector<std::size_t> indices_;
};

/// |A \ B| + |B \ A|.
[[nodiscard]] std::size_t hamming(const SupportSet& a, const SupportSet& b) noexcept;

/// Indices of the k entries largest in magnitude, ties to the lowest index,
/// listed in rank order (largest first).
[[nodiscard]] std::vector<std::size_t> top_k_by_magnitude(std::span<const double> values,
                                                          std::size_t k);

}  // namespace srl
