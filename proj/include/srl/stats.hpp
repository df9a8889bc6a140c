#pragma once

#include <cstddef>

namespace srl {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  [[nodiscard]] double half_width() const noexcept { return 0.5 * (hi - lo); }
};

inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for a binomial proportion; trials must be positive.
[[nodiscard]] Interval wilson_interval(std::size_t successes, std::size_t trials, double z = kZ95);

}  // namespace srl
