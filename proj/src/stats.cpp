#include "srl/stats.hpp"

#include <algorithm>
#include <cmath>

#include "srl/errors.hpp"

namespace srl {

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) throw InvalidArgument("wilson_interval: no trials");
  if (successes > trials) throw InvalidArgument("wilson_interval: successes exceed trials");
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double spread = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  // Clamp so the interval always contains phat despite rounding at 0 and 1.
  return {std::min(std::max(0.0, center - spread), phat), std::max(std::min(1.0, center + spread), phat)};
}

}  // namespace srl
