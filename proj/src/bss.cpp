#include "srl/bss.hpp"

#include <limits>
#include <numeric>

#include "srl/errors.hpp"

namespace srl {

__extension__ using uint128 = unsigned __int128;

std::uint64_t binomial(std::uint64_t p, std::uint64_t s) noexcept {
  if (s > p) return 0;
  s = std::min(s, p - s);
  uint128 c = 1;
  constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t i = 1; i <= s; ++i) {
    c = c * (p - s + i) / i;
    if (c > cap) return cap;
  }
  return static_cast<std::uint64_t>(c);
}

BssResult bss_search(const Matrix& x, const Vector& y, std::size_t s, std::uint64_t budget) {
  const auto p = static_cast<std::size_t>(x.cols());
  if (s > p) throw InvalidArgument("bss: s exceeds p");
  const std::uint64_t count = binomial(p, s);
  if (count > budget) {
    throw BudgetExceeded("bss: C(" + std::to_string(p) + ", " + std::to_string(s) +
                         ") = " + std::to_string(count) + " subsets exceeds budget " +
                         std::to_string(budget));
  }
  // Improvements must clear a relative margin so both scans resolve
  // floating-point near-ties to the same (lexicographically first) subset.
  const double margin = 1e-12 * y.squaredNorm();

  std::vector<std::size_t> current(s);
  std::iota(current.begin(), current.end(), std::size_t{0});
  std::vector<std::size_t> best_fit_subset;
  std::vector<std::size_t> best_rss_subset;
  double best_fit = -std::numeric_limits<double>::infinity();
  double best_rss = std::numeric_limits<double>::infinity();
  std::uint64_t evaluated = 0;
  while (true) {
    const ProjectionFit fit = projection_fit(x, y, current);
    ++evaluated;
    if (fit.fitted_norm_sq > best_fit + margin) {
      best_fit = fit.fitted_norm_sq;
      best_fit_subset = current;
    }
    if (fit.rss < best_rss - margin) {
      best_rss = fit.rss;
      best_rss_subset = current;
    }
    // Next combination in lexicographic order.
    std::size_t i = s;
    while (i > 0 && current[i - 1] == p - s + (i - 1)) --i;
    if (i == 0) break;
    ++current[i - 1];
    for (std::size_t j = i; j < s; ++j) current[j] = current[j - 1] + 1;
  }
  if (best_fit_subset != best_rss_subset) {
    throw Error("bss: projection and residual forms selected different subsets");
  }
  BssResult out;
  out.support = SupportSet(std::move(best_fit_subset));
  out.fitted_norm_sq = best_fit;
  out.rss = best_rss;
  out.subsets_evaluated = evaluated;
  return out;
}

SupportSet bss_exhaustive(const Matrix& x, const Vector& y, std::size_t s, std::uint64_t budget) {
  return bss_search(x, y, s, budget).support;
}

}  // namespace srl
