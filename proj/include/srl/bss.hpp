#pragma once

#include <cstdint>

#include "srl/projection.hpp"

namespace srl {

inline constexpr std::uint64_t kDefaultBssBudget = 2'000'000;

/// C(p, s), saturating at UINT64_MAX.
[[nodiscard]] std::uint64_t binomial(std::uint64_t p, std::uint64_t s) noexcept;

struct BssResult {
  SupportSet support;
  double fitted_norm_sq = 0.0;
  double rss = 0.0;
  std::uint64_t subsets_evaluated = 0;
};

/// Exhaustive best subset of size s. Scans subsets in lexicographic order,
/// tracking argmax ||P_D y||² and argmin RSS independently; they must agree.
/// Throws BudgetExceeded when C(p, s) > budget.
[[nodiscard]] BssResult bss_search(const Matrix& x, const Vector& y, std::size_t s,
                                   std::uint64_t budget = kDefaultBssBudget);

[[nodiscard]] SupportSet bss_exhaustive(const Matrix& x, const Vector& y, std::size_t s,
                                        std::uint64_t budget = kDefaultBssBudget);

}  // namespace srl
