#pragma once

// Reference computations used only to check the selectors. They share no
// code path with the production kernels: subsets are enumerated as bitmasks
// and fitted through the normal equations.

#include "srl/simulate.hpp"

namespace srl::oracle {

/// Size-s subset minimizing RSS, by bitmask enumeration (p <= 24).
[[nodiscard]] SupportSet brute_force_best_subset(const Matrix& x, const Vector& y, std::size_t s);

/// RSS of y regressed on the listed columns, via Cholesky of the Gram matrix.
[[nodiscard]] double normal_equations_rss(const Matrix& x, const Vector& y,
                                          const std::vector<std::size_t>& columns);

/// E||g||_2 for g ~ N(0, I_n).
[[nodiscard]] double chi_mean(std::size_t n);

/// Conditional variance of Δ_i given the estimation sample:
/// sigma² + Σ_{j≠i} (β_j - β̂_j)².
[[nodiscard]] double delta_variance(const Vector& beta, const Vector& beta_hat, Eigen::Index i,
                                    double sigma = 1.0);

}  // namespace srl::oracle
