#pragma once

#include "srl/simulate.hpp"

namespace srl {

struct ProjectionFit {
  double rss = 0.0;             ///< ||(I - P_D) y||²
  double fitted_norm_sq = 0.0;  ///< ||P_D y||²
};

/// Least-squares projection of y onto span(X_D) via Householder QR.
/// Throws DegenerateModel if |D| > n or some |R_ii| < 1e-10 ||X_D||_F.
[[nodiscard]] ProjectionFit projection_fit(const Matrix& x, const Vector& y, const SupportSet& d);
[[nodiscard]] ProjectionFit projection_fit(const Matrix& x, const Vector& y,
                                           std::span<const std::size_t> columns);

}  // namespace srl
