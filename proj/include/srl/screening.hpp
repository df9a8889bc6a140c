#pragma once

#include <variant>

#include "srl/simulate.hpp"

namespace srl {

/// Keep the s largest |μ_j|.
struct MsTopS {
  std::size_t s = 0;
};
/// Keep every j with |μ_j| >= tau.
struct MsThreshold {
  double tau = 0.0;
};
struct MsConfig {
  std::variant<MsTopS, MsThreshold> mode = MsTopS{};
};

/// μ_j = X_j^T y / n.
[[nodiscard]] Vector marginal_correlations(const Matrix& x, const Vector& y);

/// Ties in TopS mode go to the lowest index.
[[nodiscard]] SupportSet ms_select(const Vector& mu, const MsConfig& cfg);

}  // namespace srl
