#pragma once

// Estimate Then Screen: an IHT estimate followed by coordinatewise screening
// of the leave-one-out statistic
//   Δ_i = X_i^T (y - Σ_{j≠i} X_j β̂_j) / ||X_i||.

#include <variant>

#include "srl/iht.hpp"

namespace srl {

/// Estimate on floor(gamma n) random rows, screen on the rest.
struct SplitSample {
  double gamma = 0.5;
};
/// Estimate and screen on the full sample.
struct FullData {};

/// Select i with |Δ_i| > κ_ς(||X_i||).
struct EtsThresholded {};
/// Select the s largest |Δ_i|, ties to the lowest index.
struct EtsTopS {
  std::size_t s = 0;
};

enum class StepRule { Fixed, Theoretical };

struct EtsConfig {
  std::variant<SplitSample, FullData> sampling = FullData{};
  double varsigma = 1.05;
  /// Assumed minimum signal strength; used only by the thresholded output.
  double a = 0.0;
  std::variant<EtsThresholded, EtsTopS> output = EtsTopS{};
  IhtConfig iht;
  StepRule step_rule = StepRule::Fixed;
};

struct EtsResult {
  SupportSet support;
  Vector deltas;
  Vector column_norms;  ///< ||X_i|| over the screening sample
  Vector beta_iht;
  std::size_t s_hat = 0;
  double step = 0.0;
  std::size_t iht_iters = 0;
};

/// Computed as (X_i^T R + ||X_i||² β̂_i) / ||X_i|| with R = y - X β̂.
/// Throws DegenerateModel on a zero-norm column.
[[nodiscard]] Vector ets_deltas(const Matrix& x2, const Vector& y2, const Vector& beta_iht);

/// κ_ς(u) = a u / 2 + ς² log p / (a u).
[[nodiscard]] double ets_threshold(double u_norm, double a, double varsigma, std::size_t p);

[[nodiscard]] EtsResult ets_run(const Matrix& x, const Vector& y, const EtsConfig& cfg,
                                const SeedStream& stream);
[[nodiscard]] SupportSet ets_select(const Matrix& x, const Vector& y, const EtsConfig& cfg,
                                    const SeedStream& stream);

}  // namespace srl
