#pragma once

#include <variant>
#include <vector>

#include "srl/simulate.hpp"

namespace srl {

/// IHT is declared divergent once f exceeds this multiple of f(0).
inline constexpr double kIhtBlowUpFactor = 1e6;

struct FixedSHat {};
/// K-fold selection of ŝ from a grid by held-out squared prediction error.
struct CrossValidateSHat {
  std::vector<std::size_t> grid;
  std::size_t folds = 5;
};

struct IhtConfig {
  std::size_t s_hat = 1;
  double step = 0.5;
  std::size_t max_iters = 500;
  double rel_tol = 1e-8;
  std::variant<FixedSHat, CrossValidateSHat> s_hat_selection = FixedSHat{};

  void validate(std::size_t n) const;
};

struct IhtResult {
  Vector beta;
  std::size_t iters = 0;
  /// f(β^(0)), f(β^(1)), ..., one entry per iterate.
  std::vector<double> obj_trace;
};

/// Keeps the s_hat entries largest in magnitude (ties to the lowest index).
[[nodiscard]] Vector hard_threshold(const Vector& v, std::size_t s_hat);

/// IHT on f(θ) = ||y - Xθ||² / n with projection size cfg.s_hat, starting
/// from θ = 0. Stops once |f_t - f_{t-1}| <= rel_tol max(f_{t-1}, 1e-12) or
/// after max_iters updates. cfg.s_hat_selection is not consulted here.
/// Throws ConvergenceError if the objective turns non-finite or exceeds
/// kIhtBlowUpFactor f(0).
[[nodiscard]] IhtResult iht(const Matrix& x, const Vector& y, const IhtConfig& cfg);

/// h = 2 / (3 L) with L = 2 λ_max(X_S^T X_S / n) over a random set S of
/// min(p, 2 s_hat) columns.
[[nodiscard]] double theoretical_step(const Matrix& x, std::size_t s_hat, const SeedStream& stream);

/// {s, 2s, 4s, 8s} ∩ [1, n/3].
[[nodiscard]] std::vector<std::size_t> default_s_hat_grid(std::size_t s, std::size_t n);

struct CvResult {
  std::size_t best = 0;
  std::vector<std::size_t> grid;
  std::vector<double> mean_sq_error;  ///< pooled over all held-out rows
};

/// Requires cfg.s_hat_selection to be CrossValidateSHat. Fold membership is
/// a random permutation of rows dealt round-robin; ties go to the smaller ŝ.
/// A grid value whose IHT fit diverges on any fold scores +inf; if all do,
/// ConvergenceError is thrown.
[[nodiscard]] CvResult cross_validate(const Matrix& x, const Vector& y, const IhtConfig& cfg,
                                      const SeedStream& stream);
[[nodiscard]] std::size_t cross_validate_s_hat(const Matrix& x, const Vector& y,
                                               const IhtConfig& cfg, const SeedStream& stream);

}  // namespace srl
