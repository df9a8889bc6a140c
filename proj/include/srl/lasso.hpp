#pragma once

// LASSO competitor: minimizes ||y - Xβ||² / (2n) + λ ||β||_1 by cyclic
// coordinate descent with warm starts along a geometric λ path.

#include <string>
#include <vector>

#include "srl/simulate.hpp"

namespace srl {

struct LassoConfig {
  std::size_t target_sparsity = 1;
  double lambda_max_scale = 1.0;
  std::size_t path_length = 100;
  double path_ratio = 1e-3;
  /// Stopping tolerance on the KKT residual |X_j^T(y - Xβ)/n - λ sign β_j|.
  double cd_tol = 1e-7;
  std::size_t cd_max_sweeps = 100000;

  void validate(std::size_t n, std::size_t p) const;
};

struct LassoFit {
  Vector beta;
  double lambda = 0.0;
  std::size_t sweeps = 0;
  [[nodiscard]] std::size_t active_size() const;
};

struct LassoSelection {
  SupportSet support;
  double lambda = 0.0;
  std::size_t path_points = 0;   ///< fits computed along the grid
  std::size_t bisections = 0;
  bool trimmed = false;          ///< exact size s never hit; trimmed by |β̂_j|
  bool padded = false;           ///< path never reached s; padded by |μ_j|
  std::vector<LassoFit> fits;    ///< every solution visited (only when recorded)
  std::vector<std::string> flags;
};

/// max_j |X_j^T y| / n.
[[nodiscard]] double lasso_lambda_max(const Matrix& x, const Vector& y);

/// Solution at one λ, optionally warm-started. Throws ConvergenceError when
/// the sweep budget runs out before the KKT residual drops below cd_tol.
[[nodiscard]] LassoFit lasso_fit(const Matrix& x, const Vector& y, double lambda,
                                 const LassoConfig& cfg, const Vector* warm_start = nullptr);

/// Largest KKT violation of β at λ (0 at an exact solution).
[[nodiscard]] double lasso_kkt_violation(const Matrix& x, const Vector& y, const Vector& beta,
                                         double lambda);

/// Walks the path until the active set reaches target_sparsity, bisecting λ
/// on overshoot, then trims (or, as a last resort, pads) to exactly s.
[[nodiscard]] LassoSelection lasso_select_detailed(const Matrix& x, const Vector& y,
                                                   const LassoConfig& cfg,
                                                   bool record_fits = false);
[[nodiscard]] SupportSet lasso_select(const Matrix& x, const Vector& y, const LassoConfig& cfg);

}  // namespace srl
