#include "srl/lasso.hpp"

#include <algorithm>
#include <cmath>

#include "srl/errors.hpp"
#include "srl/screening.hpp"

namespace srl {
namespace {

constexpr int kBisections = 20;

double soft_threshold(double z, double lambda) {
  if (z > lambda) return z - lambda;
  if (z < -lambda) return z + lambda;
  return 0.0;
}

class CoordinateDescent {
 public:
  CoordinateDescent(const Matrix& x, const Vector& y, const LassoConfig& cfg)
      : x_(x), y_(y), cfg_(cfg), n_(static_cast<double>(x.rows())) {
    col_sq_ = x.colwise().squaredNorm().transpose() / n_;
  }

  LassoFit solve(double lambda, const Vector* warm) {
    LassoFit fit;
    fit.lambda = lambda;
    fit.beta = warm ? *warm : Vector::Zero(x_.cols());
    Vector residual = y_;
    for (Eigen::Index j = 0; j < fit.beta.size(); ++j) {
      if (fit.beta[j] != 0.0) residual.noalias() -= fit.beta[j] * x_.col(j);
    }
    const double inner_tol = 0.1 * cfg_.cd_tol;
    std::vector<Eigen::Index> all(static_cast<std::size_t>(x_.cols()));
    for (Eigen::Index j = 0; j < x_.cols(); ++j) all[static_cast<std::size_t>(j)] = j;
    std::vector<Eigen::Index> active;
    while (true) {
      double change = sweep(all, lambda, fit.beta, residual);
      ++fit.sweeps;
      active.clear();
      for (Eigen::Index j = 0; j < fit.beta.size(); ++j) {
        if (fit.beta[j] != 0.0) active.push_back(j);
      }
      while (change > inner_tol && fit.sweeps < cfg_.cd_max_sweeps) {
        change = sweep(active, lambda, fit.beta, residual);
        ++fit.sweeps;
      }
      if (kkt_violation(fit.beta, residual, lambda) <= cfg_.cd_tol) break;
      if (fit.sweeps >= cfg_.cd_max_sweeps) {
        throw ConvergenceError("lasso: coordinate descent exhausted " +
                               std::to_string(cfg_.cd_max_sweeps) + " sweeps at lambda = " +
                               std::to_string(lambda));
      }
    }
    return fit;
  }

  double kkt_violation(const Vector& beta, const Vector& residual, double lambda) const {
    const Vector grad = x_.transpose() * residual / n_;
    double worst = 0.0;
    for (Eigen::Index j = 0; j < beta.size(); ++j) {
      const double v = beta[j] == 0.0 ? std::max(0.0, std::abs(grad[j]) - lambda)
                                      : std::abs(grad[j] - (beta[j] > 0 ? lambda : -lambda));
      worst = std::max(worst, v);
    }
    return worst;
  }

 private:
  /// One cyclic pass; returns the largest |Δβ_j| ||X_j||²/n.
  double sweep(const std::vector<Eigen::Index>& coords, double lambda, Vector& beta,
               Vector& residual) const {
    double largest = 0.0;
    for (Eigen::Index j : coords) {
      const double cj = col_sq_[j];
      if (cj == 0.0) continue;
      const double old = beta[j];
      const double z = x_.col(j).dot(residual) / n_ + cj * old;
      const double updated = soft_threshold(z, lambda) / cj;
      const double delta = updated - old;
      if (delta != 0.0) {
        residual.noalias() -= delta * x_.col(j);
        beta[j] = updated;
        largest = std::max(largest, std::abs(delta) * cj);
      }
    }
    return largest;
  }

  const Matrix& x_;
  const Vector& y_;
  const LassoConfig& cfg_;
  double n_;
  Vector col_sq_;
};

SupportSet trim_to(const Vector& beta, std::size_t s) {
  return SupportSet(top_k_by_magnitude({beta.data(), static_cast<std::size_t>(beta.size())}, s));
}

}  // namespace

void LassoConfig::validate(std::size_t n, std::size_t p) const {
  if (target_sparsity < 1 || target_sparsity > std::min(n, p)) {
    throw InvalidArgument("lasso: target_sparsity (= " + std::to_string(target_sparsity) +
                          ") must lie in [1, min(n, p)]");
  }
  if (!(lambda_max_scale > 0.0)) throw InvalidArgument("lasso: lambda_max_scale must be positive");
  if (path_length < 1) throw InvalidArgument("lasso: path_length must be positive");
  if (!(path_ratio > 0.0 && path_ratio < 1.0)) {
    throw InvalidArgument("lasso: path_ratio must lie in (0, 1)");
  }
  if (!(cd_tol > 0.0)) throw InvalidArgument("lasso: cd_tol must be positive");
  if (cd_max_sweeps < 1) throw InvalidArgument("lasso: cd_max_sweeps must be positive");
}

std::size_t LassoFit::active_size() const {
  return static_cast<std::size_t>((beta.array() != 0.0).count());
}

double lasso_lambda_max(const Matrix& x, const Vector& y) {
  return marginal_correlations(x, y).cwiseAbs().maxCoeff();
}

LassoFit lasso_fit(const Matrix& x, const Vector& y, double lambda, const LassoConfig& cfg,
                   const Vector* warm_start) {
  if (x.rows() != y.size()) throw InvalidArgument("lasso: x and y row counts differ");
  if (!(lambda >= 0.0)) throw InvalidArgument("lasso: lambda must be nonnegative");
  CoordinateDescent cd(x, y, cfg);
  return cd.solve(lambda, warm_start);
}

double lasso_kkt_violation(const Matrix& x, const Vector& y, const Vector& beta, double lambda) {
  CoordinateDescent cd(x, y, LassoConfig{});
  Vector residual = y - x * beta;
  return cd.kkt_violation(beta, residual, lambda);
}

LassoSelection lasso_select_detailed(const Matrix& x, const Vector& y, const LassoConfig& cfg,
                                     bool record_fits) {
  if (x.rows() != y.size()) throw InvalidArgument("lasso: x and y row counts differ");
  const auto p = static_cast<std::size_t>(x.cols());
  cfg.validate(static_cast<std::size_t>(x.rows()), p);
  const std::size_t target = cfg.target_sparsity;
  CoordinateDescent cd(x, y, cfg);

  LassoSelection out;
  auto finish_exact = [&](const LassoFit& fit) {
    out.support = trim_to(fit.beta, target);
    out.lambda = fit.lambda;
  };

  const double lambda_top = cfg.lambda_max_scale * lasso_lambda_max(x, y);
  Vector prev_beta = Vector::Zero(x.cols());
  double prev_lambda = lambda_top;
  for (std::size_t k = 0; k < cfg.path_length; ++k) {
    const double frac =
        cfg.path_length == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(cfg.path_length - 1);
    const double lambda = lambda_top * std::pow(cfg.path_ratio, frac);
    LassoFit fit = cd.solve(lambda, &prev_beta);
    ++out.path_points;
    if (record_fits) out.fits.push_back(fit);
    const std::size_t size = fit.active_size();
    if (size == target) {
      finish_exact(fit);
      return out;
    }
    if (size > target) {
      // Overshoot: bisect (geometrically) between the last undershooting λ and this one.
      double hi = prev_lambda;
      double lo = lambda;
      Vector hi_beta = prev_beta;
      LassoFit best_over = fit;
      for (int b = 0; b < kBisections; ++b) {
        const double mid = std::sqrt(hi * lo);
        LassoFit trial = cd.solve(mid, &hi_beta);
        ++out.bisections;
        if (record_fits) out.fits.push_back(trial);
        const std::size_t trial_size = trial.active_size();
        if (trial_size == target) {
          finish_exact(trial);
          return out;
        }
        if (trial_size > target) {
          lo = mid;
          best_over = std::move(trial);
        } else {
          hi = mid;
          hi_beta = trial.beta;
        }
      }
      out.support = trim_to(best_over.beta, target);
      out.lambda = best_over.lambda;
      out.trimmed = true;
      out.flags.push_back("lasso_trimmed");
      return out;
    }
    prev_beta = fit.beta;
    prev_lambda = lambda;
  }

  // The whole path stayed below the target size: pad by marginal ranking.
  std::vector<std::size_t> chosen;
  for (Eigen::Index j = 0; j < prev_beta.size(); ++j) {
    if (prev_beta[j] != 0.0) chosen.push_back(static_cast<std::size_t>(j));
  }
  const Vector mu = marginal_correlations(x, y);
  for (std::size_t j : top_k_by_magnitude({mu.data(), p}, p)) {
    if (chosen.size() >= target) break;
    if (prev_beta[static_cast<Eigen::Index>(j)] == 0.0) chosen.push_back(j);
  }
  out.support = SupportSet(std::move(chosen));
  out.lambda = prev_lambda;
  out.padded = true;
  out.flags.push_back("lasso_padded");
  return out;
}

SupportSet lasso_select(const Matrix& x, const Vector& y, const LassoConfig& cfg) {
  return lasso_select_detailed(x, y, cfg).support;
}

}  // namespace srl
