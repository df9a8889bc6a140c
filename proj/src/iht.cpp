#include "srl/iht.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "srl/errors.hpp"

namespace srl {
namespace {

/// Sparse product X θ restricted to the nonzeros of θ.
Vector sparse_predict(const Matrix& x, const Vector& theta) {
  Vector out = Vector::Zero(x.rows());
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    if (theta[j] != 0.0) out.noalias() += theta[j] * x.col(j);
  }
  return out;
}

}  // namespace

void IhtConfig::validate(std::size_t n) const {
  if (s_hat > n) {
    throw InvalidArgument("iht: s_hat (= " + std::to_string(s_hat) + ") exceeds n (= " +
                          std::to_string(n) + ")");
  }
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("iht: step must be positive");
  if (max_iters < 1) throw InvalidArgument("iht: max_iters must be positive");
  if (!(rel_tol >= 0.0)) throw InvalidArgument("iht: rel_tol must be nonnegative");
  if (const auto* cv = std::get_if<CrossValidateSHat>(&s_hat_selection)) {
    if (cv->folds < 2) throw InvalidArgument("iht: cross-validation needs at least 2 folds");
    if (cv->grid.empty()) throw InvalidArgument("iht: cross-validation grid is empty");
  }
}

Vector hard_threshold(const Vector& v, std::size_t s_hat) {
  if (s_hat >= static_cast<std::size_t>(v.size())) return v;
  Vector out = Vector::Zero(v.size());
  for (std::size_t j : top_k_by_magnitude({v.data(), static_cast<std::size_t>(v.size())}, s_hat)) {
    const auto idx = static_cast<Eigen::Index>(j);
    out[idx] = v[idx];
  }
  return out;
}

IhtResult iht(const Matrix& x, const Vector& y, const IhtConfig& cfg) {
  if (x.rows() != y.size()) throw InvalidArgument("iht: x and y row counts differ");
  if (x.size() == 0) throw InvalidArgument("iht: empty design");
  cfg.validate(static_cast<std::size_t>(x.rows()));
  const double n = static_cast<double>(x.rows());
  const double gain = 2.0 * cfg.step / n;

  IhtResult out;
  out.beta = Vector::Zero(x.cols());
  Vector residual = y;
  double f_prev = residual.squaredNorm() / n;
  const double blow_up = kIhtBlowUpFactor * std::max(f_prev, 1e-300);
  out.obj_trace.push_back(f_prev);
  Vector candidate(x.cols());
  for (std::size_t t = 1; t <= cfg.max_iters; ++t) {
    candidate.noalias() = x.transpose() * residual;
    candidate = out.beta + gain * candidate;
    out.beta = hard_threshold(candidate, cfg.s_hat);
    residual = y - sparse_predict(x, out.beta);
    const double f = residual.squaredNorm() / n;
    out.obj_trace.push_back(f);
    out.iters = t;
    if (!std::isfinite(f) || (f > blow_up && f_prev > 0.0)) {
      std::ostringstream msg;
      msg << "iht: objective diverged (f = " << f << ") at iteration " << t << " with step h = "
          << cfg.step;
      throw ConvergenceError(msg.str());
    }
    if (std::abs(f - f_prev) <= cfg.rel_tol * std::max(f_prev, 1e-12)) break;
    f_prev = f;
  }
  return out;
}

double theoretical_step(const Matrix& x, std::size_t s_hat, const SeedStream& stream) {
  const auto p = static_cast<std::size_t>(x.cols());
  const std::size_t m = std::clamp<std::size_t>(2 * s_hat, 1, p);
  Sampler sampler = stream.sampler();
  std::set<std::size_t> chosen;
  for (std::size_t j = p - m; j < p; ++j) {
    const auto t = static_cast<std::size_t>(sampler.below(j + 1));
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  Matrix xs(x.rows(), static_cast<Eigen::Index>(m));
  Eigen::Index c = 0;
  for (std::size_t j : chosen) xs.col(c++) = x.col(static_cast<Eigen::Index>(j));
  const Matrix gram = xs.transpose() * xs / static_cast<double>(x.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
  const double lipschitz = 2.0 * eig.eigenvalues().maxCoeff();
  return 2.0 / (3.0 * lipschitz);
}

std::vector<std::size_t> default_s_hat_grid(std::size_t s, std::size_t n) {
  std::vector<std::size_t> grid;
  const std::size_t cap = n / 3;
  for (std::size_t mult : {1, 2, 4, 8}) {
    const std::size_t v = mult * s;
    if (v >= 1 && v <= cap) grid.push_back(v);
  }
  if (grid.empty()) grid.push_back(std::clamp<std::size_t>(s, 1, std::max<std::size_t>(n, 1)));
  return grid;
}

CvResult cross_validate(const Matrix& x, const Vector& y, const IhtConfig& cfg,
                        const SeedStream& stream) {
  const auto* cv = std::get_if<CrossValidateSHat>(&cfg.s_hat_selection);
  if (!cv) throw InvalidArgument("cross_validate: config is not in cross-validation mode");
  if (cv->folds < 2) throw InvalidArgument("cross_validate: folds must be at least 2");
  if (cv->grid.empty()) throw InvalidArgument("cross_validate: grid is empty");
  const auto n = static_cast<std::size_t>(x.rows());
  if (cv->folds > n) throw InvalidArgument("cross_validate: more folds than rows");
  const std::size_t fold_size = (n + cv->folds - 1) / cv->folds;

  CvResult out;
  out.grid = cv->grid;
  std::sort(out.grid.begin(), out.grid.end());
  out.grid.erase(std::unique(out.grid.begin(), out.grid.end()), out.grid.end());
  for (std::size_t g : out.grid) {
    if (g < 1 || g > n - fold_size) {
      throw InvalidArgument("cross_validate: grid value " + std::to_string(g) +
                            " outside [1, n - fold size] = [1, " + std::to_string(n - fold_size) +
                            "]");
    }
  }

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Sampler sampler = stream.sampler();
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[static_cast<std::size_t>(sampler.below(i + 1))]);
  }
  struct Fold {
    Matrix x_train, x_test;
    Vector y_train, y_test;
  };
  std::vector<Fold> folds(cv->folds);
  for (std::size_t f = 0; f < cv->folds; ++f) {
    std::vector<Eigen::Index> train, test;
    for (std::size_t i = 0; i < n; ++i) {
      (i % cv->folds == f ? test : train).push_back(static_cast<Eigen::Index>(perm[i]));
    }
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    folds[f].x_train = x(train, Eigen::all);
    folds[f].y_train = y(train);
    folds[f].x_test = x(test, Eigen::all);
    folds[f].y_test = y(test);
  }

  double best_error = std::numeric_limits<double>::infinity();
  IhtConfig inner = cfg;
  inner.s_hat_selection = FixedSHat{};
  for (std::size_t g : out.grid) {
    inner.s_hat = g;
    double sse = 0.0;
    bool diverged = false;
    for (const Fold& fold : folds) {
      try {
        const IhtResult fit = iht(fold.x_train, fold.y_train, inner);
        sse += (fold.y_test - fold.x_test * fit.beta).squaredNorm();
      } catch (const ConvergenceError&) {
        // Step too large for this projection size: the grid value is unusable.
        diverged = true;
        break;
      }
    }
    double mse = sse / static_cast<double>(n);
    if (diverged) mse = std::numeric_limits<double>::infinity();
    out.mean_sq_error.push_back(mse);
    if (mse < best_error) {
      best_error = mse;
      out.best = g;
    }
  }
  if (!std::isfinite(best_error)) {
    throw ConvergenceError("cross_validate: IHT diverged for every grid value (step h = " +
                           std::to_string(cfg.step) + ")");
  }
  return out;
}

std::size_t cross_validate_s_hat(const Matrix& x, const Vector& y, const IhtConfig& cfg,
                                 const SeedStream& stream) {
  return cross_validate(x, y, cfg, stream).best;
}

}  // namespace srl
