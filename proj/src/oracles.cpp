#include "srl/oracles.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "srl/errors.hpp"

namespace srl::oracle {

double normal_equations_rss(const Matrix& x, const Vector& y, const std::vector<std::size_t>& columns) {
  if (columns.empty()) return y.squaredNorm();
  Matrix xd(x.rows(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    xd.col(static_cast<Eigen::Index>(c)) = x.col(static_cast<Eigen::Index>(columns[c]));
  }
  const Matrix gram = xd.transpose() * xd;
  const Vector coef = gram.ldlt().solve(xd.transpose() * y);
  return (y - xd * coef).squaredNorm();
}

SupportSet brute_force_best_subset(const Matrix& x, const Vector& y, std::size_t s) {
  const auto p = static_cast<unsigned>(x.cols());
  if (p > 24) throw InvalidArgument("oracle: brute force limited to p <= 24");
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_cols;
  for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != s) continue;
    std::vector<std::size_t> cols;
    for (unsigned j = 0; j < p; ++j) {
      if (mask & (1u << j)) cols.push_back(j);
    }
    const double rss = normal_equations_rss(x, y, cols);
    if (rss < best) {
      best = rss;
      best_cols = cols;
    }
  }
  return SupportSet(std::move(best_cols));
}

double chi_mean(std::size_t n) {
  const double m = static_cast<double>(n);
  return std::sqrt(2.0) * std::exp(std::lgamma((m + 1.0) / 2.0) - std::lgamma(m / 2.0));
}

double delta_variance(const Vector& beta, const Vector& beta_hat, Eigen::Index i, double sigma) {
  double total = sigma * sigma;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    if (j == i) continue;
    const double d = beta[j] - beta_hat[j];
    total += d * d;
  }
  return total;
}

}  // namespace srl::oracle
