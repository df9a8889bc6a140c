#include "srl/screening.hpp"

#include <cmath>

#include "srl/errors.hpp"

namespace srl {

Vector marginal_correlations(const Matrix& x, const Vector& y) {
  if (x.rows() != y.size()) throw InvalidArgument("marginal_correlations: x and y row counts differ");
  Vector mu = x.transpose() * y;
  mu /= static_cast<double>(x.rows());
  return mu;
}

SupportSet ms_select(const Vector& mu, const MsConfig& cfg) {
  if (const auto* top = std::get_if<MsTopS>(&cfg.mode)) {
    if (top->s > static_cast<std::size_t>(mu.size())) {
      throw InvalidArgument("ms_select: TopS s exceeds p");
    }
    return SupportSet(top_k_by_magnitude({mu.data(), static_cast<std::size_t>(mu.size())}, top->s));
  }
  const double tau = std::get<MsThreshold>(cfg.mode).tau;
  if (!(tau >= 0.0)) throw InvalidArgument("ms_select: threshold must be nonnegative");
  std::vector<std::size_t> keep;
  for (Eigen::Index j = 0; j < mu.size(); ++j) {
    if (std::abs(mu[j]) >= tau) keep.push_back(static_cast<std::size_t>(j));
  }
  return SupportSet(std::move(keep));
}

}  // namespace srl
