#include "srl/ets.hpp"

#include <algorithm>
#include <cmath>

#include "srl/errors.hpp"

namespace srl {
namespace {

struct Screening {
  Vector deltas;
  Vector norms;
};

Screening screen(const Matrix& x2, const Vector& y2, const Vector& beta_iht) {
  if (x2.rows() != y2.size()) throw InvalidArgument("ets_deltas: x and y row counts differ");
  if (x2.cols() != beta_iht.size()) throw InvalidArgument("ets_deltas: beta has wrong length");
  Vector residual = y2;
  for (Eigen::Index j = 0; j < beta_iht.size(); ++j) {
    if (beta_iht[j] != 0.0) residual.noalias() -= beta_iht[j] * x2.col(j);
  }
  Screening out;
  out.norms = x2.colwise().norm().transpose();
  out.deltas = x2.transpose() * residual;
  for (Eigen::Index i = 0; i < out.deltas.size(); ++i) {
    const double norm = out.norms[i];
    if (!(norm > 0.0)) {
      throw DegenerateModel("ets_deltas: column " + std::to_string(i) + " has zero norm");
    }
    out.deltas[i] = (out.deltas[i] + norm * norm * beta_iht[i]) / norm;
  }
  return out;
}

}  // namespace

Vector ets_deltas(const Matrix& x2, const Vector& y2, const Vector& beta_iht) {
  return screen(x2, y2, beta_iht).deltas;
}

double ets_threshold(double u_norm, double a, double varsigma, std::size_t p) {
  const double scaled = a * u_norm;
  return scaled / 2.0 + varsigma * varsigma * std::log(static_cast<double>(p)) / scaled;
}

EtsResult ets_run(const Matrix& x, const Vector& y, const EtsConfig& cfg, const SeedStream& stream) {
  if (!(cfg.varsigma > 0.0)) throw InvalidArgument("ets: varsigma must be positive");
  const bool thresholded = std::holds_alternative<EtsThresholded>(cfg.output);
  if (thresholded && !(cfg.a > 0.0)) {
    throw InvalidArgument("ets: thresholded output needs a positive minimum strength a");
  }

  DataSplit split;
  const bool use_split = std::holds_alternative<SplitSample>(cfg.sampling);
  if (use_split) {
    split = split_rows(x, y, std::get<SplitSample>(cfg.sampling).gamma, stream.derive("split"));
  }
  const Matrix& x1 = use_split ? split.x1 : x;
  const Vector& y1 = use_split ? split.y1 : y;
  const Matrix& x2 = use_split ? split.x2 : x;
  const Vector& y2 = use_split ? split.y2 : y;

  EtsResult out;
  IhtConfig iht_cfg = cfg.iht;
  if (const auto* cv = std::get_if<CrossValidateSHat>(&cfg.iht.s_hat_selection)) {
    IhtConfig cv_cfg = cfg.iht;
    if (cfg.step_rule == StepRule::Theoretical && !cv->grid.empty()) {
      // One step for the whole grid, sized for its largest ŝ.
      const std::size_t largest = *std::max_element(cv->grid.begin(), cv->grid.end());
      cv_cfg.step = theoretical_step(x1, largest, stream.derive("step").derive("cv"));
    }
    iht_cfg.s_hat = cross_validate_s_hat(x1, y1, cv_cfg, stream.derive("cv"));
    iht_cfg.s_hat_selection = FixedSHat{};
  }
  if (cfg.step_rule == StepRule::Theoretical) {
    iht_cfg.step = theoretical_step(x1, iht_cfg.s_hat, stream.derive("step"));
  }
  IhtResult fit = iht(x1, y1, iht_cfg);
  out.s_hat = iht_cfg.s_hat;
  out.step = iht_cfg.step;
  out.iht_iters = fit.iters;

  Screening stats = screen(x2, y2, fit.beta);
  const auto p = static_cast<std::size_t>(x.cols());
  if (thresholded) {
    std::vector<std::size_t> keep;
    for (Eigen::Index i = 0; i < stats.deltas.size(); ++i) {
      if (std::abs(stats.deltas[i]) > ets_threshold(stats.norms[i], cfg.a, cfg.varsigma, p)) {
        keep.push_back(static_cast<std::size_t>(i));
      }
    }
    out.support = SupportSet(std::move(keep));
  } else {
    const std::size_t s = std::get<EtsTopS>(cfg.output).s;
    if (s > p) throw InvalidArgument("ets: TopS s exceeds p");
    out.support = SupportSet(
        top_k_by_magnitude({stats.deltas.data(), static_cast<std::size_t>(stats.deltas.size())}, s));
  }
  out.deltas = std::move(stats.deltas);
  out.column_norms = std::move(stats.norms);
  out.beta_iht = std::move(fit.beta);
  return out;
}

SupportSet ets_select(const Matrix& x, const Vector& y, const EtsConfig& cfg,
                      const SeedStream& stream) {
  return ets_run(x, y, cfg, stream).support;
}

}  // namespace srl
