#include "srl/simulate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "srl/errors.hpp"

namespace srl {
namespace {

std::string fmt_double(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

/// Floyd's algorithm: m distinct values from [0, bound), returned sorted.
std::vector<std::size_t> sample_without_replacement(Sampler& sampler, std::size_t bound,
                                                    std::size_t m) {
  std::set<std::size_t> chosen;
  for (std::size_t j = bound - m; j < bound; ++j) {
    const auto t = static_cast<std::size_t>(sampler.below(j + 1));
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  return {chosen.begin(), chosen.end()};
}

}  // namespace

double AurwmParams::a() const {
  return std::sqrt(2.0 * r * std::log(static_cast<double>(p)) / static_cast<double>(n));
}

void AurwmParams::validate() const {
  if (p < 2) throw InvalidArgument("p must be at least 2");
  if (n < 1) throw InvalidArgument("n = floor(p^k) must be at least 1");
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("r must be positive and finite");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("sigma must be positive");
  if (s < 1) throw InvalidArgument("s must be at least 1");
  if (s >= n) {
    throw InvalidArgument("s (= " + std::to_string(s) + ") must be < n (= " + std::to_string(n) +
                          ")");
  }
  if (s >= p) {
    throw InvalidArgument("s (= " + std::to_string(s) + ") must be < p (= " + std::to_string(p) +
                          ")");
  }
  const double amin = a();
  if (!(amin > 0.0) || !std::isfinite(amin)) throw InvalidArgument("a must be positive and finite");
}

std::size_t sample_size(std::size_t p, double k) {
  const double v = std::pow(static_cast<double>(p), k);
  auto n = static_cast<std::size_t>(std::floor(v));
  if (static_cast<double>(n + 1) - v < 1e-9 * v) ++n;
  return n;
}

AurwmParams aurwm_derive(std::size_t p, double k, double r, SparsityRule s_rule, double sigma) {
  if (p < 8) throw InvalidArgument("p (= " + std::to_string(p) + ") must be >= 8");
  if (!(k > 0.0 && k < 1.0)) throw InvalidArgument("k (= " + fmt_double(k) + ") must lie in (0, 1)");
  if (!(r > 0.0)) throw InvalidArgument("r (= " + fmt_double(r) + ") must be positive");
  AurwmParams params;
  params.p = p;
  params.k = k;
  params.r = r;
  params.sigma = sigma;
  params.n = sample_size(p, k);
  params.s = std::visit(
      [&](const auto& rule) -> std::size_t {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, TwoLogP>) {
          return static_cast<std::size_t>(std::floor(2.0 * std::log(static_cast<double>(p))));
        } else {
          return rule.s;
        }
      },
      s_rule);
  params.validate();
  return params;
}

double spike_value(const AurwmParams& params, std::size_t n_spike, double target_snr) {
  const double a2 = params.a() * params.a();
  const double s = static_cast<double>(params.s);
  const double value =
      std::sqrt((target_snr - s * a2) / static_cast<double>(n_spike) + a2);
  return std::max(value, params.a());
}

void check_signal_feasible(const SignalSpec& spec) {
  const AurwmParams& params = spec.params;
  params.validate();
  const double a2 = params.a() * params.a();
  const double s = static_cast<double>(params.s);
  std::visit(
      [&](const auto& pattern) {
        using T = std::decay_t<decltype(pattern)>;
        if constexpr (std::is_same_v<T, SingleSpikeSnr>) {
          if (!(pattern.target_snr >= s * a2)) {
            throw InfeasibleSignal("infeasible single-spike signal: target_snr (= " +
                                   fmt_double(pattern.target_snr) + ") < s*a^2 (= " +
                                   fmt_double(s * a2) + ")");
          }
        } else if constexpr (std::is_same_v<T, NSpike>) {
          if (pattern.n_spike > params.s) {
            throw InfeasibleSignal("infeasible spike signal: n_spike (= " +
                                   std::to_string(pattern.n_spike) + ") > s (= " +
                                   std::to_string(params.s) + ")");
          }
          if (pattern.n_spike > 0 && !(pattern.target_snr >= s * a2)) {
            throw InfeasibleSignal("infeasible spike signal: target_snr (= " +
                                   fmt_double(pattern.target_snr) + ") < s*a^2 (= " +
                                   fmt_double(s * a2) + ")");
          }
        } else if constexpr (std::is_same_v<T, BernoulliSpike>) {
          if (!(pattern.pi >= 0.0 && pattern.pi <= 1.0)) {
            throw InvalidArgument("pi (= " + fmt_double(pattern.pi) + ") must lie in [0, 1]");
          }
          if (pattern.pi > 0.0 && std::sqrt(params.r) < params.a()) {
            throw InfeasibleSignal("infeasible Bernoulli spike: sqrt(r) < a");
          }
        }
      },
      spec.pattern);
}

Matrix generate_design(std::size_t n, std::size_t p, const SeedStream& stream) {
  Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  Sampler sampler = stream.sampler();
  double* data = x.data();
  const std::size_t total = n * p;
  for (std::size_t i = 0; i < total; ++i) data[i] = sampler.normal();
  return x;
}

Matrix generate_design(const AurwmParams& params, const SeedStream& stream) {
  return generate_design(params.n, params.p, stream);
}

Signal generate_signal(const SignalSpec& spec, const SeedStream& stream) {
  check_signal_feasible(spec);
  const AurwmParams& params = spec.params;
  const std::size_t s = params.s;
  const double a = params.a();

  std::vector<std::size_t> support;
  if (spec.support_rule == SupportRule::FirstS) {
    support.resize(s);
    std::iota(support.begin(), support.end(), std::size_t{0});
  } else {
    Sampler support_sampler = stream.derive("support").sampler();
    support = sample_without_replacement(support_sampler, params.p, s);
  }

  // Magnitudes in support order.
  std::vector<double> values(s, a);
  Sampler value_sampler = stream.derive("values").sampler();
  std::visit(
      [&](const auto& pattern) {
        using T = std::decay_t<decltype(pattern)>;
        if constexpr (std::is_same_v<T, SingleSpikeSnr>) {
          const double rest = pattern.target_snr - static_cast<double>(s - 1) * a * a;
          const auto where = static_cast<std::size_t>(value_sampler.below(s));
          values[where] = std::max(std::sqrt(rest), a);
        } else if constexpr (std::is_same_v<T, BernoulliSpike>) {
          const double n = static_cast<double>(params.n);
          for (auto& v : values) {
            const double z = value_sampler.normal();
            const bool spike = value_sampler.bernoulli(pattern.pi);
            v = spike ? std::sqrt(params.r) : std::sqrt(1.0 + z * z / n) * a;
          }
        } else if constexpr (std::is_same_v<T, NSpike>) {
          if (pattern.n_spike > 0) {
            const double spike = spike_value(params, pattern.n_spike, pattern.target_snr);
            for (std::size_t where : sample_without_replacement(value_sampler, s, pattern.n_spike)) {
              values[where] = spike;
            }
          }
        }
      },
      spec.pattern);

  if (spec.random_signs) {
    Sampler sign_sampler = stream.derive("signs").sampler();
    for (auto& v : values) {
      if (sign_sampler.bernoulli(0.5)) v = -v;
    }
  }

  Signal signal;
  signal.beta = Vector::Zero(static_cast<Eigen::Index>(params.p));
  for (std::size_t i = 0; i < s; ++i) signal.beta[static_cast<Eigen::Index>(support[i])] = values[i];
  signal.support = SupportSet(std::move(support));

  // Signal-class membership and SNR pinning.
  std::size_t nnz = 0;
  for (Eigen::Index j = 0; j < signal.beta.size(); ++j) {
    if (signal.beta[j] != 0.0) {
      ++nnz;
      if (std::abs(signal.beta[j]) < a) throw Error("generated coefficient below minimum strength a");
    }
  }
  if (nnz != s) throw Error("generated signal does not have exactly s nonzeros");
  const double snr = signal.beta.squaredNorm();
  const auto* single = std::get_if<SingleSpikeSnr>(&spec.pattern);
  const auto* nspike = std::get_if<NSpike>(&spec.pattern);
  double target = -1.0;
  if (single) target = single->target_snr;
  if (nspike && nspike->n_spike > 0) target = nspike->target_snr;
  if (target > 0.0 && std::abs(snr - target) > 1e-10 * target) {
    throw Error("generated signal misses its SNR target");
  }
  return signal;
}

Response simulate_response(const Matrix& x, const Vector& beta, double sigma,
                           const SeedStream& stream) {
  if (x.cols() != beta.size()) {
    throw InvalidArgument("simulate_response: x has " + std::to_string(x.cols()) +
                          " columns but beta has length " + std::to_string(beta.size()));
  }
  if (!(sigma > 0.0)) throw InvalidArgument("simulate_response: sigma must be positive");
  Response out;
  out.noise.resize(x.rows());
  Sampler sampler = stream.sampler();
  for (Eigen::Index i = 0; i < x.rows(); ++i) out.noise[i] = sigma * sampler.normal();
  out.y = out.noise;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    if (beta[j] != 0.0) out.y.noalias() += beta[j] * x.col(j);
  }
  return out;
}

Dataset make_dataset(const SignalSpec& spec, const SeedStream& stream) {
  Dataset d;
  Signal signal = generate_signal(spec, stream.derive("signal"));
  d.x = generate_design(spec.params, stream.derive("design"));
  Response response = simulate_response(d.x, signal.beta, spec.params.sigma, stream.derive("noise"));
  d.y = std::move(response.y);
  d.beta = std::move(signal.beta);
  d.support = std::move(signal.support);
  d.seed_trace = stream.trace();
  return d;
}

DataSplit split_rows(const Matrix& x, const Vector& y, double gamma, const SeedStream& stream) {
  if (x.rows() != y.size()) throw InvalidArgument("split: x and y row counts differ");
  if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidArgument("split: gamma must lie in (0, 1)");
  const auto n = static_cast<std::size_t>(x.rows());
  const auto n1 = static_cast<std::size_t>(std::floor(gamma * static_cast<double>(n)));
  if (n1 < 1 || n - n1 < 1) {
    throw InvalidArgument("split: degenerate sizes (" + std::to_string(n1) + ", " +
                          std::to_string(n - n1) + ") for n = " + std::to_string(n));
  }
  std::vector<Eigen::Index> perm(n);
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  Sampler sampler = stream.sampler();
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(sampler.below(i + 1));
    std::swap(perm[i], perm[j]);
  }
  DataSplit out;
  out.rows1.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n1));
  out.rows2.assign(perm.begin() + static_cast<std::ptrdiff_t>(n1), perm.end());
  std::sort(out.rows1.begin(), out.rows1.end());
  std::sort(out.rows2.begin(), out.rows2.end());
  out.x1 = x(out.rows1, Eigen::all);
  out.y1 = y(out.rows1);
  out.x2 = x(out.rows2, Eigen::all);
  out.y2 = y(out.rows2);
  return out;
}

DataSplit split_dataset(const Dataset& d, double gamma, const SeedStream& stream) {
  return split_rows(d.x, d.y, gamma, stream);
}

std::uint64_t dataset_digest(const Dataset& d) {
  std::uint64_t h = fnv1a64("dataset");
  auto absorb = [&h](const double* data, Eigen::Index count) {
    for (Eigen::Index i = 0; i < count; ++i) h = combine64(h, std::bit_cast<std::uint64_t>(data[i]));
  };
  h = combine64(h, static_cast<std::uint64_t>(d.x.rows()));
  h = combine64(h, static_cast<std::uint64_t>(d.x.cols()));
  absorb(d.x.data(), d.x.size());
  absorb(d.y.data(), d.y.size());
  absorb(d.beta.data(), d.beta.size());
  return h;
}

}  // namespace srl
