#pragma once

// Synthetic data for the sparse linear model y = Xβ + e under the AURWM
// scaling: n = floor(p^k), a = sqrt(2 r log p / n), s = O(log p).

#include <Eigen/Dense>
#include <cstdint>
#include <variant>

#include "srl/rng.hpp"
#include "srl/support_set.hpp"

namespace srl {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct AurwmParams {
  std::size_t p = 0;
  std::size_t n = 0;
  double k = 0.0;
  double r = 0.0;
  std::size_t s = 0;
  double sigma = 1.0;

  /// Minimum signal strength sqrt(2 r log p / n).
  [[nodiscard]] double a() const;
  /// Throws InvalidArgument if any invariant fails.
  void validate() const;
};

/// s = floor(2 log p).
struct TwoLogP {
  friend bool operator==(const TwoLogP&, const TwoLogP&) = default;
};
struct ExplicitS {
  std::size_t s = 0;
  friend bool operator==(const ExplicitS&, const ExplicitS&) = default;
};
using SparsityRule = std::variant<TwoLogP, ExplicitS>;

/// floor(p^k), robust to p^k landing a hair below an integer.
[[nodiscard]] std::size_t sample_size(std::size_t p, double k);

/// Requires p >= 8, 0 < k < 1, r > 0, sigma > 0; rejects s >= n or s >= p.
[[nodiscard]] AurwmParams aurwm_derive(std::size_t p, double k, double r, SparsityRule s_rule,
                                       double sigma = 1.0);

// Coefficient patterns on the support.
struct Homogeneous {
  friend bool operator==(const Homogeneous&, const Homogeneous&) = default;
};
/// s-1 coordinates at a and one spike holding the rest of ||β||² = target_snr.
struct SingleSpikeSnr {
  double target_snr = 10.0;
  friend bool operator==(const SingleSpikeSnr&, const SingleSpikeSnr&) = default;
};
/// β_j = (1 - b_j) sqrt(1 + Z_j²/n) a + b_j sqrt(r), b_j ~ Ber(pi), Z_j ~ N(0,1).
struct BernoulliSpike {
  double pi = 0.0;
  friend bool operator==(const BernoulliSpike&, const BernoulliSpike&) = default;
};
/// s - n_spike coordinates at a, n_spike at a_spike = sqrt((T - s a²)/n_spike + a²).
struct NSpike {
  std::size_t n_spike = 0;
  double target_snr = 2.0;
  friend bool operator==(const NSpike&, const NSpike&) = default;
};
using SignalPattern = std::variant<Homogeneous, SingleSpikeSnr, BernoulliSpike, NSpike>;

enum class SupportRule { UniformRandom, FirstS };

struct SignalSpec {
  AurwmParams params;
  SignalPattern pattern = Homogeneous{};
  SupportRule support_rule = SupportRule::UniformRandom;
  bool random_signs = false;
};

struct Signal {
  Vector beta;
  SupportSet support;
};

/// Throws InfeasibleSignal naming the violated inequality; no-op otherwise.
void check_signal_feasible(const SignalSpec& spec);

/// Spike magnitude for NSpike with n_spike > 0.
[[nodiscard]] double spike_value(const AurwmParams& params, std::size_t n_spike, double target_snr);

[[nodiscard]] Matrix generate_design(const AurwmParams& params, const SeedStream& stream);
[[nodiscard]] Matrix generate_design(std::size_t n, std::size_t p, const SeedStream& stream);

[[nodiscard]] Signal generate_signal(const SignalSpec& spec, const SeedStream& stream);

struct Response {
  Vector y;
  Vector noise;
};

[[nodiscard]] Response simulate_response(const Matrix& x, const Vector& beta, double sigma,
                                         const SeedStream& stream);

/// Immutable simulated sample.
struct Dataset {
  Matrix x;
  Vector y;
  Vector beta;
  SupportSet support;
  SeedTrace seed_trace;
};

/// Design, signal, and noise drawn from independent children of `stream`.
[[nodiscard]] Dataset make_dataset(const SignalSpec& spec, const SeedStream& stream);

/// Row partition into a first part of floor(gamma n) rows and the rest.
struct DataSplit {
  Matrix x1;
  Vector y1;
  Matrix x2;
  Vector y2;
  std::vector<Eigen::Index> rows1;
  std::vector<Eigen::Index> rows2;
};

[[nodiscard]] DataSplit split_rows(const Matrix& x, const Vector& y, double gamma,
                                   const SeedStream& stream);
[[nodiscard]] DataSplit split_dataset(const Dataset& d, double gamma, const SeedStream& stream);

/// Order-sensitive 64-bit digest of a dataset's bytes, for pairing checks.
[[nodiscard]] std::uint64_t dataset_digest(const Dataset& d);

}  // namespace srl
