#include <gtest/gtest.h>

#include <cmath>

#include "srl/errors.hpp"
#include "srl/simulate.hpp"
#include "test_util.hpp"

using namespace srl;

TEST(Aurwm, SampleSizeAtStandardScale) {
  EXPECT_EQ(sample_size(2000, 0.9), 935u);
  EXPECT_EQ(aurwm_derive(2000, 0.9, 2.0, ExplicitS{13}).n, 935u);
  EXPECT_EQ(sample_size(500, 0.9), 268u);
  EXPECT_EQ(sample_size(1000, 0.9), 501u);
  EXPECT_EQ(sample_size(4000, 0.9), 1745u);
  EXPECT_EQ(sample_size(8000, 0.9), 3256u);
}

TEST(Aurwm, MinimumStrengthMatchesHighPrecisionValue) {
  const AurwmParams prm = aurwm_derive(2000, 0.9, 2.0, TwoLogP{});
  // sqrt(2·2·ln 2000 / 935), 50-digit evaluation.
  EXPECT_NEAR(prm.a(), 0.180325344234919, 1e-14);
  EXPECT_EQ(prm.s, 15u);
}

TEST(Aurwm, RejectsInvalidParameters) {
  // n = floor(8^0.01) = 1, so any s >= 1 violates s < n.
  EXPECT_THROW((void)aurwm_derive(8, 0.01, 2.0, ExplicitS{1}), InvalidArgument);
  EXPECT_THROW((void)aurwm_derive(2000, 1.0, 2.0, TwoLogP{}), InvalidArgument);
  EXPECT_THROW((void)aurwm_derive(2000, 0.0, 2.0, TwoLogP{}), InvalidArgument);
  EXPECT_THROW((void)aurwm_derive(2000, 0.9, 0.0, TwoLogP{}), InvalidArgument);
  EXPECT_THROW((void)aurwm_derive(2000, 0.9, 2.0, ExplicitS{935}), InvalidArgument);
  EXPECT_THROW((void)aurwm_derive(4, 0.9, 2.0, ExplicitS{1}), InvalidArgument);
}

TEST(Design, Deterministic) {
  const Matrix a = generate_design(30, 20, test::stream(1));
  const Matrix b = generate_design(30, 20, test::stream(1));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, generate_design(30, 20, test::stream(2)));
}

TEST(Design, StandardNormalMoments) {
  const Matrix x = generate_design(10000, 1, test::stream(3));
  const double mean = x.mean();
  const double var = (x.array() - mean).square().sum() / (x.rows() - 1);
  EXPECT_GT(mean, -0.05);
  EXPECT_LT(mean, 0.05);
  EXPECT_GT(var, 0.94);
  EXPECT_LT(var, 1.06);
}

TEST(Design, ColumnsUncorrelated) {
  const Matrix x = generate_design(2000, 2, test::stream(4));
  const Vector a = x.col(0).array() - x.col(0).mean();
  const Vector b = x.col(1).array() - x.col(1).mean();
  const double corr = a.dot(b) / (a.norm() * b.norm());
  EXPECT_GT(corr, -0.07);
  EXPECT_LT(corr, 0.07);
}

namespace {
SignalSpec standard_spec(SignalPattern pattern, std::size_t s = 13) {
  return SignalSpec{aurwm_derive(2000, 0.9, 2.0, ExplicitS{s}), pattern, SupportRule::UniformRandom, false};
}
}  // namespace

TEST(Signal, SpikeMagnitudeForOneSpike) {
  const AurwmParams prm = aurwm_derive(2000, 0.9, 2.0, ExplicitS{13});
  // sqrt((2 - 13 a²) + a²), 50-digit evaluation.
  EXPECT_NEAR(spike_value(prm, 1, 2.0), 1.268776277646574, 1e-12);
  const Signal sig = generate_signal(standard_spec(NSpike{1, 2.0}), test::stream(5));
  EXPECT_NEAR(sig.beta.squaredNorm(), 2.0, 1e-12);
  int spikes = 0;
  for (std::size_t j : sig.support) {
    const double b = sig.beta[static_cast<Eigen::Index>(j)];
    if (std::abs(b - prm.a()) > 1e-12) {
      ++spikes;
      EXPECT_NEAR(b, 1.268776277646574, 1e-12);
    }
  }
  EXPECT_EQ(spikes, 1);
}

TEST(Signal, NSpikeSnrPinnedForEveryCount) {
  for (std::size_t m = 1; m <= 6; ++m) {
    const Signal sig = generate_signal(standard_spec(NSpike{m, 2.0}), test::stream(6, m));
    EXPECT_NEAR(sig.beta.squaredNorm(), 2.0, 1e-12) << m;
  }
}

TEST(Signal, ZeroSpikesIsHomogeneous) {
  const SignalSpec spec = standard_spec(NSpike{0, 2.0});
  const Signal sig = generate_signal(spec, test::stream(7));
  ASSERT_EQ(sig.support.size(), 13u);
  for (std::size_t j : sig.support) EXPECT_EQ(sig.beta[static_cast<Eigen::Index>(j)], spec.params.a());
  EXPECT_EQ((sig.beta.array() != 0.0).count(), 13);
}

TEST(Signal, BernoulliWithoutSpikesStaysAboveMinimum) {
  const SignalSpec spec = standard_spec(BernoulliSpike{0.0});
  const double a = spec.params.a();
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    const Signal sig = generate_signal(spec, test::stream(8, rep));
    for (std::size_t j : sig.support) {
      const double b = sig.beta[static_cast<Eigen::Index>(j)];
      EXPECT_GE(b, a);
      // b = sqrt(1 + Z²/n) a; recover Z² and check it is a plausible χ²_1 draw.
      const double z2 = (b * b / (a * a) - 1.0) * 935.0;
      EXPECT_GE(z2, 0.0);
      EXPECT_LT(z2, 40.0);
    }
  }
}

TEST(Signal, BernoulliAllSpikes) {
  const SignalSpec spec = standard_spec(BernoulliSpike{1.0});
  const Signal sig = generate_signal(spec, test::stream(9));
  for (std::size_t j : sig.support) EXPECT_DOUBLE_EQ(sig.beta[static_cast<Eigen::Index>(j)], std::sqrt(2.0));
}

TEST(Signal, SingleSpikeSnr) {
  const SignalSpec spec = standard_spec(SingleSpikeSnr{10.0}, 15);
  const Signal sig = generate_signal(spec, test::stream(10));
  EXPECT_NEAR(sig.beta.squaredNorm(), 10.0, 1e-12);
  EXPECT_EQ(sig.support.size(), 15u);
}

TEST(Signal, InfeasibleSnrRejected) {
  // T = 0.1 < s a² (about 0.49 at r = 2, s = 15).
  EXPECT_THROW(check_signal_feasible(standard_spec(SingleSpikeSnr{0.1}, 15)), InfeasibleSignal);
  EXPECT_THROW((void)generate_signal(standard_spec(NSpike{2, 0.1}), test::stream(11)), InfeasibleSignal);
  EXPECT_THROW((void)generate_signal(standard_spec(NSpike{14, 2.0}), test::stream(11)), InvalidArgument);
}

TEST(Signal, SupportRules) {
  SignalSpec spec = standard_spec(Homogeneous{});
  spec.support_rule = SupportRule::FirstS;
  const Signal first = generate_signal(spec, test::stream(12));
  for (std::size_t i = 0; i < 13; ++i) EXPECT_EQ(first.support[i], i);
  spec.support_rule = SupportRule::UniformRandom;
  EXPECT_NE(generate_signal(spec, test::stream(12)).support, generate_signal(spec, test::stream(13)).support);
}

TEST(Signal, RandomSignsKeepMagnitudes) {
  SignalSpec spec = standard_spec(Homogeneous{});
  spec.random_signs = true;
  const Signal sig = generate_signal(spec, test::stream(14));
  int negatives = 0;
  for (std::size_t j : sig.support) {
    EXPECT_DOUBLE_EQ(std::abs(sig.beta[static_cast<Eigen::Index>(j)]), spec.params.a());
    negatives += sig.beta[static_cast<Eigen::Index>(j)] < 0;
  }
  EXPECT_GT(negatives, 0);
}

TEST(Response, ZeroSignalIsNoise) {
  const Matrix x = generate_design(50, 10, test::stream(15));
  const Response r = simulate_response(x, Vector::Zero(10), 1.0, test::stream(16));
  EXPECT_EQ(r.y, r.noise);
  const Response again = simulate_response(x, Vector::Zero(10), 1.0, test::stream(16));
  EXPECT_EQ(r.y, again.y);
}

TEST(Response, VarianceWithUnitCoefficient) {
  const Matrix x = generate_design(5000, 3, test::stream(17));
  Vector beta = Vector::Zero(3);
  beta[0] = 1.0;
  const Vector y = simulate_response(x, beta, 1.0, test::stream(18)).y;
  const double mean = y.mean();
  const double var = (y.array() - mean).square().sum() / (y.size() - 1);
  EXPECT_GT(var, 1.85);
  EXPECT_LT(var, 2.15);
}

TEST(Split, SizesFollowFloor) {
  const auto sizes = [](std::size_t n, double gamma) {
    const Matrix x = Matrix::Zero(static_cast<Eigen::Index>(n), 2);
    const Vector y = Vector::Zero(static_cast<Eigen::Index>(n));
    const DataSplit s = split_rows(x, y, gamma, test::stream(19));
    return std::pair<std::size_t, std::size_t>(s.rows1.size(), s.rows2.size());
  };
  EXPECT_EQ(sizes(10, 0.3), (std::pair<std::size_t, std::size_t>(3, 7)));
  EXPECT_EQ(sizes(935, 0.1), (std::pair<std::size_t, std::size_t>(93, 842)));
  EXPECT_EQ(sizes(2, 0.5), (std::pair<std::size_t, std::size_t>(1, 1)));
  EXPECT_THROW((void)sizes(2, 0.2), InvalidArgument);
  EXPECT_THROW((void)sizes(10, 1.0), InvalidArgument);
}

TEST(Split, PartitionsRows) {
  const Matrix x = generate_design(21, 4, test::stream(20));
  const Vector y = x.col(0);
  const DataSplit s = split_rows(x, y, 0.5, test::stream(21));
  std::vector<bool> seen(21, false);
  for (auto r : s.rows1) seen[static_cast<std::size_t>(r)] = true;
  for (auto r : s.rows2) {
    EXPECT_FALSE(seen[static_cast<std::size_t>(r)]);
    seen[static_cast<std::size_t>(r)] = true;
  }
  for (bool b : seen) EXPECT_TRUE(b);
  for (std::size_t i = 0; i < s.rows1.size(); ++i) {
    EXPECT_EQ(s.x1.row(static_cast<Eigen::Index>(i)), x.row(s.rows1[i]));
    EXPECT_EQ(s.y1[static_cast<Eigen::Index>(i)], y[s.rows1[i]]);
  }
}

TEST(Dataset, DeterministicAndTraced) {
  const SignalSpec spec{aurwm_derive(200, 0.9, 2.0, TwoLogP{}), Homogeneous{}, SupportRule::UniformRandom, false};
  const SeedStream st(5, 6, 7);
  const Dataset a = make_dataset(spec, st);
  const Dataset b = make_dataset(spec, st);
  EXPECT_EQ(dataset_digest(a), dataset_digest(b));
  EXPECT_EQ(a.seed_trace, (SeedTrace{5, 6, 7}));
  EXPECT_NE(dataset_digest(a), dataset_digest(make_dataset(spec, SeedStream(5, 6, 8))));
  EXPECT_EQ(a.x.rows(), static_cast<Eigen::Index>(spec.params.n));
}
