#include <gtest/gtest.h>

#include "srl/errors.hpp"
#include "srl/iht.hpp"
#include "test_util.hpp"

using namespace srl;

namespace {
Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) out[i++] = d;
  return out;
}
}  // namespace

TEST(HardThreshold, KeepsLargest) {
  EXPECT_EQ(hard_threshold(vec({3, -5, 1}), 2), vec({3, -5, 0}));
  EXPECT_EQ(hard_threshold(vec({2, -2, 1}), 1), vec({2, 0, 0}));
  EXPECT_EQ(hard_threshold(vec({0, 4, 0}), 2), vec({0, 4, 0}));
  EXPECT_EQ(hard_threshold(vec({3, -5, 1}), 3), vec({3, -5, 1}));
  EXPECT_EQ(hard_threshold(vec({3, -5, 1}), 0), vec({0, 0, 0}));
}

TEST(Iht, NoiselessRecoveryMatchesRestrictedLeastSquares) {
  const test::Problem pr = test::make_problem(200, 50, 5, 2.0, 0.0, test::stream(300));
  IhtConfig cfg;
  cfg.s_hat = 5;
  cfg.step = 0.5;
  cfg.max_iters = 5000;
  cfg.rel_tol = 0.0;
  const IhtResult res = iht(pr.x, pr.y, cfg);
  for (Eigen::Index j = 0; j < 50; ++j) EXPECT_EQ(res.beta[j] != 0.0, j < 5) << j;
  // Restricted least squares on the true support reproduces β exactly.
  const Matrix xs = pr.x.leftCols(5);
  const Vector ls = xs.colPivHouseholderQr().solve(pr.y);
  EXPECT_LE((res.beta.head(5) - ls).norm(), 1e-4);
  EXPECT_LE((res.beta - pr.beta).norm(), 1e-4);
}

TEST(Iht, ZeroResponseAndZeroSHat) {
  const Matrix x = generate_design(40, 10, test::stream(301));
  IhtConfig cfg;
  cfg.s_hat = 3;
  const IhtResult res = iht(x, Vector::Zero(40), cfg);
  EXPECT_EQ(res.beta, Vector::Zero(10));
  EXPECT_EQ(res.iters, 1u);
  cfg.s_hat = 0;
  EXPECT_EQ(iht(x, x.col(0), cfg).beta, Vector::Zero(10));
}

TEST(Iht, ObjectiveNonIncreasingAtSmallStep) {
  const test::Problem pr = test::make_problem(120, 80, 4, 1.0, 1.0, test::stream(302));
  IhtConfig cfg;
  cfg.s_hat = 4;
  cfg.step = theoretical_step(pr.x, 4, test::stream(303));
  EXPECT_GT(cfg.step, 0.0);
  EXPECT_LT(cfg.step, 0.5);
  const IhtResult res = iht(pr.x, pr.y, cfg);
  for (std::size_t t = 1; t < res.obj_trace.size(); ++t) {
    EXPECT_LE(res.obj_trace[t], res.obj_trace[t - 1] * (1 + 1e-12)) << t;
  }
}

TEST(Iht, DivergenceIsReported) {
  const test::Problem pr = test::make_problem(40, 60, 3, 1.0, 1.0, test::stream(304));
  IhtConfig cfg;
  cfg.s_hat = 30;
  cfg.step = 5.0;
  EXPECT_THROW((void)iht(pr.x, pr.y, cfg), ConvergenceError);
}

TEST(Iht, ConfigValidation) {
  const Matrix x = generate_design(10, 20, test::stream(305));
  IhtConfig cfg;
  cfg.s_hat = 11;
  EXPECT_THROW((void)iht(x, x.col(0), cfg), InvalidArgument);
  cfg.s_hat = 2;
  cfg.step = 0.0;
  EXPECT_THROW((void)iht(x, x.col(0), cfg), InvalidArgument);
  cfg.step = 0.5;
  EXPECT_THROW((void)iht(x, Vector::Zero(9), cfg), InvalidArgument);
}

TEST(Iht, DefaultGrid) {
  EXPECT_EQ(default_s_hat_grid(13, 935), (std::vector<std::size_t>{13, 26, 52, 104}));
  EXPECT_EQ(default_s_hat_grid(52, 935), (std::vector<std::size_t>{52, 104, 208}));
}

TEST(CrossValidation, SingletonGrid) {
  const test::Problem pr = test::make_problem(60, 30, 3, 1.0, 1.0, test::stream(306));
  IhtConfig cfg;
  cfg.s_hat_selection = CrossValidateSHat{{3}, 5};
  EXPECT_EQ(cross_validate_s_hat(pr.x, pr.y, cfg, test::stream(307)), 3u);
}

TEST(CrossValidation, PrefersTrueSizeOnNoiselessData) {
  int hits = 0;
  for (std::uint64_t rep = 0; rep < 50; ++rep) {
    const test::Problem pr = test::make_problem(200, 50, 5, 2.0, 0.0, test::stream(308, rep));
    IhtConfig cfg;
    cfg.step = 0.25;
    cfg.max_iters = 2000;
    cfg.s_hat_selection = CrossValidateSHat{{5, 20}, 5};
    hits += cross_validate_s_hat(pr.x, pr.y, cfg, test::stream(309, rep)) == 5;
  }
  EXPECT_GE(hits, 45);
}

TEST(CrossValidation, Preconditions) {
  const test::Problem pr = test::make_problem(60, 30, 3, 1.0, 1.0, test::stream(310));
  IhtConfig cfg;
  cfg.s_hat_selection = CrossValidateSHat{{3}, 1};
  EXPECT_THROW((void)cross_validate(pr.x, pr.y, cfg, test::stream(311)), InvalidArgument);
  cfg.s_hat_selection = CrossValidateSHat{{}, 5};
  EXPECT_THROW((void)cross_validate(pr.x, pr.y, cfg, test::stream(311)), InvalidArgument);
  cfg.s_hat_selection = FixedSHat{};
  EXPECT_THROW((void)cross_validate(pr.x, pr.y, cfg, test::stream(311)), InvalidArgument);
}

TEST(CrossValidation, DivergedGridValueScoresInfinity) {
  const test::Problem pr = test::make_problem(60, 40, 2, 1.0, 1.0, test::stream(312));
  IhtConfig cfg;
  cfg.step = 0.8;
  cfg.s_hat_selection = CrossValidateSHat{{1, 40}, 3};
  const CvResult res = cross_validate(pr.x, pr.y, cfg, test::stream(313));
  ASSERT_EQ(res.mean_sq_error.size(), 2u);
  EXPECT_TRUE(std::isfinite(res.mean_sq_error[0]));
  EXPECT_TRUE(std::isinf(res.mean_sq_error[1]));
  EXPECT_EQ(res.best, 1u);
}
