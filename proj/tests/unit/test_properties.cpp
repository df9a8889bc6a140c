// Randomized property checks. Inputs come from a seeded Sampler, so every
// run exercises the same cases; the seed is printed on failure.

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "srl/bss.hpp"
#include "srl/iht.hpp"
#include "srl/lasso.hpp"
#include "srl/projection.hpp"
#include "srl/screening.hpp"
#include "srl/stats.hpp"
#include "test_util.hpp"

using namespace srl;

namespace {

constexpr int kCases = 60;

std::size_t draw(Sampler& rng, std::size_t lo, std::size_t hi) { return lo + rng.below(hi - lo + 1); }

SupportSet random_support(Sampler& rng, std::size_t p, std::size_t k) {
  std::vector<std::size_t> idx(p);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + rng.below(p - i)]);
  idx.resize(k);
  return SupportSet(idx);
}

}  // namespace

TEST(Property, AddingAColumnNeverIncreasesRss) {
  for (int c = 0; c < kCases; ++c) {
    Sampler rng = test::stream(600, c).sampler();
    const std::size_t n = draw(rng, 10, 50), p = draw(rng, 3, 15);
    const test::Problem pr = test::make_problem(n, p, 2, 1.0, 1.0, test::stream(601, c));
    const std::size_t k = draw(rng, 0, std::min(p, n - 2) - 1);
    const SupportSet small = random_support(rng, p, k);
    std::vector<std::size_t> bigger(small.begin(), small.end());
    for (std::size_t j = 0; j < p; ++j) {
      if (!small.contains(j)) {
        bigger.push_back(j);
        break;
      }
    }
    const double r_small = projection_fit(pr.x, pr.y, small).rss;
    const double r_big = projection_fit(pr.x, pr.y, SupportSet(bigger)).rss;
    EXPECT_LE(r_big, r_small * (1 + 1e-12)) << "case " << c;
  }
}

TEST(Property, BestSubsetBeatsEveryRandomSubset) {
  for (int c = 0; c < kCases; ++c) {
    Sampler rng = test::stream(602, c).sampler();
    const std::size_t p = draw(rng, 4, 10), s = draw(rng, 1, 3), n = draw(rng, 8, 30);
    const test::Problem pr = test::make_problem(n, p, s, 0.8, 1.0, test::stream(603, c));
    const BssResult best = bss_search(pr.x, pr.y, s);
    for (int t = 0; t < 5; ++t) {
      EXPECT_LE(best.rss, projection_fit(pr.x, pr.y, random_support(rng, p, s)).rss * (1 + 1e-12)) << "case " << c;
    }
  }
}

TEST(Property, HardThresholdIsIdempotentAndNested) {
  for (int c = 0; c < kCases; ++c) {
    Sampler rng = test::stream(604, c).sampler();
    const std::size_t p = draw(rng, 1, 40), k = draw(rng, 0, p);
    Vector v(static_cast<Eigen::Index>(p));
    for (auto& e : v) e = rng.normal();
    const Vector h = hard_threshold(v, k);
    EXPECT_EQ(hard_threshold(h, k), h);
    if (k > 0) {
      const Vector smaller = hard_threshold(v, k - 1);
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (smaller[i] != 0.0) EXPECT_NE(h[i], 0.0) << "case " << c;
      }
    }
  }
}

TEST(Property, MsTopSNestedInS) {
  for (int c = 0; c < kCases; ++c) {
    Sampler rng = test::stream(605, c).sampler();
    const std::size_t p = draw(rng, 2, 60);
    Vector mu(static_cast<Eigen::Index>(p));
    for (auto& e : mu) e = rng.normal();
    const std::size_t s = draw(rng, 1, p);
    const SupportSet big = ms_select(mu, {MsTopS{s}});
    const SupportSet small = ms_select(mu, {MsTopS{s - 1}});
    EXPECT_EQ(small.count_not_in(big), 0u);
    // Threshold at the s-th largest magnitude returns the same set (no ties in continuous draws).
    std::vector<double> mags(mu.data(), mu.data() + p);
    for (double& m : mags) m = std::abs(m);
    std::sort(mags.rbegin(), mags.rend());
    EXPECT_EQ(ms_select(mu, {MsThreshold{mags[s - 1]}}), big) << "case " << c;
  }
}

TEST(Property, LassoActiveSetShrinksWithLambdaOnAverage) {
  int monotone = 0;
  for (int c = 0; c < kCases / 3; ++c) {
    const test::Problem pr = test::make_problem(60, 40, 4, 1.0, 1.0, test::stream(606, c));
    const double lmax = lasso_lambda_max(pr.x, pr.y);
    LassoConfig cfg;
    const auto hi = lasso_fit(pr.x, pr.y, 0.5 * lmax, cfg).active_size();
    const auto lo = lasso_fit(pr.x, pr.y, 0.05 * lmax, cfg).active_size();
    monotone += lo >= hi;
    EXPECT_LE(lasso_kkt_violation(pr.x, pr.y, lasso_fit(pr.x, pr.y, 0.2 * lmax, cfg).beta, 0.2 * lmax), cfg.cd_tol);
  }
  EXPECT_EQ(monotone, kCases / 3);
}

TEST(Property, WilsonWidthShrinksWithTrials) {
  for (int c = 0; c < kCases; ++c) {
    Sampler rng = test::stream(607, c).sampler();
    const std::size_t n = draw(rng, 1, 500);
    const std::size_t k = draw(rng, 0, n);
    EXPECT_LT(wilson_interval(4 * k, 4 * n).half_width(), wilson_interval(k, n).half_width()) << "case " << c;
  }
}
