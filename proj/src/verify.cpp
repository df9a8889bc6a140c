#include "srl/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "srl/bss.hpp"
#include "srl/csv.hpp"
#include "srl/errors.hpp"
#include "srl/ets.hpp"
#include "srl/harness.hpp"
#include "srl/lasso.hpp"
#include "srl/oracles.hpp"
#include "srl/projection.hpp"
#include "srl/screening.hpp"

namespace srl {

bool SuiteReport::passed() const {
  return !properties.empty() &&
         std::all_of(properties.begin(), properties.end(), [](const PropertyResult& r) { return r.passed; });
}

namespace {

std::string fmt(const char* pattern, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

Vector normal_vector(Eigen::Index n, Sampler& rng) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.normal();
  return v;
}

std::size_t uniform_int(Sampler& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
}

/// Random sparse regression instance with n rows and p columns.
struct Instance {
  Matrix x;
  Vector y;
};

Instance random_instance(std::size_t n, std::size_t p, std::size_t s, const SeedStream& stream) {
  Instance inst;
  inst.x = generate_design(n, p, stream.derive("design"));
  Sampler rng = stream.derive("beta").sampler();
  Vector beta = Vector::Zero(static_cast<Eigen::Index>(p));
  for (std::size_t j = 0; j < s; ++j) {
    beta[static_cast<Eigen::Index>(rng.below(p))] = (rng.bernoulli(0.5) ? 1.0 : -1.0) * (0.5 + rng.uniform());
  }
  Sampler noise = stream.derive("noise").sampler();
  inst.y = inst.x * beta + normal_vector(static_cast<Eigen::Index>(n), noise);
  return inst;
}

std::vector<std::size_t> random_columns(Sampler& rng, std::size_t p, std::size_t k) {
  std::vector<std::size_t> all(p);
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t i = 0; i < k; ++i) std::swap(all[i], all[i + rng.below(p - i)]);
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

// ---- projection ----

void suite_projection(SuiteReport& report, const SeedStream& root) {
  constexpr int kInstances = 200;
  double worst_pythagoras = 0.0, worst_oracle = 0.0, worst_orthogonality = 0.0;
  for (int t = 0; t < kInstances; ++t) {
    const SeedStream stream = root.derive(static_cast<std::uint64_t>(t));
    Sampler rng = stream.derive("shape").sampler();
    const std::size_t n = uniform_int(rng, 8, 80);
    const std::size_t p = uniform_int(rng, 4, 40);
    const std::size_t k = uniform_int(rng, 1, std::min<std::size_t>({p, n - 1, 10}));
    const Instance inst = random_instance(n, p, std::min<std::size_t>(k, 3), stream);
    const std::vector<std::size_t> cols = random_columns(rng, p, k);
    const ProjectionFit fit = projection_fit(inst.x, inst.y, std::span<const std::size_t>(cols));
    const double ysq = inst.y.squaredNorm();
    worst_pythagoras = std::max(worst_pythagoras, std::abs(fit.rss + fit.fitted_norm_sq - ysq) / ysq);
    const double ref = oracle::normal_equations_rss(inst.x, inst.y, cols);
    worst_oracle = std::max(worst_oracle, std::abs(fit.rss - ref) / std::max(ref, 1e-300));
    // Residual of the oracle fit is orthogonal to the selected columns.
    const Matrix xd = inst.x(Eigen::all, std::vector<Eigen::Index>(cols.begin(), cols.end()));
    const Vector coef = (xd.transpose() * xd).ldlt().solve(xd.transpose() * inst.y);
    const Vector resid = inst.y - xd * coef;
    worst_orthogonality =
        std::max(worst_orthogonality, (xd.transpose() * resid).cwiseAbs().maxCoeff() /
                                          (xd.norm() * inst.y.norm()));
  }
  report.properties.push_back({"pythagorean identity rss + ||P y||^2 = ||y||^2", worst_pythagoras <= 1e-8,
                               fmt("%d instances, max relative error %.3g (limit 1e-8)", kInstances,
                                   worst_pythagoras)});
  report.properties.push_back({"rss agrees with normal-equations oracle", worst_oracle <= 1e-8,
                               fmt("max relative difference %.3g (limit 1e-8)", worst_oracle)});
  report.properties.push_back({"oracle residual orthogonal to selected columns", worst_orthogonality <= 1e-10,
                               fmt("max scaled |X_D^T r| %.3g", worst_orthogonality)});

  // Duplicate column must be reported as rank deficient.
  Matrix x = generate_design(20, 3, root.derive("degenerate"));
  x.col(2) = x.col(0);
  const Vector y = x.col(1);
  bool threw = false;
  try {
    (void)projection_fit(x, y, SupportSet{0, 1, 2});
  } catch (const DegenerateModel&) {
    threw = true;
  }
  report.properties.push_back({"rank-deficient support raises DegenerateModel", threw, threw ? "raised" : "not raised"});
}

// ---- delta-dist ----

void suite_delta_dist(SuiteReport& report, const SeedStream& root) {
  constexpr std::size_t kDraws = 5000;
  const AurwmParams params = aurwm_derive(500, 0.9, 2.0, TwoLogP{});
  SignalSpec spec{params, Homogeneous{}, SupportRule::UniformRandom, false};
  const Signal signal = generate_signal(spec, root.derive("signal"));
  const std::size_t n1 = params.n / 2;
  const std::size_t n2 = params.n - n1;

  // Estimation sample, fixed across draws.
  const Matrix x1 = generate_design(n1, params.p, root.derive("design1"));
  const Vector y1 = simulate_response(x1, signal.beta, params.sigma, root.derive("noise1")).y;
  IhtConfig icfg;
  icfg.s_hat = params.s;
  icfg.step = theoretical_step(x1, params.s, root.derive("step"));
  const Vector beta_hat = iht(x1, y1, icfg).beta;

  std::vector<Eigen::Index> coords;
  for (std::size_t j = 0; j < 3; ++j) coords.push_back(static_cast<Eigen::Index>(signal.support[j]));
  for (std::size_t j = 0, found = 0; found < 3; ++j) {
    if (!signal.support.contains(j)) {
      coords.push_back(static_cast<Eigen::Index>(j));
      ++found;
    }
  }

  const std::size_t m = coords.size();
  std::vector<double> sum(m, 0.0), centered_sum(m, 0.0), centered_sq(m, 0.0);
  for (std::size_t draw = 0; draw < kDraws; ++draw) {
    const SeedStream ds = root.derive("draws").derive(static_cast<std::uint64_t>(draw));
    const Matrix x2 = generate_design(n2, params.p, ds.derive("design"));
    const Vector y2 = simulate_response(x2, signal.beta, params.sigma, ds.derive("noise")).y;
    const Vector deltas = ets_deltas(x2, y2, beta_hat);
    for (std::size_t c = 0; c < m; ++c) {
      const Eigen::Index i = coords[c];
      const double d = deltas[i];
      const double centered = d - signal.beta[i] * x2.col(i).norm();
      sum[c] += d;
      centered_sum[c] += centered;
      centered_sq[c] += centered * centered;
    }
  }

  const double draws = static_cast<double>(kDraws);
  const double chi = oracle::chi_mean(n2);
  for (std::size_t c = 0; c < m; ++c) {
    const Eigen::Index i = coords[c];
    const bool is_signal = c < 3;
    const double mean = sum[c] / draws;
    const double expected_mean = signal.beta[i] * chi;
    const double cm = centered_sum[c] / draws;
    const double var = (centered_sq[c] - draws * cm * cm) / (draws - 1.0);
    const double expected_var = oracle::delta_variance(signal.beta, beta_hat, i, params.sigma);
    const double scale = std::max(std::abs(expected_mean), std::sqrt(expected_var));
    const double mean_err = std::abs(mean - expected_mean) / scale;
    const double var_err = std::abs(var - expected_var) / expected_var;
    const std::string label = fmt("%s coordinate %ld", is_signal ? "signal" : "null", static_cast<long>(i));
    report.properties.push_back({label + " mean", mean_err <= 0.05,
                                 fmt("mean %.5f, expected %.5f, relative error %.4f (limit 0.05)", mean,
                                     expected_mean, mean_err)});
    report.properties.push_back({label + " variance", var_err <= 0.05,
                                 fmt("variance %.5f, expected %.5f, relative error %.4f (limit 0.05)", var,
                                     expected_var, var_err)});
  }
}

// ---- bss-oracle ----

void suite_bss_oracle(SuiteReport& report, const SeedStream& root) {
  constexpr int kInstances = 100;
  int agree = 0;
  std::string first_mismatch;
  for (int t = 0; t < kInstances; ++t) {
    const SeedStream stream = root.derive(static_cast<std::uint64_t>(t));
    Sampler rng = stream.derive("shape").sampler();
    const std::size_t p = uniform_int(rng, 4, 12);
    const std::size_t s = uniform_int(rng, 1, std::min<std::size_t>(4, p));
    const std::size_t n = uniform_int(rng, s + 2, 40);
    const Instance inst = random_instance(n, p, s, stream);
    const SupportSet got = bss_exhaustive(inst.x, inst.y, s);
    const SupportSet want = oracle::brute_force_best_subset(inst.x, inst.y, s);
    if (got == want) {
      ++agree;
    } else if (first_mismatch.empty()) {
      first_mismatch = fmt("; first mismatch at instance %d (n=%zu p=%zu s=%zu): ", t, n, p, s) +
                       got.to_string() + " vs " + want.to_string();
    }
  }
  report.properties.push_back({"exhaustive search matches brute-force enumerator", agree == kInstances,
                               fmt("%d/%d instances agree", agree, kInstances) + first_mismatch});
}

// ---- hard-threshold ----

void suite_hard_threshold(SuiteReport& report, const SeedStream& root) {
  constexpr int kInstances = 300;
  int optimal = 0, sparse = 0;
  for (int t = 0; t < kInstances; ++t) {
    Sampler rng = root.derive(static_cast<std::uint64_t>(t)).sampler();
    const std::size_t p = uniform_int(rng, 1, 10);
    const std::size_t k = uniform_int(rng, 0, p);
    Vector v = normal_vector(static_cast<Eigen::Index>(p), rng);
    if (t % 3 == 0) v = v.array().round();  // exercise ties
    const Vector h = hard_threshold(v, k);
    const Eigen::Index nnz = (h.array() != 0.0).count();
    bool keeps_entries = true;
    for (Eigen::Index i = 0; i < h.size(); ++i) {
      if (h[i] != 0.0 && h[i] != v[i]) keeps_entries = false;
    }
    if (static_cast<std::size_t>(nnz) <= k && keeps_entries) ++sparse;
    // Brute force over every support of size k.
    const double got = (v - h).squaredNorm();
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
      double err = 0.0;
      for (std::size_t i = 0; i < p; ++i) {
        if (!(mask >> i & 1u)) err += v[static_cast<Eigen::Index>(i)] * v[static_cast<Eigen::Index>(i)];
      }
      best = std::min(best, err);
    }
    if (got <= best * (1.0 + 1e-12) + 1e-300) ++optimal;
  }
  report.properties.push_back({"output is k-sparse and keeps original entries", sparse == kInstances,
                               fmt("%d/%d instances", sparse, kInstances)});
  report.properties.push_back({"l2-optimal among all k-sparse vectors", optimal == kInstances,
                               fmt("%d/%d instances match brute force", optimal, kInstances)});
}

// ---- lasso-kkt ----

void suite_lasso_kkt(SuiteReport& report, const SeedStream& root) {
  constexpr int kInstances = 40;
  LassoConfig cfg;
  double worst = 0.0;
  int fits = 0;
  for (int t = 0; t < kInstances; ++t) {
    const SeedStream stream = root.derive(static_cast<std::uint64_t>(t));
    Sampler rng = stream.derive("shape").sampler();
    const std::size_t n = uniform_int(rng, 20, 120);
    const std::size_t p = uniform_int(rng, 10, 300);
    const Instance inst = random_instance(n, p, uniform_int(rng, 1, 8), stream);
    const double lmax = lasso_lambda_max(inst.x, inst.y);
    Vector warm;
    for (double frac : {1.0, 0.5, 0.2, 0.05, 0.01}) {
      const double lambda = lmax * frac;
      const LassoFit fit = lasso_fit(inst.x, inst.y, lambda, cfg, warm.size() ? &warm : nullptr);
      warm = fit.beta;
      worst = std::max(worst, lasso_kkt_violation(inst.x, inst.y, fit.beta, lambda));
      ++fits;
    }
  }
  report.properties.push_back({"KKT residual within cd_tol", worst <= cfg.cd_tol,
                               fmt("%d fits, max violation %.3g (cd_tol %.1g)", fits, worst, cfg.cd_tol)});

  // Exact size-s selection along the path.
  int exact = 0;
  for (int t = 0; t < 20; ++t) {
    const SeedStream stream = root.derive("select").derive(static_cast<std::uint64_t>(t));
    const Instance inst = random_instance(80, 200, 5, stream);
    LassoConfig sel;
    sel.target_sparsity = 1 + static_cast<std::size_t>(t % 8);
    if (lasso_select(inst.x, inst.y, sel).size() == sel.target_sparsity) ++exact;
  }
  report.properties.push_back({"path selection returns exactly s columns", exact == 20,
                               fmt("%d/20 instances", exact)});
}

// ---- ms-scale ----

void suite_ms_scale(SuiteReport& report, const SeedStream& root) {
  constexpr int kInstances = 50;
  int y_equivariant = 0, x_equivariant = 0, permutation_equivariant = 0;
  for (int t = 0; t < kInstances; ++t) {
    const SeedStream stream = root.derive(static_cast<std::uint64_t>(t));
    Sampler rng = stream.derive("shape").sampler();
    const std::size_t n = uniform_int(rng, 20, 100);
    const std::size_t p = uniform_int(rng, 20, 400);
    const std::size_t s = uniform_int(rng, 1, 10);
    const Instance inst = random_instance(n, p, s, stream);
    const MsConfig cfg{MsTopS{s}};
    const SupportSet base = ms_select(marginal_correlations(inst.x, inst.y), cfg);

    bool ok = true;
    for (double c : {1e-3, 3.7, 1e3}) {
      ok = ok && ms_select(marginal_correlations(inst.x, c * inst.y), cfg) == base;
    }
    if (ok) ++y_equivariant;
    const Matrix xs = -2.5 * inst.x;
    if (ms_select(marginal_correlations(xs, inst.y), cfg) == base) ++x_equivariant;

    // Reversing column order maps the selection through the same permutation.
    const Matrix xr = inst.x.rowwise().reverse();
    const SupportSet rev = ms_select(marginal_correlations(xr, inst.y), cfg);
    std::vector<std::size_t> mapped;
    for (std::size_t j : rev) mapped.push_back(p - 1 - j);
    std::sort(mapped.begin(), mapped.end());
    if (SupportSet(mapped) == base) ++permutation_equivariant;
  }
  report.properties.push_back({"TopS invariant under scaling y by c > 0", y_equivariant == kInstances,
                               fmt("%d/%d instances", y_equivariant, kInstances)});
  report.properties.push_back({"TopS invariant under scaling X by c != 0", x_equivariant == kInstances,
                               fmt("%d/%d instances", x_equivariant, kInstances)});
  report.properties.push_back({"TopS equivariant under column permutation",
                               permutation_equivariant == kInstances,
                               fmt("%d/%d instances", permutation_equivariant, kInstances)});
}

// ---- determinism ----

ExperimentGrid determinism_grid(std::uint64_t seed) {
  ExperimentGrid g;
  g.id = "verify-determinism";
  g.master_seed = seed;
  g.reps = 4;
  g.base.p = 200;
  g.sweep = StrengthSweep{{2.0, 6.0}, {0.0, 0.2}, {6}};
  EtsMethod ets;
  ets.s_hat = SHatCrossValidate{{1, 2}, 3};
  ets.step_rule = StepRule::Theoretical;
  EtsMethod ets_split;
  ets_split.full_data = false;
  ets_split.thresholded = true;
  ets_split.s_hat = SHatTrueS{};
  ets_split.step_rule = StepRule::Theoretical;
  IhtMethod iht;
  iht.step = 0.2;
  g.methods = {{"MS", MsMethod{}},
               {"LASSO", LassoMethod{}},
               {"ETS", ets},
               {"ETS-split", ets_split},
               {"IHT", iht}};
  return g;
}

std::string records_csv(const ExperimentResult& result) {
  std::ostringstream out;
  csv::write_records(out, result.records, /*omit_timing=*/true);
  return out.str();
}

void suite_determinism(SuiteReport& report, std::uint64_t seed) {
  const ExperimentGrid grid = determinism_grid(seed);
  const std::string one = records_csv(run_experiment(grid, 1));
  const std::string four = records_csv(run_experiment(grid, 4));
  const std::string again = records_csv(run_experiment(grid, 1));
  const bool clean = one.find("error:") == std::string::npos;
  report.properties.push_back({"no selector errors in the determinism grid", clean,
                               clean ? "none" : "error flags present"});
  report.properties.push_back({"records identical for 1 and 4 workers", one == four,
                               fmt("%zu bytes vs %zu bytes", one.size(), four.size())});
  report.properties.push_back({"records identical across reruns", one == again,
                               fmt("%zu bytes vs %zu bytes", one.size(), again.size())});
  ExperimentGrid other = grid;
  other.master_seed = seed + 1;
  const std::string shifted = records_csv(run_experiment(other, 1));
  report.properties.push_back({"different master seed changes the draws", shifted != one,
                               shifted != one ? "records differ" : "records identical"});
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"projection", "delta-dist", "bss-oracle", "hard-threshold",
                                              "lasso-kkt",  "ms-scale",   "determinism"};
  return names;
}

SuiteReport run_verify_suite(std::string_view name, std::uint64_t seed) {
  SuiteReport report;
  report.suite = std::string(name);
  const SeedStream root = SeedStream(seed, fnv1a64(name), 0);
  const auto start = std::chrono::steady_clock::now();
  if (name == "projection") {
    suite_projection(report, root);
  } else if (name == "delta-dist") {
    suite_delta_dist(report, root);
  } else if (name == "bss-oracle") {
    suite_bss_oracle(report, root);
  } else if (name == "hard-threshold") {
    suite_hard_threshold(report, root);
  } else if (name == "lasso-kkt") {
    suite_lasso_kkt(report, root);
  } else if (name == "ms-scale") {
    suite_ms_scale(report, root);
  } else if (name == "determinism") {
    suite_determinism(report, seed);
  } else {
    throw InvalidArgument("unknown verify suite '" + std::string(name) + "'");
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<SuiteReport> run_verify(std::string_view name, std::uint64_t seed) {
  std::vector<SuiteReport> reports;
  if (name == "all") {
    for (const std::string& suite : verify_suite_names()) reports.push_back(run_verify_suite(suite, seed));
  } else {
    reports.push_back(run_verify_suite(name, seed));
  }
  return reports;
}

}  // namespace srl
