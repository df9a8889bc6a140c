#pragma once

// Monte Carlo engine. A cell is one (grid point, replication); every method
// of the grid runs on the same simulated Dataset, so comparisons are paired.
// Records are keyed and sorted, so results do not depend on worker count or
// scheduling order.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "srl/bss.hpp"
#include "srl/ets.hpp"
#include "srl/simulate.hpp"
#include "srl/stats.hpp"

namespace srl {

/// Everything needed to build one SignalSpec except the realized n, s, a.
struct PointTemplate {
  std::size_t p = 2000;
  double k = 0.9;
  double r = 2.0;
  SparsityRule s_rule = TwoLogP{};
  double sigma = 1.0;
  SignalPattern pattern = Homogeneous{};
  SupportRule support_rule = SupportRule::UniformRandom;
  bool random_signs = false;
};

struct GridPoint {
  std::size_t index = 0;
  PointTemplate values;
};

/// p × r on top of the base pattern (asymptotics in p).
struct DimensionSweep {
  std::vector<std::size_t> p_list;
  std::vector<double> r_list;
};
/// π × s × r with the Bernoulli spike pattern at the base p.
struct StrengthSweep {
  std::vector<double> r_list;
  std::vector<double> pi_list;
  std::vector<std::size_t> s_list;
};
/// r × n_spike with the NSpike pattern at the base p and s.
struct SpikeSweep {
  std::vector<std::size_t> n_spike_list;
  std::vector<double> r_list;
  double target_snr = 2.0;
};
/// Explicit list of points; an empty list means the base point alone.
struct CustomSweep {
  std::vector<PointTemplate> points;
};
using Sweep = std::variant<DimensionSweep, StrengthSweep, SpikeSweep, CustomSweep>;

// How a method chooses the IHT projection size.
struct SHatTrueS {};
struct SHatFixed {
  std::size_t value = 1;
};
struct SHatMultiple {
  double multiple = 1.0;
};
/// Cross-validate over {m s : m in multipliers} ∩ [1, n/3].
struct SHatCrossValidate {
  std::vector<std::size_t> multipliers{1, 2, 4, 8};
  std::size_t folds = 5;
};
using SHatRule = std::variant<SHatTrueS, SHatFixed, SHatMultiple, SHatCrossValidate>;

struct MsMethod {
  bool thresholded = false;
  double tau = 0.0;
};
struct BssMethod {
  std::uint64_t budget = kDefaultBssBudget;
};
/// Reports the support of the IHT estimate.
struct IhtMethod {
  SHatRule s_hat = SHatTrueS{};
  double step = 0.5;
  std::size_t max_iters = 500;
  double rel_tol = 1e-8;
};
struct EtsMethod {
  bool full_data = true;
  double gamma = 0.5;
  double varsigma = 1.05;
  bool thresholded = false;
  SHatRule s_hat = SHatCrossValidate{};
  double step = 0.5;
  StepRule step_rule = StepRule::Fixed;
  std::size_t max_iters = 500;
  double rel_tol = 1e-8;
};
struct LassoMethod {
  double lambda_max_scale = 1.0;
  std::size_t path_length = 100;
  double path_ratio = 1e-3;
  double cd_tol = 1e-7;
  std::size_t cd_max_sweeps = 100000;
};
/// Returns the true support (harness self-test).
struct OracleMethod {};
/// Returns the empty set (harness self-test).
struct EmptyMethod {};
/// Arbitrary in-process selector; not serializable.
struct CustomMethod {
  std::function<SupportSet(const Dataset&, const AurwmParams&, std::size_t rep, const SeedStream&)>
      select;
};
using MethodKind = std::variant<MsMethod, BssMethod, IhtMethod, EtsMethod, LassoMethod, OracleMethod,
                                EmptyMethod, CustomMethod>;

struct MethodSpec {
  std::string name;
  MethodKind kind;
};

struct ExperimentGrid {
  std::string id;
  PointTemplate base;
  Sweep sweep = CustomSweep{};
  std::vector<MethodSpec> methods;
  std::size_t reps = 200;
  std::uint64_t master_seed = 1;
  /// Adds a dataset digest flag to every record.
  bool debug_hash = false;
};

struct McRecord {
  std::string experiment_id;
  std::string method;
  std::size_t p = 0, n = 0, s = 0;
  double r = 0.0, pi = 0.0;
  std::size_t n_spike = 0;
  std::int64_t rep = 0;  ///< -1 for a skipped grid point
  bool exact = false;
  std::size_t false_pos = 0, false_neg = 0;
  double runtime_ms = 0.0;
  std::vector<std::string> flags;
  std::size_t point_index = 0, method_index = 0;
};

struct McSummary {
  std::string experiment_id;
  std::string method;
  std::size_t p = 0, n = 0, s = 0;
  double r = 0.0, pi = 0.0;
  std::size_t n_spike = 0;
  std::size_t reps_run = 0;
  /// NaN when reps_run == 0 (skipped point).
  double recovery_proportion = 0.0;
  double mean_hamming = 0.0;
  Interval wilson_ci_95;
  std::size_t point_index = 0, method_index = 0;
};

struct SupportComparison {
  bool exact = false;
  std::size_t false_pos = 0;
  std::size_t false_neg = 0;
};

[[nodiscard]] SupportComparison compare_supports(const SupportSet& truth, const SupportSet& selected);

/// Points in sweep order: Dimension (p outer, r inner), Strength (π, s, r),
/// Spike (r, n_spike), Custom (as listed).
[[nodiscard]] std::vector<GridPoint> materialize_points(const ExperimentGrid& grid);

/// Realized parameters of a point, or the reason it is infeasible.
struct ResolvedPoint {
  GridPoint point;
  std::optional<SignalSpec> spec;
  std::string skip_reason;
  /// Nominal (expected, for Bernoulli spikes) ||β||².
  double nominal_snr = 0.0;
};
[[nodiscard]] ResolvedPoint resolve_point(const GridPoint& point);

/// Seed stream of a (point, rep) dataset; independent of the method.
[[nodiscard]] SeedStream cell_stream(const ExperimentGrid& grid, std::size_t point_index,
                                     std::size_t rep);

/// One method on one replication.
[[nodiscard]] McRecord run_cell(const ExperimentGrid& grid, const GridPoint& point,
                                std::size_t method_index, std::size_t rep);

/// All methods on one shared replication, in method order.
[[nodiscard]] std::vector<McRecord> run_replicate(const ExperimentGrid& grid,
                                                  const ResolvedPoint& point, std::size_t rep);

struct ExperimentResult {
  std::vector<McRecord> records;
  std::vector<McSummary> summaries;
};

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

[[nodiscard]] ExperimentResult run_experiment(const ExperimentGrid& grid, std::size_t workers,
                                              const ProgressFn& progress = {});

/// Per (point, method) aggregates from raw records, in (point, method) order.
/// Records with rep < 0 mark skipped points and yield reps_run = 0.
[[nodiscard]] std::vector<McSummary> summarize(const std::vector<McRecord>& records);

}  // namespace srl
