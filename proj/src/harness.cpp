#include "srl/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "srl/errors.hpp"
#include "srl/lasso.hpp"
#include "srl/screening.hpp"

namespace srl {
namespace {

std::size_t sparsity_of(const PointTemplate& t) {
  if (const auto* e = std::get_if<ExplicitS>(&t.s_rule)) return e->s;
  return static_cast<std::size_t>(std::floor(2.0 * std::log(static_cast<double>(t.p))));
}

void label_pattern(const SignalPattern& pattern, double& pi, std::size_t& n_spike) {
  pi = 0.0;
  n_spike = 0;
  if (const auto* b = std::get_if<BernoulliSpike>(&pattern)) pi = b->pi;
  if (std::holds_alternative<SingleSpikeSnr>(pattern)) n_spike = 1;
  if (const auto* m = std::get_if<NSpike>(&pattern)) n_spike = m->n_spike;
}

McRecord blank_record(const ExperimentGrid& grid, const ResolvedPoint& rp, std::size_t method_index) {
  McRecord rec;
  rec.experiment_id = grid.id;
  rec.method = grid.methods[method_index].name;
  const PointTemplate& t = rp.point.values;
  rec.p = t.p;
  rec.r = t.r;
  if (rp.spec) {
    rec.n = rp.spec->params.n;
    rec.s = rp.spec->params.s;
  } else {
    rec.n = t.k > 0.0 && t.k < 1.0 ? sample_size(t.p, t.k) : 0;
    rec.s = sparsity_of(t);
  }
  label_pattern(t.pattern, rec.pi, rec.n_spike);
  rec.point_index = rp.point.index;
  rec.method_index = method_index;
  return rec;
}

void resolve_s_hat(const SHatRule& rule, std::size_t s, std::size_t n_est, IhtConfig& cfg) {
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, SHatTrueS>) {
          cfg.s_hat = s;
        } else if constexpr (std::is_same_v<T, SHatFixed>) {
          cfg.s_hat = r.value;
        } else if constexpr (std::is_same_v<T, SHatMultiple>) {
          cfg.s_hat = std::max<std::size_t>(
              1, static_cast<std::size_t>(std::llround(r.multiple * static_cast<double>(s))));
        } else {
          CrossValidateSHat cv;
          cv.folds = r.folds;
          for (std::size_t m : r.multipliers) {
            const std::size_t v = m * s;
            if (v >= 1 && v <= n_est / 3) cv.grid.push_back(v);
          }
          if (cv.grid.empty()) cv.grid.push_back(std::clamp<std::size_t>(s, 1, n_est / 3 + 1));
          cfg.s_hat = cv.grid.front();
          cfg.s_hat_selection = std::move(cv);
        }
      },
      rule);
}

SupportSet nonzero_support(const Vector& v) {
  std::vector<std::size_t> idx;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (v[j] != 0.0) idx.push_back(static_cast<std::size_t>(j));
  }
  return SupportSet(std::move(idx));
}

SupportSet select_support(const MethodSpec& method, const Dataset& d, const AurwmParams& params,
                          std::size_t rep, const SeedStream& stream,
                          std::vector<std::string>& flags) {
  const std::size_t s = params.s;
  return std::visit(
      [&](const auto& m) -> SupportSet {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MsMethod>) {
          MsConfig cfg;
          if (m.thresholded) {
            cfg.mode = MsThreshold{m.tau};
          } else {
            cfg.mode = MsTopS{s};
          }
          return ms_select(marginal_correlations(d.x, d.y), cfg);
        } else if constexpr (std::is_same_v<T, BssMethod>) {
          return bss_exhaustive(d.x, d.y, s, m.budget);
        } else if constexpr (std::is_same_v<T, IhtMethod>) {
          IhtConfig cfg;
          cfg.step = m.step;
          cfg.max_iters = m.max_iters;
          cfg.rel_tol = m.rel_tol;
          resolve_s_hat(m.s_hat, s, params.n, cfg);
          if (std::holds_alternative<CrossValidateSHat>(cfg.s_hat_selection)) {
            cfg.s_hat = cross_validate_s_hat(d.x, d.y, cfg, stream.derive("cv"));
            cfg.s_hat_selection = FixedSHat{};
          }
          return nonzero_support(iht(d.x, d.y, cfg).beta);
        } else if constexpr (std::is_same_v<T, EtsMethod>) {
          EtsConfig cfg;
          if (m.full_data) {
            cfg.sampling = FullData{};
          } else {
            cfg.sampling = SplitSample{m.gamma};
          }
          cfg.varsigma = m.varsigma;
          cfg.a = params.a();
          if (m.thresholded) {
            cfg.output = EtsThresholded{};
          } else {
            cfg.output = EtsTopS{s};
          }
          cfg.step_rule = m.step_rule;
          cfg.iht.step = m.step;
          cfg.iht.max_iters = m.max_iters;
          cfg.iht.rel_tol = m.rel_tol;
          const std::size_t n_est =
              m.full_data ? params.n
                          : static_cast<std::size_t>(std::floor(m.gamma * static_cast<double>(params.n)));
          resolve_s_hat(m.s_hat, s, n_est, cfg.iht);
          EtsResult res = ets_run(d.x, d.y, cfg, stream);
          flags.push_back("s_hat=" + std::to_string(res.s_hat));
          return std::move(res.support);
        } else if constexpr (std::is_same_v<T, LassoMethod>) {
          LassoConfig cfg;
          cfg.target_sparsity = s;
          cfg.lambda_max_scale = m.lambda_max_scale;
          cfg.path_length = m.path_length;
          cfg.path_ratio = m.path_ratio;
          cfg.cd_tol = m.cd_tol;
          cfg.cd_max_sweeps = m.cd_max_sweeps;
          LassoSelection sel = lasso_select_detailed(d.x, d.y, cfg);
          flags.insert(flags.end(), sel.flags.begin(), sel.flags.end());
          return std::move(sel.support);
        } else if constexpr (std::is_same_v<T, OracleMethod>) {
          return d.support;
        } else if constexpr (std::is_same_v<T, EmptyMethod>) {
          return SupportSet{};
        } else {
          if (!m.select) throw InvalidArgument("custom method has no selector");
          return m.select(d, params, rep, stream);
        }
      },
      method.kind);
}

void fill_outcome(McRecord& rec, const SupportSet& truth, const SupportSet& selected) {
  const SupportComparison cmp = compare_supports(truth, selected);
  rec.exact = cmp.exact;
  rec.false_pos = cmp.false_pos;
  rec.false_neg = cmp.false_neg;
}

McRecord run_method(const ExperimentGrid& grid, const ResolvedPoint& rp, std::size_t method_index,
                    std::size_t rep, const Dataset& d, std::uint64_t digest) {
  McRecord rec = blank_record(grid, rp, method_index);
  rec.rep = static_cast<std::int64_t>(rep);
  const SeedStream selector_stream =
      cell_stream(grid, rp.point.index, rep).derive("selector");
  SupportSet selected;
  const auto start = std::chrono::steady_clock::now();
  try {
    selected = select_support(grid.methods[method_index], d, rp.spec->params, rep, selector_stream,
                              rec.flags);
    selected.check_bounds(rp.spec->params.p);
  } catch (const std::exception& e) {
    selected = SupportSet{};
    rec.flags.push_back(std::string("error: ") + e.what());
  }
  const auto stop = std::chrono::steady_clock::now();
  rec.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  fill_outcome(rec, d.support, selected);
  if (grid.debug_hash) {
    std::ostringstream h;
    h << "dataset_hash=" << std::hex << digest;
    rec.flags.push_back(h.str());
  }
  return rec;
}

}  // namespace

SupportComparison compare_supports(const SupportSet& truth, const SupportSet& selected) {
  SupportComparison out;
  out.false_pos = selected.count_not_in(truth);
  out.false_neg = truth.count_not_in(selected);
  out.exact = out.false_pos == 0 && out.false_neg == 0;
  return out;
}

std::vector<GridPoint> materialize_points(const ExperimentGrid& grid) {
  std::vector<PointTemplate> templates;
  const PointTemplate& base = grid.base;
  std::visit(
      [&](const auto& sweep) {
        using T = std::decay_t<decltype(sweep)>;
        if constexpr (std::is_same_v<T, DimensionSweep>) {
          for (std::size_t p : sweep.p_list) {
            for (double r : sweep.r_list) {
              PointTemplate t = base;
              t.p = p;
              t.r = r;
              templates.push_back(t);
            }
          }
        } else if constexpr (std::is_same_v<T, StrengthSweep>) {
          for (double pi : sweep.pi_list) {
            for (std::size_t s : sweep.s_list) {
              for (double r : sweep.r_list) {
                PointTemplate t = base;
                t.pattern = BernoulliSpike{pi};
                t.s_rule = ExplicitS{s};
                t.r = r;
                templates.push_back(t);
              }
            }
          }
        } else if constexpr (std::is_same_v<T, SpikeSweep>) {
          for (double r : sweep.r_list) {
            for (std::size_t m : sweep.n_spike_list) {
              PointTemplate t = base;
              t.pattern = NSpike{m, sweep.target_snr};
              t.r = r;
              templates.push_back(t);
            }
          }
        } else {
          if (sweep.points.empty()) {
            templates.push_back(base);
          } else {
            templates = sweep.points;
          }
        }
      },
      grid.sweep);
  std::vector<GridPoint> points;
  points.reserve(templates.size());
  for (std::size_t i = 0; i < templates.size(); ++i) points.push_back({i, templates[i]});
  return points;
}

ResolvedPoint resolve_point(const GridPoint& point) {
  ResolvedPoint out;
  out.point = point;
  const PointTemplate& t = point.values;
  try {
    SignalSpec spec;
    spec.params = aurwm_derive(t.p, t.k, t.r, t.s_rule, t.sigma);
    spec.pattern = t.pattern;
    spec.support_rule = t.support_rule;
    spec.random_signs = t.random_signs;
    check_signal_feasible(spec);
    const double a2 = spec.params.a() * spec.params.a();
    const double s = static_cast<double>(spec.params.s);
    out.nominal_snr = std::visit(
        [&](const auto& pat) -> double {
          using T = std::decay_t<decltype(pat)>;
          if constexpr (std::is_same_v<T, Homogeneous>) {
            return s * a2;
          } else if constexpr (std::is_same_v<T, SingleSpikeSnr>) {
            return pat.target_snr;
          } else if constexpr (std::is_same_v<T, BernoulliSpike>) {
            const double n = static_cast<double>(spec.params.n);
            return s * ((1.0 - pat.pi) * a2 * (1.0 + 1.0 / n) + pat.pi * spec.params.r);
          } else {
            return pat.n_spike == 0 ? s * a2 : pat.target_snr;
          }
        },
        t.pattern);
    out.spec = spec;
  } catch (const InvalidArgument& e) {
    out.skip_reason = e.what();
  }
  return out;
}

SeedStream cell_stream(const ExperimentGrid& grid, std::size_t point_index, std::size_t rep) {
  return SeedStream(grid.master_seed, combine64(fnv1a64(grid.id), point_index), rep);
}

std::vector<McRecord> run_replicate(const ExperimentGrid& grid, const ResolvedPoint& rp,
                                    std::size_t rep) {
  std::vector<McRecord> out;
  out.reserve(grid.methods.size());
  if (!rp.spec) {
    throw InvalidArgument("run_replicate: grid point is infeasible: " + rp.skip_reason);
  }
  Dataset d;
  try {
    d = make_dataset(*rp.spec, cell_stream(grid, rp.point.index, rep));
  } catch (const std::exception& e) {
    for (std::size_t m = 0; m < grid.methods.size(); ++m) {
      McRecord rec = blank_record(grid, rp, m);
      rec.rep = static_cast<std::int64_t>(rep);
      rec.false_neg = rec.s;
      rec.flags.push_back(std::string("error: dataset: ") + e.what());
      out.push_back(std::move(rec));
    }
    return out;
  }
  const std::uint64_t digest = grid.debug_hash ? dataset_digest(d) : 0;
  for (std::size_t m = 0; m < grid.methods.size(); ++m) {
    out.push_back(run_method(grid, rp, m, rep, d, digest));
  }
  return out;
}

McRecord run_cell(const ExperimentGrid& grid, const GridPoint& point, std::size_t method_index,
                  std::size_t rep) {
  if (method_index >= grid.methods.size()) throw InvalidArgument("run_cell: no such method");
  const ResolvedPoint rp = resolve_point(point);
  if (!rp.spec) throw InvalidArgument("run_cell: grid point is infeasible: " + rp.skip_reason);
  const Dataset d = make_dataset(*rp.spec, cell_stream(grid, point.index, rep));
  return run_method(grid, rp, method_index, rep, d, grid.debug_hash ? dataset_digest(d) : 0);
}

ExperimentResult run_experiment(const ExperimentGrid& grid, std::size_t workers,
                                const ProgressFn& progress) {
  if (workers < 1) throw InvalidArgument("run_experiment: workers must be at least 1");
  if (grid.methods.empty()) throw InvalidArgument("run_experiment: no methods");
  if (grid.reps < 1) throw InvalidArgument("run_experiment: reps must be at least 1");
  for (std::size_t i = 0; i < grid.methods.size(); ++i) {
    if (grid.methods[i].name.empty()) throw InvalidArgument("run_experiment: empty method name");
    for (std::size_t j = 0; j < i; ++j) {
      if (grid.methods[i].name == grid.methods[j].name) {
        throw InvalidArgument("run_experiment: duplicate method name '" + grid.methods[i].name + "'");
      }
    }
  }

  std::vector<ResolvedPoint> points;
  for (const GridPoint& gp : materialize_points(grid)) points.push_back(resolve_point(gp));

  ExperimentResult result;
  struct Task {
    std::size_t point;
    std::size_t rep;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!points[i].spec) {
      for (std::size_t m = 0; m < grid.methods.size(); ++m) {
        McRecord rec = blank_record(grid, points[i], m);
        rec.rep = -1;
        rec.flags.push_back("skipped: " + points[i].skip_reason);
        result.records.push_back(std::move(rec));
      }
      continue;
    }
    for (std::size_t rep = 0; rep < grid.reps; ++rep) tasks.push_back({i, rep});
  }

  std::vector<std::vector<McRecord>> slots(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      slots[t] = run_replicate(grid, points[tasks[t].point], tasks[t].rep);
      const std::size_t finished = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(finished, tasks.size());
      }
    }
  };
  const std::size_t n_threads = std::min(workers, std::max<std::size_t>(tasks.size(), 1));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (std::size_t w = 0; w < n_threads; ++w) pool.emplace_back(worker);
  }

  for (auto& slot : slots) {
    for (auto& rec : slot) result.records.push_back(std::move(rec));
  }
  std::sort(result.records.begin(), result.records.end(), [](const McRecord& a, const McRecord& b) {
    if (a.point_index != b.point_index) return a.point_index < b.point_index;
    if (a.method_index != b.method_index) return a.method_index < b.method_index;
    return a.rep < b.rep;
  });
  result.summaries = summarize(result.records);
  return result;
}

std::vector<McSummary> summarize(const std::vector<McRecord>& records) {
  struct Acc {
    const McRecord* first = nullptr;
    std::size_t reps = 0;
    std::size_t exact = 0;
    std::size_t hamming = 0;
  };
  std::map<std::pair<std::size_t, std::size_t>, Acc> groups;
  for (const McRecord& rec : records) {
    Acc& acc = groups[{rec.point_index, rec.method_index}];
    if (!acc.first) acc.first = &rec;
    if (rec.rep < 0) continue;
    ++acc.reps;
    acc.exact += rec.exact ? 1 : 0;
    acc.hamming += rec.false_pos + rec.false_neg;
  }
  std::vector<McSummary> out;
  out.reserve(groups.size());
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& [key, acc] : groups) {
    const McRecord& r = *acc.first;
    McSummary sum;
    sum.experiment_id = r.experiment_id;
    sum.method = r.method;
    sum.p = r.p;
    sum.n = r.n;
    sum.s = r.s;
    sum.r = r.r;
    sum.pi = r.pi;
    sum.n_spike = r.n_spike;
    sum.point_index = key.first;
    sum.method_index = key.second;
    sum.reps_run = acc.reps;
    if (acc.reps == 0) {
      sum.recovery_proportion = nan;
      sum.mean_hamming = nan;
      sum.wilson_ci_95 = {nan, nan};
    } else {
      sum.recovery_proportion = static_cast<double>(acc.exact) / static_cast<double>(acc.reps);
      sum.mean_hamming = static_cast<double>(acc.hamming) / static_cast<double>(acc.reps);
      sum.wilson_ci_95 = wilson_interval(acc.exact, acc.reps);
    }
    out.push_back(std::move(sum));
  }
  return out;
}

}  // namespace srl
