#include "srl/presets.hpp"

#include <cmath>

#include "srl/errors.hpp"

namespace srl {

namespace {

std::vector<double> r_grid_fine() {
  std::vector<double> r;
  for (int i = 0; i < 16; ++i) r.push_back(1.5 + 0.5 * i);
  return r;
}

MethodSpec ms_top_s() { return {"MS", MsMethod{}}; }

ExperimentGrid ms_asymptotics(std::string id, SignalPattern pattern) {
  ExperimentGrid g;
  g.id = std::move(id);
  g.base.pattern = pattern;
  DimensionSweep sweep;
  for (std::size_t p = 1000; p <= 8000; p += 1000) sweep.p_list.push_back(p);
  sweep.r_list = {2.0, 3.0, 4.0, 5.0, 6.0};
  g.sweep = sweep;
  g.methods = {ms_top_s()};
  return g;
}

ExperimentGrid r_sweep() {
  ExperimentGrid g;
  g.id = "fig-r-sweep";
  g.base.p = 2000;
  g.sweep = StrengthSweep{r_grid_fine(), {0.0, 0.2}, {13, 52}};
  EtsMethod ets;
  ets.full_data = true;
  ets.thresholded = false;
  g.methods = {{"ETS", ets}, {"LASSO", LassoMethod{}}, ms_top_s()};
  return g;
}

ExperimentGrid spike_sweep() {
  ExperimentGrid g;
  g.id = "fig-spike-sweep";
  g.base.p = 2000;
  g.base.s_rule = ExplicitS{13};
  g.sweep = SpikeSweep{{0, 1, 2, 3, 4, 5, 6}, {2.0, 6.0}, 2.0};
  g.methods = {{"ETS", EtsMethod{}}, {"LASSO", LassoMethod{}}, ms_top_s()};
  return g;
}

std::size_t scale_one_p(std::size_t p, double factor) {
  const double scaled = std::round(static_cast<double>(p) * factor);
  if (!(scaled >= 8.0)) {
    throw InvalidArgument("--scale-p " + std::to_string(factor) + " takes p=" + std::to_string(p) +
                          " below the minimum of 8");
  }
  return static_cast<std::size_t>(scaled);
}

SparsityRule scale_s(const SparsityRule& rule, std::size_t p_old, std::size_t p_new) {
  if (const auto* ex = std::get_if<ExplicitS>(&rule)) {
    const double ratio = std::log(static_cast<double>(p_new)) / std::log(static_cast<double>(p_old));
    const double s = std::round(static_cast<double>(ex->s) * ratio);
    return ExplicitS{static_cast<std::size_t>(std::max(1.0, s))};
  }
  return rule;
}

void check_feasible(const ExperimentGrid& grid) {
  for (const GridPoint& point : materialize_points(grid)) {
    const PointTemplate& t = point.values;
    try {
      (void)aurwm_derive(t.p, t.k, t.r, t.s_rule, t.sigma);
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("grid '" + grid.id + "' point " + std::to_string(point.index) +
                            " is infeasible: " + e.what());
    }
  }
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig-ms-asymptotics", "fig-r-sweep", "fig-spike-sweep"};
  return names;
}

void scale_grid_p(ExperimentGrid& grid, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw InvalidArgument("--scale-p must be positive");
  const auto scale_template = [&](PointTemplate& t) {
    const std::size_t p_new = scale_one_p(t.p, factor);
    t.s_rule = scale_s(t.s_rule, t.p, p_new);
    t.p = p_new;
  };
  const std::size_t base_p = grid.base.p;
  scale_template(grid.base);
  std::visit(
      [&](auto& sweep) {
        using T = std::decay_t<decltype(sweep)>;
        if constexpr (std::is_same_v<T, DimensionSweep>) {
          for (std::size_t& p : sweep.p_list) p = scale_one_p(p, factor);
        } else if constexpr (std::is_same_v<T, StrengthSweep>) {
          const std::size_t p_new = grid.base.p;
          for (std::size_t& s : sweep.s_list) s = std::get<ExplicitS>(scale_s(ExplicitS{s}, base_p, p_new)).s;
        } else if constexpr (std::is_same_v<T, CustomSweep>) {
          for (PointTemplate& t : sweep.points) scale_template(t);
        }
      },
      grid.sweep);
}

std::vector<ExperimentGrid> make_preset(std::string_view name, const PresetOverrides& overrides) {
  std::vector<ExperimentGrid> grids;
  if (name == "fig-ms-asymptotics") {
    grids.push_back(ms_asymptotics("fig-ms-asymptotics-homogeneous", Homogeneous{}));
    grids.push_back(ms_asymptotics("fig-ms-asymptotics-spike", SingleSpikeSnr{10.0}));
  } else if (name == "fig-r-sweep") {
    grids.push_back(r_sweep());
  } else if (name == "fig-spike-sweep") {
    grids.push_back(spike_sweep());
  } else {
    throw InvalidArgument("unknown preset '" + std::string(name) +
                          "' (expected fig-ms-asymptotics, fig-r-sweep or fig-spike-sweep)");
  }
  for (ExperimentGrid& g : grids) {
    if (overrides.reps) {
      if (*overrides.reps == 0) throw InvalidArgument("--reps must be at least 1");
      g.reps = *overrides.reps;
    }
    if (overrides.master_seed) g.master_seed = *overrides.master_seed;
    if (overrides.scale_p) scale_grid_p(g, *overrides.scale_p);
    check_feasible(g);
  }
  return grids;
}

}  // namespace srl
