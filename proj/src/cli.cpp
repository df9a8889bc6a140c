#include "srl/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <thread>

#include "srl/config.hpp"
#include "srl/csv.hpp"
#include "srl/presets.hpp"
#include "srl/verify.hpp"

namespace srl {

namespace {

struct CommonFlags {
  std::optional<std::size_t> reps;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::string> out_dir;
  std::optional<double> scale_p;
  std::string format = "csv";
  bool omit_timing = false;
  bool print_config = false;
};

void add_common(CLI::App& cmd, CommonFlags& f) {
  cmd.add_option("--reps", f.reps, "Replications per grid point")->check(CLI::PositiveNumber);
  cmd.add_option("--seed", f.seed, "Master seed (overrides SRL_SEED and the config)");
  cmd.add_option("--workers", f.workers, "Worker threads (0 = one per logical processor)");
  cmd.add_option("--out-dir", f.out_dir, "Directory for the CSV files");
  cmd.add_option("--scale-p", f.scale_p, "Multiply every p by this factor")->check(CLI::PositiveNumber);
  cmd.add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv"}));
  cmd.add_flag("--omit-timing", f.omit_timing, "Leave runtime_ms empty so reruns are byte-identical");
  cmd.add_flag("--print-config", f.print_config, "Print the resolved configuration as YAML and exit");
}

std::optional<std::uint64_t> env_seed() {
  const char* text = std::getenv("SRL_SEED");
  if (text == nullptr || *text == '\0') return std::nullopt;
  const std::string s(text);
  if (s.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError("SRL_SEED", 0, "expected a nonnegative integer, got '" + s + "'");
  }
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ConfigError("SRL_SEED", 0, "integer out of range");
  }
}

std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  return std::max<unsigned>(1, std::thread::hardware_concurrency());
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& message,
                const ConfigError* cfg = nullptr) {
  nlohmann::json j{{"error", kind}, {"message", message}};
  if (cfg != nullptr) {
    if (!cfg->field().empty()) j["field"] = cfg->field();
    if (cfg->line() > 0) j["line"] = cfg->line();
  }
  err << j.dump() << '\n';
}

void log_points(const ExperimentGrid& grid, std::ostream& err) {
  for (const GridPoint& point : materialize_points(grid)) {
    const ResolvedPoint rp = resolve_point(point);
    nlohmann::json j{{"experiment", grid.id}, {"point", point.index}};
    if (rp.spec) {
      const AurwmParams& prm = rp.spec->params;
      j["p"] = prm.p;
      j["n"] = prm.n;
      j["s"] = prm.s;
      j["r"] = prm.r;
      j["a"] = prm.a();
      j["nominal_snr"] = rp.nominal_snr;
    } else {
      j["skipped"] = rp.skip_reason;
    }
    err << j.dump() << '\n';
  }
}

void write_file(const std::filesystem::path& path, const auto& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  writer(out);
  out.flush();
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

void execute(ExperimentGrid grid, const OutputConfig& output, const CommonFlags& flags, std::ostream& out,
             std::ostream& err) {
  const std::filesystem::path dir = flags.out_dir.value_or(output.out_dir);
  const std::size_t workers = resolve_workers(flags.workers.value_or(output.workers));
  log_points(grid, err);
  const ExperimentResult result = run_experiment(grid, workers);
  std::filesystem::create_directories(dir);
  const auto records_path = dir / (grid.id + "_records.csv");
  const auto summary_path = dir / (grid.id + "_summary.csv");
  write_file(records_path, [&](std::ostream& o) { csv::write_records(o, result.records, flags.omit_timing); });
  write_file(summary_path, [&](std::ostream& o) { csv::write_summary(o, result.summaries); });
  out << records_path.string() << '\n' << summary_path.string() << '\n';
}

void apply_overrides(ExperimentGrid& grid, const CommonFlags& flags) {
  if (flags.reps) grid.reps = *flags.reps;
  if (const auto seed = flags.seed ? flags.seed : env_seed()) grid.master_seed = *seed;
}

int cmd_run(const std::string& config_path, const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  RunConfig cfg = load_run_config(config_path);
  apply_overrides(cfg.grid, flags);
  if (flags.scale_p) scale_grid_p(cfg.grid, *flags.scale_p);
  if (flags.print_config) {
    out << emit_run_config(cfg);
    return kExitOk;
  }
  execute(cfg.grid, cfg.output, flags, out, err);
  return kExitOk;
}

int cmd_preset(const std::string& name, const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  PresetOverrides o;
  o.reps = flags.reps;
  o.master_seed = flags.seed ? flags.seed : env_seed();
  o.scale_p = flags.scale_p;
  const std::vector<ExperimentGrid> grids = make_preset(name, o);
  OutputConfig output;
  if (flags.print_config) {
    for (const ExperimentGrid& g : grids) out << "---\n" << emit_run_config({g, output});
    return kExitOk;
  }
  for (const ExperimentGrid& g : grids) execute(g, output, flags, out, err);
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::optional<std::uint64_t> seed, std::ostream& out) {
  const std::vector<SuiteReport> reports = run_verify(suite, seed.value_or(kVerifySeed));
  bool all_passed = true;
  for (const SuiteReport& report : reports) {
    for (const PropertyResult& prop : report.properties) {
      out << (prop.passed ? "PASS " : "FAIL ") << report.suite << ": " << prop.property << " (" << prop.detail
          << ")\n";
    }
    out << (report.passed() ? "PASS " : "FAIL ") << report.suite << " [" << report.seconds << " s]\n";
    all_passed = all_passed && report.passed();
  }
  return all_passed ? kExitOk : kExitRuntime;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse support recovery simulation lab", "srl"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "Run the experiment described by a YAML config");
  run->add_option("--config", config_path, "Config file")->required();
  add_common(*run, run_flags);

  CommonFlags preset_flags;
  std::string preset_name;
  CLI::App* preset = app.add_subcommand("preset", "Run a named figure grid");
  preset->add_option("name", preset_name, "fig-ms-asymptotics, fig-r-sweep or fig-spike-sweep")->required();
  add_common(*preset, preset_flags);

  std::string suite = "all";
  std::optional<std::uint64_t> verify_seed;
  CLI::App* verify = app.add_subcommand("verify", "Run built-in invariant suites");
  std::vector<std::string> suites = verify_suite_names();
  suites.push_back("all");
  verify->add_option("suite", suite, "Suite name or 'all'")->check(CLI::IsMember(suites));
  verify->add_option("--seed", verify_seed, "Seed for the suites");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "usage", e.what());
    return kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, run_flags, out, err);
    if (preset->parsed()) return cmd_preset(preset_name, preset_flags, out, err);
    return cmd_verify(suite, verify_seed, out);
  } catch (const ConfigError& e) {
    emit_error(err, "validation", e.what(), &e);
    return kExitValidation;
  } catch (const InvalidArgument& e) {
    emit_error(err, "validation", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    emit_error(err, "runtime", e.what());
    return kExitRuntime;
  }
}

}  // namespace srl
