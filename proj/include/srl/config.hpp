#pragma once

// Run configuration files (YAML). Every key is checked: unknown keys,
// wrong types and out-of-range values raise ConfigError with the dotted
// field path and the 1-based line number.

#include <filesystem>
#include <string>
#include <string_view>

#include "srl/errors.hpp"
#include "srl/harness.hpp"

namespace srl {

struct OutputConfig {
  std::string out_dir = "results";
  /// 0 means one worker per logical processor.
  std::size_t workers = 0;
  std::string format = "csv";
};

struct RunConfig {
  ExperimentGrid grid;
  OutputConfig output;
};

class ConfigError : public InvalidArgument {
 public:
  ConfigError(std::string field, int line, const std::string& message);
  [[nodiscard]] const std::string& field() const noexcept { return field_; }
  /// 1-based; 0 when unknown.
  [[nodiscard]] int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_;
};

[[nodiscard]] RunConfig parse_run_config(std::string_view text);
[[nodiscard]] RunConfig load_run_config(const std::filesystem::path& path);

/// Canonical YAML; parse_run_config(emit_run_config(c)) reproduces c exactly.
/// Throws InvalidArgument for grids holding custom (in-process) methods.
[[nodiscard]] std::string emit_run_config(const RunConfig& config);

}  // namespace srl
