#pragma once

// Named experiment grids for the three standard figures.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "srl/harness.hpp"

namespace srl {

struct PresetOverrides {
  std::optional<std::size_t> reps;
  std::optional<std::uint64_t> master_seed;
  /// Multiplies every p. n, a and s = ⌊2 log p⌋ are re-derived; an explicit
  /// s is rescaled by log(p')/log(p) and rounded.
  std::optional<double> scale_p;
};

[[nodiscard]] const std::vector<std::string>& preset_names();

/// Throws InvalidArgument for an unknown name or an override that leaves a
/// grid point without valid sample-size parameters.
[[nodiscard]] std::vector<ExperimentGrid> make_preset(std::string_view name,
                                                      const PresetOverrides& overrides = {});

/// Applies a --scale-p factor to any grid (see PresetOverrides::scale_p).
void scale_grid_p(ExperimentGrid& grid, double factor);

}  // namespace srl
