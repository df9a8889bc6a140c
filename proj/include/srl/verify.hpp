#pragma once

// Built-in invariant suites run by `srl verify`. Each suite uses fixed
// seeds, so a given build always reports the same numbers.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace srl {

struct PropertyResult {
  std::string property;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<PropertyResult> properties;
  double seconds = 0.0;
  [[nodiscard]] bool passed() const;
};

/// projection, delta-dist, bss-oracle, hard-threshold, lasso-kkt, ms-scale,
/// determinism.
[[nodiscard]] const std::vector<std::string>& verify_suite_names();

inline constexpr std::uint64_t kVerifySeed = 20240601;

/// One suite by name. Throws InvalidArgument for an unknown name.
[[nodiscard]] SuiteReport run_verify_suite(std::string_view name, std::uint64_t seed = kVerifySeed);

/// A single suite, or every suite for "all".
[[nodiscard]] std::vector<SuiteReport> run_verify(std::string_view name,
                                                  std::uint64_t seed = kVerifySeed);

}  // namespace srl
