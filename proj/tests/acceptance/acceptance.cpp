// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Pass criterion ids (AC1 ... AC7) to run a subset.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "srl/harness.hpp"
#include "srl/verify.hpp"

using namespace srl;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::size_t workers() { return std::max(1u, std::thread::hardware_concurrency()); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const McSummary& find(const std::vector<McSummary>& all, const std::string& method, std::size_t point) {
  for (const McSummary& s : all) {
    if (s.method == method && s.point_index == point) return s;
  }
  throw std::runtime_error("no summary for " + method);
}

std::string describe(const McSummary& s) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s p=%zu s=%zu r=%g pi=%g: %.2f [%.3f, %.3f]", s.method.c_str(), s.p, s.s, s.r, s.pi,
                s.recovery_proportion, s.wilson_ci_95.lo, s.wilson_ci_95.hi);
  return buf;
}

std::size_t error_count(const std::vector<McRecord>& records) {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const McRecord& r) {
    return std::any_of(r.flags.begin(), r.flags.end(), [](const std::string& f) { return f.rfind("error:", 0) == 0; });
  }));
}

Outcome ac1() {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentGrid g;
  g.id = "acceptance-ms-spike";
  g.base.p = 2000;
  g.base.pattern = SingleSpikeSnr{10.0};
  PointTemplate r2 = g.base, r6 = g.base;
  r2.r = 2.0;
  r6.r = 6.0;
  g.sweep = CustomSweep{{r2, r6}};
  g.methods = {{"MS", MsMethod{}}};
  g.reps = 100;
  const ExperimentResult res = run_experiment(g, workers());
  const double secs = seconds_since(t0);
  Outcome out;
  out.passed = secs < 300.0;
  for (std::size_t i = 0; i < 2; ++i) {
    const McSummary& s = find(res.summaries, "MS", i);
    out.passed = out.passed && s.reps_run == 100 && s.recovery_proportion <= 0.02;
    out.detail += describe(s) + "; ";
  }
  out.detail += std::to_string(static_cast<int>(secs)) + " s (limit 300)";
  return out;
}

Outcome ac2() {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentGrid g;
  g.id = "acceptance-ms-homogeneous";
  g.sweep = DimensionSweep{{1000, 2000, 4000}, {6.0}};
  g.methods = {{"MS", MsMethod{}}};
  g.reps = 100;
  const ExperimentResult res = run_experiment(g, workers());
  const double secs = seconds_since(t0);
  Outcome out;
  out.passed = secs < 900.0;
  std::vector<McSummary> row;
  for (std::size_t i = 0; i < 3; ++i) row.push_back(find(res.summaries, "MS", i));
  for (std::size_t i = 0; i + 1 < row.size(); ++i) {
    const bool up = row[i + 1].recovery_proportion >= row[i].recovery_proportion;
    const bool overlap = row[i + 1].wilson_ci_95.hi >= row[i].wilson_ci_95.lo;
    out.passed = out.passed && (up || overlap);
  }
  out.passed = out.passed && row[2].recovery_proportion >= 0.5;
  for (const McSummary& s : row) out.detail += describe(s) + "; ";
  out.detail += std::to_string(static_cast<int>(secs)) + " s (limit 900)";
  return out;
}

Outcome ac3() {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentGrid g;
  g.id = "acceptance-ets-moderate";
  g.base.p = 2000;
  g.base.r = 2.0;
  g.sweep = StrengthSweep{{2.0}, {0.2}, {13}};
  g.methods = {{"ETS", EtsMethod{}}, {"LASSO", LassoMethod{}}, {"MS", MsMethod{}}};
  g.reps = 100;
  const ExperimentResult res = run_experiment(g, workers());
  const double secs = seconds_since(t0);
  const McSummary& ets = find(res.summaries, "ETS", 0);
  const McSummary& lasso = find(res.summaries, "LASSO", 0);
  const McSummary& ms = find(res.summaries, "MS", 0);
  const auto beats = [&](const McSummary& other) {
    return ets.recovery_proportion - other.recovery_proportion >
           ets.wilson_ci_95.half_width() + other.wilson_ci_95.half_width();
  };
  Outcome out;
  out.passed = secs < 1800.0 && beats(lasso) && beats(ms);
  out.detail = describe(ets) + "; " + describe(lasso) + "; " + describe(ms) + "; selector errors " +
               std::to_string(error_count(res.records)) + "; " + std::to_string(static_cast<int>(secs)) +
               " s (limit 1800)";
  return out;
}

Outcome ac4() {
  ExperimentGrid g;
  g.id = "acceptance-high-strength";
  g.base.p = 2000;
  g.sweep = StrengthSweep{{9.0}, {0.0, 0.2}, {13}};
  g.methods = {{"ETS", EtsMethod{}}, {"LASSO", LassoMethod{}}};
  g.reps = 100;
  const ExperimentResult res = run_experiment(g, workers());
  Outcome out{true, ""};
  for (std::size_t point = 0; point < 2; ++point) {
    for (const char* m : {"ETS", "LASSO"}) {
      const McSummary& s = find(res.summaries, m, point);
      out.passed = out.passed && s.recovery_proportion >= 0.95;
      out.detail += describe(s) + "; ";
    }
  }
  out.detail += "selector errors " + std::to_string(error_count(res.records));
  return out;
}

Outcome from_suite(const std::string& name, double time_limit) {
  const SuiteReport report = run_verify_suite(name);
  Outcome out;
  out.passed = report.passed() && report.seconds < time_limit;
  for (const PropertyResult& p : report.properties) {
    if (!p.passed || report.properties.size() <= 2) out.detail += (p.passed ? "" : "FAILED ") + p.property + ": " + p.detail + "; ";
  }
  std::size_t ok = 0;
  for (const PropertyResult& p : report.properties) ok += p.passed;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu/%zu properties, %.1f s", ok, report.properties.size(), report.seconds);
  out.detail += buf;
  return out;
}

Outcome ac7() {
  Outcome out{true, ""};
  for (const SuiteReport& r : run_verify("all")) {
    out.passed = out.passed && r.passed();
    out.detail += r.suite + (r.passed() ? " ok; " : " FAILED; ");
  }
  return out;
}

struct Criterion {
  const char* id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"AC1", "MS fails under a single SNR-10 spike", ac1},
      {"AC2", "MS recovery grows with p for homogeneous signals", ac2},
      {"AC3", "ETS beats LASSO and MS at r = 2, pi = 0.2", ac3},
      {"AC4", "ETS and LASSO saturate at r = 9", ac4},
      {"AC5", "exhaustive BSS matches brute force", [] { return from_suite("bss-oracle", 60.0); }},
      {"AC6", "Delta_i mean and variance", [] { return from_suite("delta-dist", 1e9); }},
      {"AC7", "verify all", ac7},
  };
  std::vector<std::string> wanted(argv + 1, argv + argc);
  bool all_passed = true;
  for (const Criterion& c : criteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s %s: %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
    all_passed = all_passed && o.passed;
  }
  return all_passed ? 0 : 1;
}
