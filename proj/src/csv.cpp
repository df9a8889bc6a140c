#include "srl/csv.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace srl::csv {

std::string format_double(double v) {
  if (std::isnan(v)) return {};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_records(std::ostream& out, const std::vector<McRecord>& records, bool omit_timing) {
  out << kRecordsHeader << '\n';
  for (const McRecord& r : records) {
    std::string flags;
    for (std::size_t i = 0; i < r.flags.size(); ++i) {
      if (i) flags += ';';
      flags += r.flags[i];
    }
    out << quote(r.experiment_id) << ',' << quote(r.method) << ',' << r.p << ',' << r.n << ','
        << r.s << ',' << format_double(r.r) << ',' << format_double(r.pi) << ',' << r.n_spike << ','
        << r.rep << ',' << (r.exact ? 1 : 0) << ',' << r.false_pos << ',' << r.false_neg << ','
        << (omit_timing ? std::string() : format_double(r.runtime_ms)) << ',' << quote(flags) << '\n';
  }
}

void write_summary(std::ostream& out, const std::vector<McSummary>& summaries) {
  out << kSummaryHeader << '\n';
  for (const McSummary& s : summaries) {
    out << quote(s.experiment_id) << ',' << quote(s.method) << ',' << s.p << ',' << s.n << ','
        << s.s << ',' << format_double(s.r) << ',' << format_double(s.pi) << ',' << s.n_spike << ','
        << s.reps_run << ',' << format_double(s.recovery_proportion) << ','
        << format_double(s.mean_hamming) << ',' << format_double(s.wilson_ci_95.lo) << ','
        << format_double(s.wilson_ci_95.hi) << '\n';
  }
}

}  // namespace srl::csv
