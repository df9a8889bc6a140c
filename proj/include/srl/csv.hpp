#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "srl/harness.hpp"

namespace srl::csv {

inline constexpr const char* kRecordsHeader =
    "experiment,method,p,n,s,r,pi,n_spike,rep,exact,false_pos,false_neg,runtime_ms,flags";
inline constexpr const char* kSummaryHeader =
    "experiment,method,p,n,s,r,pi,n_spike,reps,recovery_proportion,mean_hamming,ci_lo,ci_hi";

/// %.17g; NaN becomes an empty field.
[[nodiscard]] std::string format_double(double v);
/// RFC 4180 quoting when the field holds a comma, quote, or newline.
[[nodiscard]] std::string quote(const std::string& field);

/// omit_timing writes runtime_ms as 0 so reruns are byte-identical.
void write_records(std::ostream& out, const std::vector<McRecord>& records, bool omit_timing = false);
void write_summary(std::ostream& out, const std::vector<McSummary>& summaries);

}  // namespace srl::csv
