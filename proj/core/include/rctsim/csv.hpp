#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rctsim/montecarlo.hpp"

namespace rctsim {

inline constexpr std::string_view kReplicationsHeader =
    "experiment,n,rep_index,estimator,estimate,ci_lower,ci_upper,flags,sample_checksum";
inline constexpr std::string_view kAggregateHeader =
    "experiment,n,estimator,category,reps_used,bias,sd,rmse,coverage,mean_ci_width";

/// Shortest-form-independent 17 significant digits; round-trips every
/// finite double. NaN is written as an empty field.
std::string format_double(double value);

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string csv_escape(std::string_view field);

/// RFC 4180 records. Accepts LF or CRLF line ends; a trailing newline does
/// not produce an extra record. Throws MalformedCsv on an unterminated quote.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

void write_replications_csv(std::ostream& out, std::span<const ReplicationRow> rows);
/// Throws MalformedCsv on a bad header, field count or number.
std::vector<ReplicationRow> read_replications_csv(std::istream& in);

void write_aggregate_csv(std::ostream& out, std::span<const McReportEntry> entries);
/// Throws MalformedCsv, or UnknownEstimator for names outside the roster.
std::vector<McReportEntry> read_aggregate_csv(std::istream& in);

}  // namespace rctsim
