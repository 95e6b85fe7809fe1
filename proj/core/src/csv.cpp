#include "rctsim/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>

#include "rctsim/error.hpp"

namespace rctsim {

namespace {

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::MalformedCsv, "line " + std::to_string(line) + ": " + what);
}

std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

double parse_double(const std::string& field, std::size_t line) {
  if (field.empty()) return std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    malformed(line, "not a number: '" + field + "'");
  }
  return value;
}

std::optional<double> parse_optional(const std::string& field, std::size_t line) {
  if (field.empty()) return std::nullopt;
  return parse_double(field, line);
}

template <typename Int>
Int parse_integer(const std::string& field, std::size_t line, int base = 10) {
  Int value{};
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value, base);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    malformed(line, "not an integer: '" + field + "'");
  }
  return value;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  const auto [ptr, ec] = std::to_chars(buf, buf + 16, v, 16);
  std::string digits(buf, ptr);
  return std::string(16 - digits.size(), '0') + digits;
}

std::vector<std::vector<std::string>> records_with_header(std::istream& in,
                                                          std::string_view header) {
  auto records = parse_csv(read_all(in));
  if (records.empty()) malformed(1, "missing header row");
  std::string got;
  for (std::size_t i = 0; i < records[0].size(); ++i) {
    if (i) got += ',';
    got += records[0][i];
  }
  if (got != header) malformed(1, "unexpected header '" + got + "'");
  const std::size_t columns = records[0].size();
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != columns) {
      malformed(r + 1, "expected " + std::to_string(columns) + " fields, got " +
                           std::to_string(records[r].size()));
    }
  }
  return records;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return {};
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;

  auto end_record = [&]() {
    record.push_back(std::move(field));
    field.clear();
    records.push_back(std::move(record));
    record.clear();
    field_started = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) malformed(line, "quote inside unquoted field");
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        field += c;
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (in_quotes) malformed(line, "unterminated quoted field");
  if (field_started || !field.empty() || !record.empty()) end_record();
  return records;
}

void write_replications_csv(std::ostream& out, std::span<const ReplicationRow> rows) {
  out << kReplicationsHeader << '\n';
  for (const auto& r : rows) {
    out << r.experiment << ',' << r.n << ',' << r.rep_index << ','
        << csv_escape(r.estimator) << ',' << format_optional(r.estimate) << ','
        << format_optional(r.ci_lower) << ',' << format_optional(r.ci_upper) << ','
        << csv_escape(r.flags) << ',' << hex64(r.sample_checksum) << '\n';
  }
}

std::vector<ReplicationRow> read_replications_csv(std::istream& in) {
  const auto records = records_with_header(in, kReplicationsHeader);
  std::vector<ReplicationRow> rows;
  rows.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& f = records[r];
    const std::size_t line = r + 1;
    ReplicationRow row;
    row.experiment = parse_integer<int>(f[0], line);
    row.n = parse_integer<std::size_t>(f[1], line);
    row.rep_index = parse_integer<std::size_t>(f[2], line);
    row.estimator = f[3];
    row.estimate = parse_optional(f[4], line);
    row.ci_lower = parse_optional(f[5], line);
    row.ci_upper = parse_optional(f[6], line);
    row.flags = f[7];
    row.sample_checksum = parse_integer<std::uint64_t>(f[8], line, 16);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_aggregate_csv(std::ostream& out, std::span<const McReportEntry> entries) {
  out << kAggregateHeader << '\n';
  for (const auto& e : entries) {
    out << e.experiment << ',' << e.n << ',' << csv_escape(e.estimator) << ','
        << to_string(e.category) << ',' << e.reps_used << ',' << format_double(e.bias)
        << ',' << format_double(e.sd) << ',' << format_double(e.rmse) << ','
        << format_optional(e.coverage) << ',' << format_optional(e.mean_ci_width) << '\n';
  }
}

std::vector<McReportEntry> read_aggregate_csv(std::istream& in) {
  const auto records = records_with_header(in, kAggregateHeader);
  std::vector<McReportEntry> entries;
  entries.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& f = records[r];
    const std::size_t line = r + 1;
    McReportEntry e;
    e.experiment = parse_integer<int>(f[0], line);
    e.n = parse_integer<std::size_t>(f[1], line);
    e.estimator = f[2];
    if (!is_canonical_estimator(e.estimator)) {
      throw Error(ErrorKind::UnknownEstimator,
                  "line " + std::to_string(line) + ": unknown estimator '" + e.estimator + "'");
    }
    const auto category = parse_propensity_use(f[3]);
    if (!category) malformed(line, "unknown category '" + f[3] + "'");
    e.category = *category;
    e.reps_used = parse_integer<std::size_t>(f[4], line);
    e.bias = parse_double(f[5], line);
    e.sd = parse_double(f[6], line);
    e.rmse = parse_double(f[7], line);
    e.coverage = parse_optional(f[8], line);
    e.mean_ci_width = parse_optional(f[9], line);
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace rctsim
