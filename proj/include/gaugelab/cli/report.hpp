#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace gaugelab::cli {

/// One checked quantity. `residual` is compared against `tolerance`; lower
/// bounds (orders, margins) store max(0, bound - value) as the residual and
/// a zero tolerance. `provenance` starts with the oracle kind: closed-form,
/// cross-method or refinement.
struct Record {
  std::string scenario;
  std::string experiment;
  std::string quantity;
  double value = 0.0;
  double reference = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string provenance;
  std::string note;  ///< diagnostic for failures, otherwise empty

  bool operator==(const Record& o) const;
};

/// Plot data: first column is t.
struct Series {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  bool operator==(const Series& o) const;
};

struct Report {
  std::vector<Record> records;
  std::vector<Series> series;

  bool overall_pass() const;
  void append(const Report& other);
  bool operator==(const Report& o) const = default;
};

enum class Format { json, csv };
Format parse_format(const std::string& name);

std::string to_json(const Report& report);
Report report_from_json(const std::string& text);

/// Records only, one header line plus one line per record.
std::string records_to_csv(const std::vector<Record>& records);
std::vector<Record> records_from_csv(const std::string& text);

std::string series_to_csv(const Series& series);
Series series_from_csv(const std::string& name, const std::string& text);

/// Writes report.json (records and series) or report.csv plus
/// series/<name>.csv into `dir`, creating it if needed. Returns the report
/// file path. Throws std::runtime_error on I/O failure.
std::filesystem::path emit_report(const Report& report, const std::filesystem::path& dir, Format format);

/// Formats a double so that parsing it back gives the same bits.
std::string format_double(double v);
double parse_double(const std::string& s);

}  // namespace gaugelab::cli
