#include "gaugelab/cli/report.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "gaugelab/core/error.hpp"

namespace gaugelab::cli {

using Json = nlohmann::ordered_json;

namespace {

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

const std::vector<std::string> kRecordColumns = {"scenario", "experiment", "quantity",   "value", "reference",
                                                 "residual", "tolerance",  "pass",       "provenance", "note"};

// Non-finite values are written as strings so that every double survives a
// JSON round trip.
Json number_to_json(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_double(j.get<std::string>());
  throw InvalidInput("report: expected a number");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    if (ch == '"') {
      quoted = true;
      any = true;
    } else if (ch == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (ch == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else if (ch != '\r') {
      field += ch;
      any = true;
    }
  }
  if (quoted) throw InvalidInput("csv: unterminated quoted field");
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << body;
  out.close();
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

}  // namespace

bool Record::operator==(const Record& o) const {
  return scenario == o.scenario && experiment == o.experiment && quantity == o.quantity && same_bits(value, o.value) &&
         same_bits(reference, o.reference) && same_bits(residual, o.residual) && same_bits(tolerance, o.tolerance) &&
         pass == o.pass && provenance == o.provenance && note == o.note;
}

bool Series::operator==(const Series& o) const {
  if (name != o.name || columns != o.columns || rows.size() != o.rows.size()) return false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != o.rows[i].size()) return false;
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      if (!same_bits(rows[i][j], o.rows[i][j])) return false;
  }
  return true;
}

bool Report::overall_pass() const {
  for (const auto& r : records)
    if (!r.pass) return false;
  return true;
}

void Report::append(const Report& other) {
  records.insert(records.end(), other.records.begin(), other.records.end());
  series.insert(series.end(), other.series.begin(), other.series.end());
}

Format parse_format(const std::string& name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw InvalidInput("unknown report format '" + name + "' (expected json or csv)");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw InvalidInput("cannot parse number '" + s + "'");
  return v;
}

std::string to_json(const Report& report) {
  Json root;
  root["overall_pass"] = report.overall_pass();
  root["records"] = Json::array();
  for (const auto& r : report.records) {
    Json j;
    j["scenario"] = r.scenario;
    j["experiment"] = r.experiment;
    j["quantity"] = r.quantity;
    j["value"] = number_to_json(r.value);
    j["reference"] = number_to_json(r.reference);
    j["residual"] = number_to_json(r.residual);
    j["tolerance"] = number_to_json(r.tolerance);
    j["pass"] = r.pass;
    j["provenance"] = r.provenance;
    j["note"] = r.note;
    root["records"].push_back(std::move(j));
  }
  root["series"] = Json::array();
  for (const auto& s : report.series) {
    Json j;
    j["name"] = s.name;
    j["columns"] = s.columns;
    Json rows = Json::array();
    for (const auto& row : s.rows) {
      Json jr = Json::array();
      for (double v : row) jr.push_back(number_to_json(v));
      rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    root["series"].push_back(std::move(j));
  }
  return root.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const std::exception& e) {
    throw InvalidInput(std::string("report: malformed JSON: ") + e.what());
  }
  Report out;
  for (const auto& j : root.at("records")) {
    Record r;
    r.scenario = j.at("scenario").get<std::string>();
    r.experiment = j.at("experiment").get<std::string>();
    r.quantity = j.at("quantity").get<std::string>();
    r.value = number_from_json(j.at("value"));
    r.reference = number_from_json(j.at("reference"));
    r.residual = number_from_json(j.at("residual"));
    r.tolerance = number_from_json(j.at("tolerance"));
    r.pass = j.at("pass").get<bool>();
    r.provenance = j.at("provenance").get<std::string>();
    r.note = j.value("note", std::string{});
    out.records.push_back(std::move(r));
  }
  if (root.contains("series")) {
    for (const auto& j : root.at("series")) {
      Series s;
      s.name = j.at("name").get<std::string>();
      s.columns = j.at("columns").get<std::vector<std::string>>();
      for (const auto& jr : j.at("rows")) {
        std::vector<double> row;
        for (const auto& v : jr) row.push_back(number_from_json(v));
        s.rows.push_back(std::move(row));
      }
      out.series.push_back(std::move(s));
    }
  }
  return out;
}

std::string records_to_csv(const std::vector<Record>& records) {
  std::ostringstream os;
  for (std::size_t i = 0; i < kRecordColumns.size(); ++i) os << (i ? "," : "") << kRecordColumns[i];
  os << '\n';
  for (const auto& r : records) {
    os << csv_field(r.scenario) << ',' << csv_field(r.experiment) << ',' << csv_field(r.quantity) << ','
       << format_double(r.value) << ',' << format_double(r.reference) << ',' << format_double(r.residual) << ','
       << format_double(r.tolerance) << ',' << (r.pass ? "true" : "false") << ',' << csv_field(r.provenance) << ','
       << csv_field(r.note) << '\n';
  }
  return os.str();
}

std::vector<Record> records_from_csv(const std::string& text) {
  const auto rows = parse_csv(text);
  if (rows.empty() || rows.front() != kRecordColumns) throw InvalidInput("report csv: missing or unexpected header");
  std::vector<Record> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    if (f.size() != kRecordColumns.size()) throw InvalidInput("report csv: wrong field count on line " + std::to_string(i + 1));
    if (f[7] != "true" && f[7] != "false") throw InvalidInput("report csv: pass must be true or false");
    out.push_back(Record{f[0], f[1], f[2], parse_double(f[3]), parse_double(f[4]), parse_double(f[5]),
                         parse_double(f[6]), f[7] == "true", f[8], f[9]});
  }
  return out;
}

std::string series_to_csv(const Series& series) {
  std::ostringstream os;
  for (std::size_t i = 0; i < series.columns.size(); ++i) os << (i ? "," : "") << csv_field(series.columns[i]);
  os << '\n';
  for (const auto& row : series.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << '\n';
  }
  return os.str();
}

Series series_from_csv(const std::string& name, const std::string& text) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw InvalidInput("series csv: missing header");
  Series s;
  s.name = name;
  s.columns = rows.front();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != s.columns.size()) throw InvalidInput("series csv: ragged row " + std::to_string(i + 1));
    std::vector<double> row;
    for (const auto& f : rows[i]) row.push_back(parse_double(f));
    s.rows.push_back(std::move(row));
  }
  return s;
}

std::filesystem::path emit_report(const Report& report, const std::filesystem::path& dir, Format format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
  if (format == Format::json) {
    const auto path = dir / "report.json";
    write_file(path, to_json(report));
    return path;
  }
  const auto path = dir / "report.csv";
  write_file(path, records_to_csv(report.records));
  if (!report.series.empty()) {
    std::filesystem::create_directories(dir / "series", ec);
    if (ec) throw std::runtime_error("cannot create series directory: " + ec.message());
    for (const auto& s : report.series) write_file(dir / "series" / (s.name + ".csv"), series_to_csv(s));
  }
  return path;
}

}  // namespace gaugelab::cli
