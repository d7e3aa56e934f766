#include "nhcd/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nhcd {

namespace {

using N = ColumnKind;

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

bool parses_as_number(const std::string& text) {
  if (text.empty()) {
    return false;
  }
  char* end = nullptr;
  std::strtod(text.c_str(), &end);
  return end == text.c_str() + text.size();
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  return line;
}

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, std::size_t stride) {
  const std::vector<double> d = pointwise_trace_distance(trajectory);
  const std::size_t n = trajectory.size();
  if (stride == 0) {
    stride = std::max<std::size_t>(1, (n - 1) / 1000);
  }
  out << csv_schema("trajectory").header() << '\n';
  for (std::size_t k = 0; k < n; ++k) {
    if (k % stride != 0 && k + 1 != n) {
      continue;
    }
    const BlochVector& p = trajectory.pauli[k];
    const BlochVector& r = trajectory.reference[k];
    out << format_number(trajectory.times[k]) << ',' << format_number(p.x) << ','
        << format_number(p.y) << ',' << format_number(p.z) << ',' << format_number(r.x) << ','
        << format_number(r.y) << ',' << format_number(r.z) << ','
        << format_number(trajectory.log_norm[k]) << ',' << format_number(d[k]) << '\n';
  }
}

void write_drive_csv(std::ostream& out, const CDDrive& drive) {
  out << csv_schema("drive").header() << '\n';
  for (const DriveSample& s : drive.samples) {
    out << format_number(s.t) << ',' << format_number(s.j_cd.real()) << ','
        << format_number(s.j_cd.imag()) << ',' << format_number(s.delta_cd) << '\n';
  }
}

void write_adiabaticity_csv(std::ostream& out, const AdiabaticityReport& report) {
  out << csv_schema("adiabaticity").header() << '\n';
  for (std::size_t k = 0; k < report.times.size(); ++k) {
    out << format_number(report.times[k]) << ',' << format_number(report.a_pm[k]) << ','
        << format_number(report.a_mp[k]) << ',' << format_number(report.exponent_pm[k]) << '\n';
  }
}

void write_max_a_csv(std::ostream& out, const std::vector<MaxARow>& rows) {
  out << csv_schema("max_a").header() << '\n';
  for (const MaxARow& r : rows) {
    out << format_number(r.period) << ',' << to_string(r.direction) << ','
        << format_number(r.max_a) << '\n';
  }
}

void write_period_sweep_csv(std::ostream& out, const std::vector<PeriodSweepRow>& rows) {
  out << csv_schema("period_sweep").header() << '\n';
  for (const PeriodSweepRow& r : rows) {
    out << format_number(r.period) << ',' << to_string(r.direction) << ',' << to_string(r.cd_mode)
        << ',' << format_number(r.dbar) << ',' << format_number(r.max_a) << '\n';
  }
}

void write_topology_csv(std::ostream& out, const std::vector<TopologyRow>& rows) {
  out << csv_schema("topology").header() << '\n';
  for (const TopologyRow& r : rows) {
    out << format_number(r.j_min) << ',' << format_number(r.x_t_cd) << ','
        << format_number(r.x_t_nocd) << ',' << r.enclosed_eps << '\n';
  }
}

void write_summary_json(std::ostream& out, const std::vector<LoopSummary>& summaries) {
  nlohmann::json doc = nlohmann::json::array();
  for (const LoopSummary& s : summaries) {
    nlohmann::json entry;
    entry["T"] = s.period;
    entry["direction"] = to_string(s.direction);
    entry["cdMode"] = to_string(s.cd_mode);
    entry["Dbar"] = s.dbar;
    entry["xT"] = s.x_t;
    entry["enclosedEPs"] = s.enclosed_eps;
    entry["maxA"] = s.max_a ? nlohmann::json(*s.max_a) : nlohmann::json(nullptr);
    doc.push_back(std::move(entry));
  }
  out << doc.dump(2) << '\n';
}

std::string CsvSchema::header() const {
  std::string h;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    h += (i ? "," : "") + columns[i];
  }
  return h;
}

const std::vector<CsvSchema>& csv_schemas() {
  static const std::vector<CsvSchema> schemas = {
      {"trajectory",
       {"t", "x", "y", "z", "x_I", "y_I", "z_I", "logNorm", "D"},
       {N::Number, N::Number, N::Number, N::Number, N::Number, N::Number, N::Number, N::Number,
        N::Number}},
      {"drive", {"t", "ReJcd", "ImJcd", "deltaCD"}, {N::Number, N::Number, N::Number, N::Number}},
      {"adiabaticity", {"t", "a_pm", "a_mp", "I_pm"}, {N::Number, N::Number, N::Number, N::Number}},
      {"max_a", {"T", "direction", "maxA"}, {N::Number, N::Text, N::Number}},
      {"period_sweep",
       {"T", "direction", "cdMode", "Dbar", "maxA"},
       {N::Number, N::Text, N::Text, N::Number, N::Number}},
      {"topology",
       {"jMin", "xT_cd", "xT_nocd", "enclosedEPs"},
       {N::Number, N::Number, N::Number, N::Number}},
      {"schedule", {"t", "J_x", "J_y", "delta"}, {N::Number, N::Number, N::Number, N::Number}},
  };
  return schemas;
}

const CsvSchema& csv_schema(const std::string& name) {
  for (const CsvSchema& s : csv_schemas()) {
    if (s.name == name) {
      return s;
    }
  }
  throw std::invalid_argument("unknown CSV schema '" + name + "'");
}

const CsvSchema* match_schema(const std::string& header_line) {
  const std::string h = strip_cr(header_line);
  for (const CsvSchema& s : csv_schemas()) {
    if (s.header() == h) {
      return &s;
    }
  }
  return nullptr;
}

std::size_t validate_csv(std::istream& in, const CsvSchema& schema) {
  std::string line;
  if (!std::getline(in, line)) {
    throw SchemaError(schema.name + ": missing header");
  }
  if (strip_cr(line) != schema.header()) {
    throw SchemaError(schema.name + ": header '" + strip_cr(line) + "' does not match '" +
                      schema.header() + "'");
  }
  std::size_t rows = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    const std::vector<std::string> fields = split(line);
    if (fields.size() != schema.columns.size()) {
      throw SchemaError(schema.name + ": line " + std::to_string(line_no) + " has " +
                        std::to_string(fields.size()) + " fields, expected " +
                        std::to_string(schema.columns.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const bool ok = schema.kinds[c] == ColumnKind::Number ? parses_as_number(fields[c])
                                                            : !fields[c].empty();
      if (!ok) {
        throw SchemaError(schema.name + ": line " + std::to_string(line_no) + " column " +
                          schema.columns[c] + " has invalid value '" + fields[c] + "'");
      }
    }
    ++rows;
  }
  if (rows == 0) {
    throw SchemaError(schema.name + ": no data rows");
  }
  return rows;
}

std::size_t validate_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw SchemaError("cannot open " + path);
  }
  std::string header;
  std::getline(in, header);
  const CsvSchema* schema = match_schema(header);
  if (!schema) {
    throw SchemaError(path + ": unrecognized header '" + strip_cr(header) + "'");
  }
  in.clear();
  in.seekg(0);
  return validate_csv(in, *schema);
}

std::size_t validate_summary_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("summary: ") + e.what());
  }
  if (!doc.is_array() || doc.empty()) {
    throw SchemaError("summary: expected a non-empty array");
  }
  for (const auto& entry : doc) {
    for (const char* key : {"T", "Dbar", "xT"}) {
      if (!entry.contains(key) || !entry[key].is_number()) {
        throw SchemaError(std::string("summary: missing numeric field ") + key);
      }
    }
    for (const char* key : {"direction", "cdMode"}) {
      if (!entry.contains(key) || !entry[key].is_string()) {
        throw SchemaError(std::string("summary: missing string field ") + key);
      }
    }
    if (!entry.contains("enclosedEPs") || !entry["enclosedEPs"].is_number_integer()) {
      throw SchemaError("summary: missing integer field enclosedEPs");
    }
    if (!entry.contains("maxA") || !(entry["maxA"].is_number() || entry["maxA"].is_null())) {
      throw SchemaError("summary: missing field maxA");
    }
  }
  return doc.size();
}

}  // namespace nhcd
