#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "nhcd/adiabaticity.hpp"
#include "nhcd/metrics.hpp"

namespace nhcd {

/// Formats with 17 significant digits.
std::string format_number(double value);

/// Every stride-th sample plus the last; stride 0 picks about 1000 rows.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, std::size_t stride = 0);
void write_drive_csv(std::ostream& out, const CDDrive& drive);
void write_adiabaticity_csv(std::ostream& out, const AdiabaticityReport& report);
void write_max_a_csv(std::ostream& out, const std::vector<MaxARow>& rows);

struct PeriodSweepRow {
  double period = 0.0;
  Direction direction = Direction::CounterClockwise;
  CdMode cd_mode = CdMode::None;
  double dbar = 0.0;
  double max_a = 0.0;
};
void write_period_sweep_csv(std::ostream& out, const std::vector<PeriodSweepRow>& rows);

struct TopologyRow {
  double j_min = 0.0;
  double x_t_cd = 0.0;
  double x_t_nocd = 0.0;
  int enclosed_eps = 0;
};
void write_topology_csv(std::ostream& out, const std::vector<TopologyRow>& rows);

/// JSON array of {T, direction, cdMode, Dbar, xT, enclosedEPs, maxA}.
void write_summary_json(std::ostream& out, const std::vector<LoopSummary>& summaries);

class SchemaError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class ColumnKind { Number, Text };

struct CsvSchema {
  std::string name;
  std::vector<std::string> columns;
  std::vector<ColumnKind> kinds;

  std::string header() const;
};

/// trajectory, drive, adiabaticity, max_a, period_sweep, topology, schedule.
const std::vector<CsvSchema>& csv_schemas();
const CsvSchema& csv_schema(const std::string& name);
/// Schema whose header matches the first line, or nullptr.
const CsvSchema* match_schema(const std::string& header_line);

/// Checks the header and every row (field count, numeric fields parse).
/// Returns the number of data rows. Throws SchemaError.
std::size_t validate_csv(std::istream& in, const CsvSchema& schema);
/// Picks the schema from the header line.
std::size_t validate_csv_file(const std::string& path);

/// Checks the summary JSON layout. Returns the number of entries.
std::size_t validate_summary_json(std::istream& in);

}  // namespace nhcd
