#pragma once

#include <string>
#include <vector>

#include "nhcd/adiabaticity.hpp"
#include "nhcd/config.hpp"
#include "nhcd/io.hpp"

namespace nhcd {

struct RunResult {
  /// Written files relative to the output directory, in write order.
  std::vector<std::string> files;
  std::vector<LoopSummary> summaries;
  /// a_nm > 1 windows of the no-drive loops, keyed like the summaries.
  std::vector<std::vector<TimeWindow>> breakdown_windows;
};

/// The base cosine loop of a config, traversed in `direction`.
ControlSchedule config_schedule(const ExperimentConfig& config, double period, Direction direction);

/// Trajectory for one (schedule, mode) pair using the config's dt and clamp.
Trajectory run_loop(const ExperimentConfig& config, const ControlSchedule& schedule, CdMode mode,
                    const CdEvolveOptions& base = {});

/// Trajectory, drive and adiabaticity CSVs for each direction and mode, plus summary.json.
RunResult run_encircle(const ExperimentConfig& config);
/// period_sweep.csv with one row per (T, direction, mode).
RunResult run_period_sweep(const ExperimentConfig& config);
/// topology.csv; starts from |x->, rows near an EP are emitted as NaN.
RunResult run_topology_scan(const ExperimentConfig& config);
/// Trajectory and drive CSVs for the Apollonius circle of the configured
/// ratio and for the configured cosine loop, plus summary.json.
RunResult run_apollonius_deviation(const ExperimentConfig& config);
/// adiabaticity_<dir>.csv at the configured period and max_a.csv over the periods.
RunResult run_adiabaticity_sweep(const ExperimentConfig& config);

RunResult run_experiment(const ExperimentConfig& config);

/// jMin values of a topology scan.
std::vector<double> topology_grid(const ExperimentConfig& config);

}  // namespace nhcd
