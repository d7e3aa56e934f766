#include "nhcd/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "nhcd/errors.hpp"
#include "nhcd/parallel.hpp"

namespace nhcd {

namespace {

namespace fs = std::filesystem;

template <class Writer>
void write_file(const ExperimentConfig& config, RunResult& result, const std::string& name,
                Writer&& writer) {
  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) {
    throw std::runtime_error("cannot write " + (dir / name).string());
  }
  writer(out);
  result.files.push_back(name);
}

std::string tag(Direction direction, CdMode mode) {
  return to_string(direction) + "_" + to_string(mode);
}

Vector2c x_minus() {
  Vector2c v(1.0, -1.0);
  return v / std::sqrt(2.0);
}

}  // namespace

ControlSchedule config_schedule(const ExperimentConfig& config, double period, Direction direction) {
  return oriented(ControlSchedule::cosine_loop(period, config.j_min, config.j_max, config.delta_amp,
                                               config.kappa_value(), config.samples),
                  direction);
}

Trajectory run_loop(const ExperimentConfig& config, const ControlSchedule& schedule, CdMode mode,
                    const CdEvolveOptions& base) {
  CdEvolveOptions options = base;
  options.mode = mode;
  if (config.dt) {
    options.dt = config.dt;
  }
  options.drive_clamp = config.max_drive_amp;
  return evolve_with_cd(schedule, options);
}

RunResult run_encircle(const ExperimentConfig& config) {
  config.validate();
  const auto& dirs = config.directions;
  const auto& modes = config.cd_modes;

  std::vector<ControlSchedule> schedules;
  for (Direction d : dirs) {
    schedules.push_back(config_schedule(config, config.period, d));
  }
  std::vector<std::vector<PathPoint>> paths(dirs.size());
  std::vector<AdiabaticityReport> reports(dirs.size());
  std::vector<Trajectory> trajectories(dirs.size() * modes.size());
  parallel_for(dirs.size() + trajectories.size(), config.threads, [&](std::size_t i) {
    if (i < dirs.size()) {
      paths[i] = tracked_angle(schedules[i]);
      reports[i] = adiabaticity_parameter(paths[i]);
      return;
    }
    const std::size_t j = i - dirs.size();
    trajectories[j] = run_loop(config, schedules[j / modes.size()], modes[j % modes.size()]);
  });

  RunResult result;
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    write_file(config, result, "drive_" + to_string(dirs[d]) + ".csv",
               [&](std::ostream& out) { write_drive_csv(out, cd_exact(paths[d])); });
    write_file(config, result, "adiabaticity_" + to_string(dirs[d]) + ".csv",
               [&](std::ostream& out) { write_adiabaticity_csv(out, reports[d]); });
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const Trajectory& tr = trajectories[d * modes.size() + m];
      write_file(config, result, "trajectory_" + tag(dirs[d], modes[m]) + ".csv",
                 [&](std::ostream& out) { write_trajectory_csv(out, tr); });
      LoopSummary s = summarize_loop(tr, schedules[d], modes[m]);
      s.max_a = reports[d].max_a;
      result.summaries.push_back(s);
      result.breakdown_windows.push_back(reports[d].breakdown_windows);
    }
  }
  write_file(config, result, "summary.json",
             [&](std::ostream& out) { write_summary_json(out, result.summaries); });
  return result;
}

RunResult run_period_sweep(const ExperimentConfig& config) {
  config.validate();
  const auto& dirs = config.directions;
  const auto& modes = config.cd_modes;
  const std::size_t per_period = dirs.size();
  std::vector<PeriodSweepRow> rows(config.periods.size() * dirs.size() * modes.size());

  parallel_for(config.periods.size() * per_period, config.threads, [&](std::size_t i) {
    const double period = config.periods[i / per_period];
    const Direction direction = dirs[i % per_period];
    const ControlSchedule schedule = config_schedule(config, period, direction);
    const double max_a = adiabaticity_parameter(tracked_angle(schedule)).max_a;
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const Trajectory tr = run_loop(config, schedule, modes[m]);
      rows[i * modes.size() + m] = {period, direction, modes[m],
                                    summarize_loop(tr, schedule, modes[m]).dbar, max_a};
    }
  });

  RunResult result;
  write_file(config, result, "period_sweep.csv",
             [&](std::ostream& out) { write_period_sweep_csv(out, rows); });
  return result;
}

std::vector<double> topology_grid(const ExperimentConfig& config) {
  std::vector<double> grid;
  const int n = config.j_min_count;
  for (int k = 0; k < n; ++k) {
    grid.push_back(n == 1 ? config.j_min_start
                          : config.j_min_start +
                                (config.j_min_stop - config.j_min_start) * k / (n - 1));
  }
  return grid;
}

RunResult run_topology_scan(const ExperimentConfig& config) {
  config.validate();
  const std::vector<double> grid = topology_grid(config);
  const Direction direction = config.directions.front();
  const CdMode mode = config.cd_modes.front() == CdMode::None ? CdMode::Full : config.cd_modes.front();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  std::vector<TopologyRow> rows(grid.size());
  parallel_for(grid.size(), config.threads, [&](std::size_t i) {
    ExperimentConfig c = config;
    c.j_min = grid[i];
    const ControlSchedule schedule = config_schedule(c, c.period, direction);
    TopologyRow row{grid[i], nan, nan, enclosed_ep_count(schedule)};
    CdEvolveOptions start;
    start.initial = InitialCondition::Custom;
    start.custom_state = x_minus();
    try {
      row.x_t_cd = run_loop(c, schedule, mode, start).pauli.back().x;
      row.x_t_nocd = run_loop(c, schedule, CdMode::None, start).pauli.back().x;
    } catch (const NumericalError&) {
      row.x_t_cd = nan;
      row.x_t_nocd = nan;
    }
    rows[i] = row;
  });

  RunResult result;
  write_file(config, result, "topology.csv", [&](std::ostream& out) { write_topology_csv(out, rows); });
  return result;
}

RunResult run_apollonius_deviation(const ExperimentConfig& config) {
  config.validate();
  const double kappa = config.kappa_value();
  const Direction direction = config.directions.front();
  const ApolloniusCircle circle = apollonius_from_ratio(config.ratio, kappa);
  const std::vector<std::pair<std::string, ControlSchedule>> schedules = {
      {"apollonius", circle.schedule(config.period, direction, config.samples)},
      {"ellipse", config_schedule(config, config.period, direction)}};
  const auto& modes = config.cd_modes;

  std::vector<std::vector<PathPoint>> paths(schedules.size());
  std::vector<Trajectory> trajectories(schedules.size() * modes.size());
  parallel_for(paths.size() + trajectories.size(), config.threads, [&](std::size_t i) {
    if (i < paths.size()) {
      paths[i] = tracked_angle(schedules[i].second);
      return;
    }
    const std::size_t j = i - paths.size();
    trajectories[j] = run_loop(config, schedules[j / modes.size()].second, modes[j % modes.size()]);
  });

  RunResult result;
  for (std::size_t s = 0; s < schedules.size(); ++s) {
    const auto& [name, schedule] = schedules[s];
    write_file(config, result, "drive_" + name + ".csv",
               [&](std::ostream& out) { write_drive_csv(out, cd_exact(paths[s])); });
    const double max_a = adiabaticity_parameter(paths[s]).max_a;
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const Trajectory& tr = trajectories[s * modes.size() + m];
      write_file(config, result, "trajectory_" + name + "_" + to_string(modes[m]) + ".csv",
                 [&](std::ostream& out) { write_trajectory_csv(out, tr); });
      LoopSummary summary = summarize_loop(tr, schedule, modes[m]);
      summary.max_a = max_a;
      result.summaries.push_back(summary);
    }
  }
  write_file(config, result, "summary.json",
             [&](std::ostream& out) { write_summary_json(out, result.summaries); });
  return result;
}

RunResult run_adiabaticity_sweep(const ExperimentConfig& config) {
  config.validate();
  RunResult result;
  for (Direction d : config.directions) {
    const AdiabaticityReport report =
        adiabaticity_parameter(tracked_angle(config_schedule(config, config.period, d)));
    write_file(config, result, "adiabaticity_" + to_string(d) + ".csv",
               [&](std::ostream& out) { write_adiabaticity_csv(out, report); });
    result.breakdown_windows.push_back(report.breakdown_windows);
  }
  const ScheduleFamily family = [&](double period) {
    return config_schedule(config, period, config.directions.front());
  };
  const std::vector<MaxARow> rows =
      sweep_max_a(family, config.periods, config.directions, Level::Minus, config.threads);
  write_file(config, result, "max_a.csv", [&](std::ostream& out) { write_max_a_csv(out, rows); });
  return result;
}

RunResult run_experiment(const ExperimentConfig& config) {
  switch (config.experiment) {
    case ExperimentKind::Encircle: return run_encircle(config);
    case ExperimentKind::PeriodSweep: return run_period_sweep(config);
    case ExperimentKind::TopologyScan: return run_topology_scan(config);
    case ExperimentKind::ApolloniusDeviation: return run_apollonius_deviation(config);
    case ExperimentKind::AdiabaticitySweep: return run_adiabaticity_sweep(config);
  }
  throw ConfigError("experiment.name", "unhandled experiment");
}

}  // namespace nhcd
