#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nhcd/counterdiabatic.hpp"

namespace nhcd {

enum class ExperimentKind { AdiabaticitySweep, Encircle, PeriodSweep, ApolloniusDeviation, TopologyScan };

/// adiabaticity, encircle, period-sweep, apollonius, topology.
std::string to_string(ExperimentKind kind);
/// Throws ConfigError on unknown names.
ExperimentKind parse_experiment(const std::string& text, const std::string& field = "experiment.name");

/// INI layout:
///
///   [experiment] name, output_dir, threads
///   [physical]   gamma_e, gamma_f, kappa
///   [schedule]   period, j_min, j_max, delta_amp, direction, samples, periods
///   [drive]      cd, max_drive_amp
///   [integrator] dt
///   [topology]   j_min_start, j_min_stop, j_min_count
///   [apollonius] ratio
///
/// kappa is (gamma_e - gamma_f)/4 when both decay rates are given; an
/// explicit kappa must then agree with them.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Encircle;
  std::string output_dir = "out";
  unsigned threads = 0;

  std::optional<double> gamma_e;
  std::optional<double> gamma_f;
  std::optional<double> kappa;

  double period = 0.2;
  double j_min = 0.0;
  double j_max = 30.0;
  double delta_amp = -10.0 * kPi;
  std::vector<Direction> directions{Direction::Clockwise, Direction::CounterClockwise};
  int samples = ControlSchedule::kDefaultSamples;
  std::vector<double> periods;

  std::vector<CdMode> cd_modes{CdMode::None, CdMode::HermitianOnly, CdMode::Full};
  std::optional<double> max_drive_amp;

  std::optional<double> dt;

  double j_min_start = -1.0;
  double j_min_stop = 1.0;
  int j_min_count = 81;

  double ratio = 0.9733;

  /// Throws ConfigError("physical...") when kappa cannot be determined.
  double kappa_value() const;
  /// Field-level checks; throws ConfigError with the dotted key.
  void validate() const;

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig default_config(ExperimentKind kind);

/// Starts from default_config(experiment.name) and applies the file's keys.
/// Unknown sections or keys are rejected.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& config);

}  // namespace nhcd
