#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nhcd/errors.hpp"
#include "nhcd/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Overrides {
  std::optional<std::string> experiment;
  std::optional<std::string> config;
  std::optional<std::string> out;
  std::optional<double> dt;
  std::optional<double> period;
  std::optional<std::string> direction;
  std::optional<std::string> cd;
  std::optional<double> max_drive_amp;
  std::optional<double> j_min;
  std::optional<double> j_max;
  std::optional<double> delta_amp;
  std::optional<double> gamma_e;
  std::optional<double> gamma_f;
  std::optional<unsigned> threads;
  bool print_config = false;
};

nhcd::ExperimentConfig build_config(const Overrides& o) {
  using nhcd::ConfigError;
  nhcd::ExperimentConfig c;
  if (o.config) {
    c = nhcd::load_config(*o.config);
    if (o.experiment && nhcd::parse_experiment(*o.experiment, "--experiment") != c.experiment) {
      throw ConfigError("experiment.name", "--experiment disagrees with the config file");
    }
  } else if (o.experiment) {
    c = nhcd::default_config(nhcd::parse_experiment(*o.experiment, "--experiment"));
  } else {
    throw ConfigError("experiment.name", "give --experiment or --config");
  }

  if (o.out) c.output_dir = *o.out;
  if (o.threads) c.threads = *o.threads;
  if (o.dt) c.dt = *o.dt;
  if (o.period) c.period = *o.period;
  if (o.direction) {
    if (*o.direction == "cw") {
      c.directions = {nhcd::Direction::Clockwise};
    } else if (*o.direction == "ccw") {
      c.directions = {nhcd::Direction::CounterClockwise};
    } else {
      throw ConfigError("schedule.direction", "expected cw or ccw");
    }
  }
  if (o.cd) {
    try {
      c.cd_modes = {nhcd::parse_cd_mode(*o.cd)};
    } catch (const std::invalid_argument& e) {
      throw ConfigError("drive.cd", e.what());
    }
  }
  if (o.max_drive_amp) c.max_drive_amp = *o.max_drive_amp;
  if (o.j_min) c.j_min = *o.j_min;
  if (o.j_max) c.j_max = *o.j_max;
  if (o.delta_amp) c.delta_amp = *o.delta_amp;
  if (o.gamma_e || o.gamma_f) {
    c.kappa.reset();
    if (o.gamma_e) c.gamma_e = *o.gamma_e;
    if (o.gamma_f) c.gamma_f = *o.gamma_f;
  }
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counterdiabatic control of a passive PT dimer near its exceptional points"};
  Overrides o;
  app.add_option("--experiment", o.experiment,
                 "adiabaticity | encircle | period-sweep | apollonius | topology");
  app.add_option("--config", o.config, "INI config file")->check(CLI::ExistingFile);
  app.add_option("--out", o.out, "output directory");
  app.add_option("--dt", o.dt, "integration step (us)");
  app.add_option("--period", o.period, "loop period T (us)");
  app.add_option("--direction", o.direction, "cw | ccw");
  app.add_option("--cd", o.cd, "none | hermitian | full | parallel");
  app.add_option("--max-drive-amp", o.max_drive_amp, "clamp on CD drive entries (rad/us)");
  app.add_option("--jmin", o.j_min, "J_min (rad/us)");
  app.add_option("--jmax", o.j_max, "J_max (rad/us)");
  app.add_option("--delta-amp", o.delta_amp, "signed detuning amplitude (rad/us)");
  app.add_option("--gamma-e", o.gamma_e, "decay rate of |e> (1/us)");
  app.add_option("--gamma-f", o.gamma_f, "decay rate of |f> (1/us)");
  app.add_option("--threads", o.threads, "worker threads (0 = all cores)");
  app.add_flag("--print-config", o.print_config, "print the resolved config and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    const nhcd::ExperimentConfig config = build_config(o);
    if (o.print_config) {
      std::cout << nhcd::serialize_config(config);
      return 0;
    }
    const nhcd::RunResult result = nhcd::run_experiment(config);
    for (const std::string& f : result.files) {
      std::cout << config.output_dir << '/' << f << '\n';
    }
    for (const nhcd::LoopSummary& s : result.summaries) {
      std::printf("T=%g %s %s Dbar=%.4f xT=%.4f EPs=%d\n", s.period,
                  nhcd::to_string(s.direction).c_str(), nhcd::to_string(s.cd_mode).c_str(), s.dbar,
                  s.x_t, s.enclosed_eps);
    }
    return 0;
  } catch (const nhcd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nhcd::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
