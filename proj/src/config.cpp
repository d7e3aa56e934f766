#include "nhcd/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "nhcd/errors.hpp"
#include "nhcd/io.hpp"

namespace nhcd {

namespace {

namespace pt = boost::property_tree;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "experiment.name",     "experiment.output_dir", "experiment.threads",
      "physical.gamma_e",    "physical.gamma_f",      "physical.kappa",
      "schedule.period",     "schedule.j_min",        "schedule.j_max",
      "schedule.delta_amp",  "schedule.direction",    "schedule.samples",
      "schedule.periods",    "drive.cd",              "drive.max_drive_amp",
      "integrator.dt",       "topology.j_min_start",  "topology.j_min_stop",
      "topology.j_min_count", "apollonius.ratio"};
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) {
    return "";
  }
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) {
      items.push_back(item);
    }
  }
  return items;
}

double to_number(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) {
    throw ConfigError(field, "expected a finite number, got '" + text + "'");
  }
  return v;
}

int to_integer(const std::string& text, const std::string& field) {
  const double v = to_number(text, field);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw ConfigError(field, "expected an integer, got '" + text + "'");
  }
  return static_cast<int>(v);
}

Direction to_direction(const std::string& text, const std::string& field) {
  if (text == "cw") return Direction::Clockwise;
  if (text == "ccw") return Direction::CounterClockwise;
  throw ConfigError(field, "expected cw or ccw, got '" + text + "'");
}

template <class T, class F>
std::string join(const std::vector<T>& items, F&& format) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    out += (i ? "," : "") + format(items[i]);
  }
  return out;
}

std::vector<double> sweep_periods() {
  return {0.01, 0.02, 0.04, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0};
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::AdiabaticitySweep: return "adiabaticity";
    case ExperimentKind::Encircle: return "encircle";
    case ExperimentKind::PeriodSweep: return "period-sweep";
    case ExperimentKind::ApolloniusDeviation: return "apollonius";
    case ExperimentKind::TopologyScan: return "topology";
  }
  return "unknown";
}

ExperimentKind parse_experiment(const std::string& text, const std::string& field) {
  for (ExperimentKind k : {ExperimentKind::AdiabaticitySweep, ExperimentKind::Encircle,
                           ExperimentKind::PeriodSweep, ExperimentKind::ApolloniusDeviation,
                           ExperimentKind::TopologyScan}) {
    if (to_string(k) == text) {
      return k;
    }
  }
  throw ConfigError(field,
                    "unknown experiment '" + text +
                        "' (adiabaticity, encircle, period-sweep, apollonius, topology)");
}

double ExperimentConfig::kappa_value() const {
  if (gamma_e.has_value() != gamma_f.has_value()) {
    throw ConfigError(gamma_e ? "physical.gamma_f" : "physical.gamma_e",
                      "both decay rates are needed to derive kappa");
  }
  if (gamma_e) {
    const double derived = 0.25 * (*gamma_e - *gamma_f);
    if (kappa && std::abs(*kappa - derived) > 1e-12 * std::max(1.0, std::abs(derived))) {
      throw ConfigError("physical.kappa", "conflicts with (gamma_e - gamma_f)/4 = " +
                                              format_number(derived));
    }
    if (derived < 0.0) {
      throw ConfigError("physical.gamma_f", "gamma_f exceeds gamma_e, kappa would be negative");
    }
    return derived;
  }
  if (!kappa) {
    throw ConfigError("physical.kappa", "set kappa or both gamma_e and gamma_f");
  }
  if (*kappa < 0.0) {
    throw ConfigError("physical.kappa", "must be nonnegative");
  }
  return *kappa;
}

void ExperimentConfig::validate() const {
  kappa_value();
  if (!(period > 0.0)) throw ConfigError("schedule.period", "must be positive");
  if (samples < 2) throw ConfigError("schedule.samples", "must be at least 2");
  if (!(j_max > j_min)) throw ConfigError("schedule.j_max", "must exceed j_min");
  if (directions.empty()) throw ConfigError("schedule.direction", "no direction selected");
  if (cd_modes.empty()) throw ConfigError("drive.cd", "no drive mode selected");
  if (dt && !(*dt > 0.0)) throw ConfigError("integrator.dt", "must be positive");
  if (max_drive_amp && !(*max_drive_amp > 0.0)) {
    throw ConfigError("drive.max_drive_amp", "must be positive");
  }
  for (double p : periods) {
    if (!(p > 0.0)) throw ConfigError("schedule.periods", "periods must be positive");
  }
  const bool sweep = experiment == ExperimentKind::PeriodSweep ||
                     experiment == ExperimentKind::AdiabaticitySweep;
  if (sweep && periods.empty()) {
    throw ConfigError("schedule.periods", "sweep needs at least one period");
  }
  if (experiment == ExperimentKind::TopologyScan) {
    if (j_min_count < 1) throw ConfigError("topology.j_min_count", "must be at least 1");
    if (j_min_count > 1 && !(j_min_stop > j_min_start)) {
      throw ConfigError("topology.j_min_stop", "must exceed j_min_start");
    }
    if (!(j_max > j_min_stop)) throw ConfigError("schedule.j_max", "must exceed topology.j_min_stop");
  }
  if (experiment == ExperimentKind::ApolloniusDeviation &&
      (!(ratio > 0.0) || std::abs(ratio - 1.0) < 1e-12)) {
    throw ConfigError("apollonius.ratio", "must be positive and different from 1");
  }
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.experiment = kind;
  c.gamma_e = 1.37;
  c.gamma_f = 0.21;
  switch (kind) {
    case ExperimentKind::Encircle:
      break;
    case ExperimentKind::AdiabaticitySweep:
      c.periods = {0.01, 0.02, 0.04, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0};
      c.cd_modes = {CdMode::None};
      break;
    case ExperimentKind::PeriodSweep:
      c.periods = sweep_periods();
      c.cd_modes = {CdMode::None, CdMode::HermitianOnly};
      break;
    case ExperimentKind::ApolloniusDeviation:
      c.gamma_e.reset();
      c.gamma_f.reset();
      c.kappa = 0.413;
      c.j_min = 0.007;
      c.j_max = 30.3;
      c.delta_amp = 0.7 * kPi;
      c.directions = {Direction::CounterClockwise};
      c.cd_modes = {CdMode::HermitianOnly, CdMode::Full};
      break;
    case ExperimentKind::TopologyScan:
      c.gamma_e.reset();
      c.gamma_f.reset();
      c.kappa = 0.21;
      c.directions = {Direction::Clockwise};
      c.cd_modes = {CdMode::Full};
      break;
  }
  return c;
}

ExperimentConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config", e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(section, "key outside any section");
    }
    for (const auto& [key, value] : body) {
      const std::string field = section + "." + key;
      if (!known_keys().count(field)) {
        throw ConfigError(field, "unknown key");
      }
    }
  }

  const auto get = [&](const std::string& field) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(field, '.'))) {
      return trim(*v);
    }
    return std::nullopt;
  };

  const auto name = get("experiment.name");
  if (!name) {
    throw ConfigError("experiment.name", "missing");
  }
  ExperimentConfig c = default_config(parse_experiment(*name));

  if (auto v = get("experiment.output_dir")) c.output_dir = *v;
  if (auto v = get("experiment.threads")) {
    const int n = to_integer(*v, "experiment.threads");
    if (n < 0) throw ConfigError("experiment.threads", "must be nonnegative");
    c.threads = static_cast<unsigned>(n);
  }

  const auto ge = get("physical.gamma_e");
  const auto gf = get("physical.gamma_f");
  const auto kv = get("physical.kappa");
  if (ge || gf || kv) {
    c.gamma_e.reset();
    c.gamma_f.reset();
    c.kappa.reset();
    if (ge) c.gamma_e = to_number(*ge, "physical.gamma_e");
    if (gf) c.gamma_f = to_number(*gf, "physical.gamma_f");
    if (kv) c.kappa = to_number(*kv, "physical.kappa");
  }

  if (auto v = get("schedule.period")) c.period = to_number(*v, "schedule.period");
  if (auto v = get("schedule.j_min")) c.j_min = to_number(*v, "schedule.j_min");
  if (auto v = get("schedule.j_max")) c.j_max = to_number(*v, "schedule.j_max");
  if (auto v = get("schedule.delta_amp")) c.delta_amp = to_number(*v, "schedule.delta_amp");
  if (auto v = get("schedule.samples")) c.samples = to_integer(*v, "schedule.samples");
  if (auto v = get("schedule.direction")) {
    c.directions.clear();
    for (const std::string& item : split_list(*v)) {
      c.directions.push_back(to_direction(item, "schedule.direction"));
    }
  }
  if (auto v = get("schedule.periods")) {
    c.periods.clear();
    for (const std::string& item : split_list(*v)) {
      c.periods.push_back(to_number(item, "schedule.periods"));
    }
  }
  if (auto v = get("drive.cd")) {
    c.cd_modes.clear();
    for (const std::string& item : split_list(*v)) {
      try {
        c.cd_modes.push_back(parse_cd_mode(item));
      } catch (const std::invalid_argument& e) {
        throw ConfigError("drive.cd", e.what());
      }
    }
  }
  if (auto v = get("drive.max_drive_amp")) {
    c.max_drive_amp = v->empty() ? std::nullopt
                                 : std::optional<double>(to_number(*v, "drive.max_drive_amp"));
  }
  if (auto v = get("integrator.dt")) {
    c.dt = v->empty() ? std::nullopt : std::optional<double>(to_number(*v, "integrator.dt"));
  }
  if (auto v = get("topology.j_min_start")) c.j_min_start = to_number(*v, "topology.j_min_start");
  if (auto v = get("topology.j_min_stop")) c.j_min_stop = to_number(*v, "topology.j_min_stop");
  if (auto v = get("topology.j_min_count")) c.j_min_count = to_integer(*v, "topology.j_min_count");
  if (auto v = get("apollonius.ratio")) c.ratio = to_number(*v, "apollonius.ratio");

  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config", "cannot open " + path);
  }
  return parse_config(in);
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  const auto num = [](double v) { return format_number(v); };
  out << "[experiment]\n"
      << "name = " << to_string(c.experiment) << '\n'
      << "output_dir = " << c.output_dir << '\n'
      << "threads = " << c.threads << "\n\n";
  out << "[physical]\n";
  if (c.gamma_e) out << "gamma_e = " << num(*c.gamma_e) << '\n';
  if (c.gamma_f) out << "gamma_f = " << num(*c.gamma_f) << '\n';
  if (c.kappa) out << "kappa = " << num(*c.kappa) << '\n';
  out << "\n[schedule]\n"
      << "period = " << num(c.period) << '\n'
      << "j_min = " << num(c.j_min) << '\n'
      << "j_max = " << num(c.j_max) << '\n'
      << "delta_amp = " << num(c.delta_amp) << '\n'
      << "direction = " << join(c.directions, [](Direction d) { return to_string(d); }) << '\n'
      << "samples = " << c.samples << '\n'
      << "periods = " << join(c.periods, num) << "\n\n";
  out << "[drive]\n"
      << "cd = " << join(c.cd_modes, [](CdMode m) { return to_string(m); }) << '\n';
  if (c.max_drive_amp) out << "max_drive_amp = " << num(*c.max_drive_amp) << '\n';
  out << "\n[integrator]\n";
  if (c.dt) out << "dt = " << num(*c.dt) << '\n';
  out << "\n[topology]\n"
      << "j_min_start = " << num(c.j_min_start) << '\n'
      << "j_min_stop = " << num(c.j_min_stop) << '\n'
      << "j_min_count = " << c.j_min_count << "\n\n";
  out << "[apollonius]\n"
      << "ratio = " << num(c.ratio) << '\n';
  return out.str();
}

}  // namespace nhcd
