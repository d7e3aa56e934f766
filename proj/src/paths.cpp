#include "nhcd/paths.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/math/interpolators/makima.hpp>

#include "nhcd/errors.hpp"

namespace nhcd {

namespace {

constexpr Complex kI{0.0, 1.0};

using Interpolant = boost::math::interpolators::makima<std::vector<double>>;

void check_samples(double period, int samples) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw std::invalid_argument("ControlSchedule: period must be positive");
  }
  if (samples < 2) {
    throw std::invalid_argument("ControlSchedule: need at least two samples");
  }
}

}  // namespace

struct ControlSchedule::Table {
  double t0;
  double t1;
  Interpolant amplitude;
  Interpolant delta;
  Interpolant phi;
};

std::string to_string(Direction direction) {
  return direction == Direction::Clockwise ? "cw" : "ccw";
}

std::string to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::CosineLoop: return "cosine";
    case ScheduleKind::ApolloniusCircle: return "apollonius";
    case ScheduleKind::Torus: return "torus";
    case ScheduleKind::Custom: return "custom";
  }
  return "unknown";
}

ControlSchedule ControlSchedule::cosine_loop(double period, double j_min, double j_max,
                                             double delta_amp, double kappa, int samples) {
  check_samples(period, samples);
  if (kappa < 0.0) {
    throw std::invalid_argument("ControlSchedule: kappa must be nonnegative");
  }
  ControlSchedule s;
  s.kind_ = ScheduleKind::CosineLoop;
  s.period_ = period;
  s.samples_ = samples;
  s.kappa_ = kappa;
  s.j_min_ = j_min;
  s.j_max_ = j_max;
  s.delta_amp_ = delta_amp;
  return s;
}

ControlSchedule ControlSchedule::torus(double period, double alpha_i, double alpha_r0,
                                       double omega, double nu, double kappa, int samples) {
  check_samples(period, samples);
  if (alpha_i == 0.0) {
    throw HyperbolicSingularity("torus path needs alpha_I != 0");
  }
  ControlSchedule s;
  s.kind_ = ScheduleKind::Torus;
  s.period_ = period;
  s.samples_ = samples;
  s.kappa_ = kappa;
  s.alpha_i_ = alpha_i;
  s.alpha_r0_ = alpha_r0;
  s.omega_ = omega;
  s.nu_ = nu;
  s.j_min_ = kappa * std::tanh(std::abs(alpha_i));
  s.j_max_ = kappa / std::tanh(std::abs(alpha_i));
  return s;
}

ControlSchedule ControlSchedule::custom(std::vector<double> times,
                                        const std::vector<Complex>& couplings,
                                        std::vector<double> deltas, double kappa, int samples) {
  if (times.size() < 4 || couplings.size() != times.size() || deltas.size() != times.size()) {
    throw std::invalid_argument("custom schedule: need >= 4 rows of equal length");
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) {
      throw std::invalid_argument("custom schedule: times must be strictly increasing");
    }
  }
  const bool real_coupling = std::all_of(couplings.begin(), couplings.end(),
                                         [](Complex c) { return c.imag() == 0.0; });
  std::vector<double> amplitude(times.size());
  std::vector<double> phi(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (real_coupling) {
      amplitude[k] = couplings[k].real();
      phi[k] = 0.0;
    } else {
      amplitude[k] = std::abs(couplings[k]);
      phi[k] = std::arg(couplings[k]);
      if (k > 0) {
        // unwrap
        phi[k] += 2.0 * kPi * std::round((phi[k - 1] - phi[k]) / (2.0 * kPi));
      }
    }
  }

  const double t0 = times.front();
  const double t1 = times.back();
  check_samples(t1 - t0, samples);

  auto t_amp = times;
  auto t_phi = times;
  auto table = std::make_shared<Table>(Table{
      t0, t1, Interpolant(std::move(t_amp), std::move(amplitude)),
      Interpolant(std::move(times), std::move(deltas)),
      Interpolant(std::move(t_phi), std::move(phi))});

  ControlSchedule s;
  s.kind_ = ScheduleKind::Custom;
  s.period_ = t1 - t0;
  s.samples_ = samples;
  s.kappa_ = kappa;
  s.table_ = std::move(table);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double delta_max = 0.0;
  for (double t : s.grid()) {
    const ControlSample c = s.sample(t);
    lo = std::min(lo, c.amplitude);
    hi = std::max(hi, c.amplitude);
    if (std::abs(c.delta) > std::abs(delta_max)) {
      delta_max = c.delta;
    }
  }
  s.j_min_ = lo;
  s.j_max_ = hi;
  s.delta_amp_ = delta_max;
  return s;
}

ControlSchedule ControlSchedule::from_csv(const std::string& path, double kappa, int samples) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open schedule file " + path);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error(path + ": empty schedule file");
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  if (line != "t,J_x,J_y,delta") {
    throw std::runtime_error(path + ": expected header t,J_x,J_y,delta");
  }
  std::vector<double> times;
  std::vector<Complex> couplings;
  std::vector<double> deltas;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") {
      continue;
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double t = 0, jx = 0, jy = 0, d = 0;
    if (!(fields >> t >> jx >> jy >> d)) {
      throw std::runtime_error(path + ": malformed row " + std::to_string(row));
    }
    times.push_back(t);
    couplings.emplace_back(jx, jy);
    deltas.push_back(d);
  }
  return custom(std::move(times), couplings, std::move(deltas), kappa, samples);
}

ControlSchedule ControlSchedule::reversed() const {
  ControlSchedule s = *this;
  if ((kind_ == ScheduleKind::CosineLoop || kind_ == ScheduleKind::ApolloniusCircle) && !phase_) {
    // j is even and delta odd about t = T/2, so reversal flips the delta amplitude.
    s.delta_amp_ = -delta_amp_;
  } else {
    s.reversed_ = !reversed_;
  }
  return s;
}

ControlSchedule ControlSchedule::with_phase(PhaseSchedule phase) const {
  if (kind_ == ScheduleKind::Custom) {
    throw std::invalid_argument("with_phase: custom schedules carry their own phase");
  }
  ControlSchedule s = *this;
  s.phase_ = std::move(phase);
  return s;
}

Direction ControlSchedule::direction() const {
  if (kind_ == ScheduleKind::CosineLoop || kind_ == ScheduleKind::ApolloniusCircle) {
    return delta_amp_ < 0.0 ? Direction::Clockwise : Direction::CounterClockwise;
  }
  // Shoelace area in the (j, delta) plane; positive is counter-clockwise.
  const std::vector<double> g = grid();
  double area = 0.0;
  ControlSample prev = sample(g.front());
  for (std::size_t k = 1; k < g.size(); ++k) {
    const ControlSample cur = sample(g[k]);
    area += prev.amplitude * cur.delta - cur.amplitude * prev.delta;
    prev = cur;
  }
  return area < 0.0 ? Direction::Clockwise : Direction::CounterClockwise;
}

std::vector<double> ControlSchedule::grid() const {
  const auto [t0, t1] = kind_ == ScheduleKind::Custom ? domain() : std::pair{0.0, period_};
  std::vector<double> g(static_cast<std::size_t>(samples_));
  for (int k = 0; k < samples_; ++k) {
    g[k] = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(samples_ - 1);
  }
  g.back() = t1;
  return g;
}

std::pair<double, double> ControlSchedule::domain() const {
  if (table_) {
    return {table_->t0, table_->t1};
  }
  return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
}

ControlSample ControlSchedule::sample(double t) const {
  if (!reversed_) {
    return sample_forward(t);
  }
  const double origin = table_ ? table_->t0 : 0.0;
  ControlSample c = sample_forward(origin + period_ - (t - origin));
  c.t = t;
  c.amplitude_rate = -c.amplitude_rate;
  c.delta_rate = -c.delta_rate;
  c.phi_rate = -c.phi_rate;
  return c;
}

ControlSample ControlSchedule::sample_forward(double t) const {
  ControlSample c;
  c.t = t;
  const double w = 2.0 * kPi / period_;
  switch (kind_) {
    case ScheduleKind::CosineLoop:
    case ScheduleKind::ApolloniusCircle: {
      const double half_span = 0.5 * (j_max_ - j_min_);
      c.amplitude = half_span * std::cos(w * t) + 0.5 * (j_max_ + j_min_);
      c.amplitude_rate = -half_span * w * std::sin(w * t);
      c.delta = delta_amp_ * std::sin(w * t);
      c.delta_rate = delta_amp_ * w * std::cos(w * t);
      break;
    }
    case ScheduleKind::Torus: {
      const double ar = alpha_r0_ + omega_ * t;
      const double s2i = std::sinh(2.0 * alpha_i_);
      const DetuningCoupling dc = j_delta_from_angles(ar, alpha_i_, kappa_);
      c.delta = dc.delta;
      c.amplitude = dc.amplitude;
      c.delta_rate = 4.0 * kappa_ * std::cos(2.0 * ar) / s2i * omega_;
      c.amplitude_rate = 2.0 * kappa_ * std::sin(2.0 * ar) / s2i * omega_;
      c.phi = nu_ * t;
      c.phi_rate = nu_;
      break;
    }
    case ScheduleKind::Custom: {
      const double tc = std::clamp(t, table_->t0, table_->t1);
      c.amplitude = table_->amplitude(tc);
      c.amplitude_rate = table_->amplitude.prime(tc);
      c.delta = table_->delta(tc);
      c.delta_rate = table_->delta.prime(tc);
      c.phi = table_->phi(tc);
      c.phi_rate = table_->phi.prime(tc);
      break;
    }
  }
  if (phase_) {
    c.phi = phase_->phi(t);
    c.phi_rate = phase_->rate(t);
  }
  return c;
}

SystemParams ControlSchedule::params(double t) const {
  const ControlSample c = sample(t);
  return SystemParams(c.delta, c.amplitude, kappa_, c.phi);
}

double ApolloniusCircle::alpha_imag() const {
  // |eps + i k| / |eps - i k| at the point J = c + R, delta = 0.
  const double j = j_max();
  return 0.5 * std::log(std::abs((j + kappa) / (j - kappa)));
}

ControlSchedule ApolloniusCircle::schedule(double period, Direction direction, int samples) const {
  const double amp = direction == Direction::Clockwise ? -2.0 * radius : 2.0 * radius;
  ControlSchedule s = ControlSchedule::cosine_loop(period, j_min(), j_max(), amp, kappa, samples);
  s.kind_ = ScheduleKind::ApolloniusCircle;
  return s;
}

ApolloniusCircle apollonius_from_ratio(double ratio, double kappa) {
  if (!(ratio > 0.0) || !(kappa > 0.0)) {
    throw std::invalid_argument("apollonius_from_ratio: need r > 0 and kappa > 0");
  }
  if (std::abs(ratio - 1.0) < 1e-12) {
    throw DegenerateRatio("apollonius_from_ratio: r = 1 gives a line, not a circle");
  }
  const double r2 = ratio * ratio;
  ApolloniusCircle c;
  c.ratio = ratio;
  c.kappa = kappa;
  c.center = kappa * (1.0 + r2) / (1.0 - r2);
  c.radius = 2.0 * kappa * ratio / std::abs(1.0 - r2);
  return c;
}

DetuningCoupling j_delta_from_angles(double alpha_r, double alpha_i, double kappa) {
  if (alpha_i == 0.0) {
    throw HyperbolicSingularity("j_delta_from_angles: alpha_I = 0");
  }
  const double s2i = std::sinh(2.0 * alpha_i);
  return {2.0 * kappa * std::sin(2.0 * alpha_r) / s2i,
          kappa * (std::cosh(2.0 * alpha_i) - std::cos(2.0 * alpha_r)) / s2i};
}

Complex alpha_rate(const ControlSample& sample, double kappa) {
  const Complex energy{0.5 * sample.delta, -kappa};
  const double j = sample.amplitude;
  const Complex denominator = energy * energy + j * j;
  return (sample.amplitude_rate * energy - j * 0.5 * sample.delta_rate) / denominator;
}

Complex alpha_rate_epsilon(const ControlSample& sample, double kappa) {
  const Complex eps{0.5 * sample.delta, sample.amplitude};
  const Complex eps_rate{0.5 * sample.delta_rate, sample.amplitude_rate};
  const Complex ik = kI * kappa;
  return (eps_rate / (eps - ik) - std::conj(eps_rate) / (std::conj(eps) - ik)) / (2.0 * kI);
}

PathPoint path_point(const ControlSchedule& schedule, double t,
                     const std::optional<ComplexAngle>& reference) {
  const ControlSample c = schedule.sample(t);
  const SystemParams params(c.delta, c.amplitude, schedule.kappa(), c.phi);
  if (params.distance_to_exceptional_point() < kMinEpDistance) {
    throw PathTooCloseToEP("path passes within 1e-6 rad/us of an exceptional point", t);
  }
  PathPoint p;
  p.t = t;
  p.params = params;
  p.alpha = mixing_angle(params, reference);
  const bool real_slice = c.phi == 0.0 && c.phi_rate == 0.0;
  p.alpha_rate = real_slice ? alpha_rate_epsilon(c, schedule.kappa()) : alpha_rate(c, schedule.kappa());
  p.phi_rate = c.phi_rate;
  return p;
}

std::vector<PathPoint> tracked_angle(const ControlSchedule& schedule,
                                     const std::optional<ComplexAngle>& start) {
  const std::vector<double> grid = schedule.grid();
  std::vector<PathPoint> path;
  path.reserve(grid.size());
  path.push_back(path_point(schedule, grid.front(), start));
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const PathPoint& prev = path.back();
    const double dt = grid[k] - grid[k - 1];
    ComplexAngle predicted = prev.alpha;
    predicted.real += prev.alpha_rate.real() * dt;
    predicted.imag += prev.alpha_rate.imag() * dt;
    PathPoint next = path_point(schedule, grid[k], predicted);
    if (std::abs(next.alpha.real - prev.alpha.real) >= 0.5 * kPi) {
      throw SamplingTooCoarse("mixing angle jumps by pi/2 or more between samples", grid[k]);
    }
    path.push_back(std::move(next));
  }
  return path;
}

int winding_number(const ControlSchedule& schedule, Complex point) {
  const std::vector<double> grid = schedule.grid();
  auto eps = [&](double t) {
    const ControlSample c = schedule.sample(t);
    return Complex{0.5 * c.delta, c.amplitude};
  };
  double turned = 0.0;
  Complex prev = eps(grid.front()) - point;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const Complex cur = eps(grid[k]) - point;
    turned += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(turned / (2.0 * kPi)));
}

int enclosed_ep_count(const ControlSchedule& schedule) {
  const Complex ik = kI * schedule.kappa();
  return std::abs(winding_number(schedule, ik)) + std::abs(winding_number(schedule, -ik));
}

double max_alpha_imag_rate(std::span<const PathPoint> path) {
  double m = 0.0;
  for (const PathPoint& p : path) {
    m = std::max(m, std::abs(p.alpha_rate.imag()));
  }
  return m;
}

}  // namespace nhcd
