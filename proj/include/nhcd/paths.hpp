#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nhcd/spectrum.hpp"

namespace nhcd {

enum class ScheduleKind { CosineLoop, ApolloniusCircle, Torus, Custom };

/// Encircling direction in the (J, delta) plane; delta amplitude < 0 is clockwise.
enum class Direction { Clockwise, CounterClockwise };

std::string to_string(Direction direction);
std::string to_string(ScheduleKind kind);

/// Control values and their time derivatives at one instant.
struct ControlSample {
  double t = 0.0;
  double amplitude = 0.0;  ///< signed coupling amplitude j (rad/us)
  double delta = 0.0;      ///< detuning (rad/us)
  double phi = 0.0;        ///< coupling phase (rad)
  double amplitude_rate = 0.0;
  double delta_rate = 0.0;
  double phi_rate = 0.0;
};

/// Phase schedule phi(t) with its derivative.
struct PhaseSchedule {
  std::function<double(double)> phi;
  std::function<double(double)> rate;
};

struct ApolloniusCircle;

/// Time-parameterized control path over (j, delta, phi) on [0, T].
///
/// Immutable value type; copies share the (immutable) interpolation tables
/// of custom schedules.
class ControlSchedule {
public:
  static constexpr int kDefaultSamples = 2001;

  /// j(t) = (jmax - jmin)/2 cos(2 pi t/T) + (jmax + jmin)/2,
  /// delta(t) = delta_amp sin(2 pi t/T).
  static ControlSchedule cosine_loop(double period, double j_min, double j_max, double delta_amp,
                                     double kappa, int samples = kDefaultSamples);

  /// Constant-alpha_I path with alpha_R(t) = alpha_r0 + omega t and phi(t) = nu t,
  /// mapped to (delta, |J|) in closed form.
  static ControlSchedule torus(double period, double alpha_i, double alpha_r0, double omega,
                               double nu, double kappa, int samples = kDefaultSamples);

  /// Sampled table (t, J, delta), interpolated with modified Akima cubics.
  /// All-real couplings keep their sign with phi = 0; otherwise j = |J| and
  /// phi = unwrapped arg J.
  static ControlSchedule custom(std::vector<double> times, const std::vector<Complex>& couplings,
                                std::vector<double> deltas, double kappa,
                                int samples = kDefaultSamples);

  /// Reads a custom schedule from CSV with header `t,J_x,J_y,delta`.
  static ControlSchedule from_csv(const std::string& path, double kappa,
                                  int samples = kDefaultSamples);

  /// Same geometry traversed backwards: sample(t) = original(T - t).
  ControlSchedule reversed() const;
  /// Overrides phi(t) for the analytic kinds.
  ControlSchedule with_phase(PhaseSchedule phase) const;

  ControlSample sample(double t) const;
  SystemParams params(double t) const;

  ScheduleKind kind() const { return kind_; }
  double period() const { return period_; }
  int sample_count() const { return samples_; }
  double kappa() const { return kappa_; }
  double j_min() const { return j_min_; }
  double j_max() const { return j_max_; }
  double delta_amp() const { return delta_amp_; }
  bool is_reversed() const { return reversed_; }
  Direction direction() const;

  /// Uniform grid t_k = k T / (N - 1), k = 0..N-1.
  std::vector<double> grid() const;
  /// Interval on which sample() is defined without extrapolation.
  std::pair<double, double> domain() const;

private:
  friend struct ApolloniusCircle;
  struct Table;

  ControlSample sample_forward(double t) const;

  ScheduleKind kind_ = ScheduleKind::CosineLoop;
  double period_ = 1.0;
  int samples_ = kDefaultSamples;
  double kappa_ = 0.0;
  double j_min_ = 0.0;
  double j_max_ = 0.0;
  double delta_amp_ = 0.0;
  // torus parameters
  double alpha_i_ = 0.0;
  double alpha_r0_ = 0.0;
  double omega_ = 0.0;
  double nu_ = 0.0;
  bool reversed_ = false;
  std::optional<PhaseSchedule> phase_;
  std::shared_ptr<const Table> table_;
};

/// One point of a branch-tracked path.
struct PathPoint {
  double t = 0.0;
  SystemParams params;
  ComplexAngle alpha;
  Complex alpha_rate;  ///< d alpha / dt (rad/us)
  double phi_rate = 0.0;
};

struct ApolloniusCircle {
  double ratio = 0.0;
  double kappa = 0.0;
  double center = 0.0;  ///< on the J axis (rad/us)
  double radius = 0.0;

  double j_min() const { return center - radius; }
  double j_max() const { return center + radius; }
  /// The constant alpha_I along the circle (sign follows which EP it encloses).
  double alpha_imag() const;
  /// Cosine loop tracing the circle, delta amplitude 2R (counter-clockwise)
  /// or -2R for the clockwise traversal.
  ControlSchedule schedule(double period, Direction direction = Direction::CounterClockwise,
                           int samples = ControlSchedule::kDefaultSamples) const;
};

struct DetuningCoupling {
  double delta = 0.0;
  double amplitude = 0.0;
};

/// c = kappa (1 + r^2)/(1 - r^2), R = 2 kappa r / |1 - r^2|.
/// Throws DegenerateRatio for |r - 1| < 1e-12.
ApolloniusCircle apollonius_from_ratio(double ratio, double kappa);

/// delta = 2 kappa sin(2 a_R)/sinh(2 a_I), |J| = kappa (cosh 2a_I - cos 2a_R)/sinh(2 a_I).
/// Throws HyperbolicSingularity for alpha_i = 0.
DetuningCoupling j_delta_from_angles(double alpha_r, double alpha_i, double kappa);

/// d alpha/dt from tan(alpha) = j/E by the chain rule; needs no branch.
Complex alpha_rate(const ControlSample& sample, double kappa);
/// d alpha/dt = (1/2i)[eps'/(eps - i kappa) - eps'*/(eps* - i kappa)] on the real-coupling slice.
Complex alpha_rate_epsilon(const ControlSample& sample, double kappa);

/// Minimum distance (in the epsilon plane) a tracked path may come to an EP.
inline constexpr double kMinEpDistance = 1e-6;

/// Evaluates one path point; alpha is continued from `reference` when given.
PathPoint path_point(const ControlSchedule& schedule, double t,
                     const std::optional<ComplexAngle>& reference = std::nullopt);

/// Branch-tracked alpha(t) on the schedule's grid, starting from the
/// principal value or from the continuation closest to `start`. Throws
/// PathTooCloseToEP or SamplingTooCoarse with the offending time.
std::vector<PathPoint> tracked_angle(const ControlSchedule& schedule,
                                     const std::optional<ComplexAngle>& start = std::nullopt);

/// Number of exceptional points (0, 1 or 2) enclosed by the closed loop,
/// from the winding of epsilon(t) around +i kappa and -i kappa.
int enclosed_ep_count(const ControlSchedule& schedule);

/// Winding number of epsilon(t) around `point` over one period.
int winding_number(const ControlSchedule& schedule, Complex point);

/// max_t |Im d alpha/dt|, the distance-from-Apollonius diagnostic.
double max_alpha_imag_rate(std::span<const PathPoint> path);

}  // namespace nhcd
