#pragma once

#include <functional>
#include <span>
#include <vector>

#include "nhcd/paths.hpp"

namespace nhcd {

struct TimeWindow {
  double start = 0.0;
  double end = 0.0;
};

/// a_nm(t) = |<L_n|dR_m>| / |lambda_n - lambda_m| exp(-I_nm(t)),
/// I_nm(t) = Im int_0^t (lambda_m - lambda_n).
struct AdiabaticityReport {
  std::vector<double> times;
  std::vector<double> a_pm;         ///< n = +, m = -
  std::vector<double> a_mp;         ///< n = -, m = +
  std::vector<double> exponent_pm;  ///< I_{+-}; I_{-+} = -I_{+-}
  Level initial = Level::Minus;
  /// Maximum over the grid of the pair whose m is the initial eigenstate.
  double max_a = 0.0;
  /// Closed intervals where that pair exceeds 1. Runs separated by a single
  /// sample are merged, so isolated zeros do not split a window.
  std::vector<TimeWindow> breakdown_windows;
  /// Set when Im(lambda+ - lambda-) changes sign along the path.
  bool imaginary_crossing = false;

  const std::vector<double>& tracked() const { return initial == Level::Minus ? a_pm : a_mp; }
};

/// Throws DegenerateGap if |lambda+ - lambda-| < 1e-9 rad/us at any sample.
AdiabaticityReport adiabaticity_parameter(std::span<const PathPoint> path,
                                          Level initial = Level::Minus);

struct MaxARow {
  double period = 0.0;
  Direction direction = Direction::CounterClockwise;
  double max_a = 0.0;
};

using ScheduleFamily = std::function<ControlSchedule(double period)>;

/// max a_nm for every (T, direction), computed on worker threads. Rows come
/// back in (period, direction) input order.
std::vector<MaxARow> sweep_max_a(const ScheduleFamily& family, std::span<const double> periods,
                                 std::span<const Direction> directions,
                                 Level initial = Level::Minus, unsigned threads = 0);

/// The family member traversed in the requested direction.
ControlSchedule oriented(const ControlSchedule& schedule, Direction direction);

}  // namespace nhcd
