#include "nhcd/adiabaticity.hpp"

#include <algorithm>
#include <cmath>

#include "nhcd/counterdiabatic.hpp"
#include "nhcd/errors.hpp"
#include "nhcd/parallel.hpp"

namespace nhcd {

namespace {

constexpr double kMinGap = 1e-9;

std::vector<TimeWindow> windows_above_one(const std::vector<double>& times,
                                          const std::vector<double>& a) {
  std::vector<TimeWindow> out;
  std::size_t last_above = 0;
  bool open = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!(a[k] > 1.0)) {
      continue;
    }
    if (open && k - last_above <= 2) {
      out.back().end = times[k];
    } else {
      out.push_back({times[k], times[k]});
      open = true;
    }
    last_above = k;
  }
  return out;
}

}  // namespace

AdiabaticityReport adiabaticity_parameter(std::span<const PathPoint> path, Level initial) {
  AdiabaticityReport r;
  r.initial = initial;
  const std::size_t n = path.size();
  r.times.reserve(n);
  r.a_pm.reserve(n);
  r.a_mp.reserve(n);
  r.exponent_pm.reserve(n);

  double exponent = 0.0;
  Complex prev_difference = 0.0;
  double first_sign = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const PathPoint& p = path[k];
    const Eigensystem es = eigensystem(p.params, p.alpha);
    const Complex gap = es.lambda_plus - es.lambda_minus;
    if (std::abs(gap) < kMinGap) {
      throw DegenerateGap("adiabaticity: |lambda+ - lambda-| < 1e-9 at t = " + std::to_string(p.t));
    }
    // lambda_m - lambda_n for n = +, m = -.
    const Complex difference = -gap;
    if (k > 0) {
      exponent += 0.5 * (p.t - path[k - 1].t) * (difference + prev_difference).imag();
    }
    prev_difference = difference;

    const double im_gap = gap.imag();
    if (std::abs(im_gap) > 1e-12 * std::abs(gap)) {
      if (first_sign == 0.0) {
        first_sign = std::copysign(1.0, im_gap);
      } else if (std::copysign(1.0, im_gap) != first_sign) {
        r.imaginary_crossing = true;
      }
    }

    const Matrix2c m = derivative_overlaps(p);
    const double magnitude_gap = std::abs(gap);
    r.times.push_back(p.t);
    r.exponent_pm.push_back(exponent);
    r.a_pm.push_back(std::abs(m(0, 1)) / magnitude_gap * std::exp(-exponent));
    r.a_mp.push_back(std::abs(m(1, 0)) / magnitude_gap * std::exp(exponent));
  }

  const std::vector<double>& a = r.tracked();
  r.max_a = a.empty() ? 0.0 : *std::max_element(a.begin(), a.end());
  r.breakdown_windows = windows_above_one(r.times, a);
  return r;
}

ControlSchedule oriented(const ControlSchedule& schedule, Direction direction) {
  return schedule.direction() == direction ? schedule : schedule.reversed();
}

std::vector<MaxARow> sweep_max_a(const ScheduleFamily& family, std::span<const double> periods,
                                 std::span<const Direction> directions, Level initial,
                                 unsigned threads) {
  std::vector<MaxARow> rows(periods.size() * directions.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    const double period = periods[i / directions.size()];
    const Direction direction = directions[i % directions.size()];
    const ControlSchedule schedule = oriented(family(period), direction);
    const std::vector<PathPoint> path = tracked_angle(schedule);
    rows[i] = {period, direction, adiabaticity_parameter(path, initial).max_a};
  });
  return rows;
}

}  // namespace nhcd
