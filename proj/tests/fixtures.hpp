#pragma once

#include <cmath>
#include <random>

#include "nhcd/paths.hpp"

namespace fixtures {

inline constexpr double kKappa = 0.29;
inline constexpr double kEllipseKappa = 0.413;

/// jMax = 30, jMin = 0, |delta| = 10 pi, clockwise for delta_amp < 0.
inline nhcd::ControlSchedule encircling_loop(double period, nhcd::Direction direction,
                                             int samples = nhcd::ControlSchedule::kDefaultSamples,
                                             double j_min = 0.0, double kappa = kKappa) {
  const double amp = direction == nhcd::Direction::Clockwise ? -10.0 * nhcd::kPi : 10.0 * nhcd::kPi;
  return nhcd::ControlSchedule::cosine_loop(period, j_min, 30.0, amp, kappa, samples);
}

inline nhcd::ControlSchedule ellipse(double period) {
  return nhcd::ControlSchedule::cosine_loop(period, 0.007, 30.3, 0.7 * nhcd::kPi, kEllipseKappa);
}

/// Random complex number with parts in [-scale, scale].
inline nhcd::Complex random_complex(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

}  // namespace fixtures
