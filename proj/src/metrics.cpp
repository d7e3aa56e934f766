#include "nhcd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nhcd/errors.hpp"

namespace nhcd {

namespace {

constexpr double kDensityTolerance = 1e-10;

}  // namespace

Matrix2c density_from_bloch(const BlochVector& r) {
  return 0.5 * (Matrix2c::Identity() + r.x * pauli_x() + r.y * pauli_y() + r.z * pauli_z());
}

Matrix2c density_from_state(const Vector2c& state) {
  const Vector2c u = state.normalized();
  return u * u.adjoint();
}

void check_density_matrix(const Matrix2c& rho) {
  if (!rho.allFinite()) {
    throw NotADensityMatrix("density matrix has non-finite entries");
  }
  if ((rho - rho.adjoint()).norm() > kDensityTolerance) {
    throw NotADensityMatrix("density matrix is not Hermitian");
  }
  const Complex trace = rho.trace();
  if (std::abs(trace - 1.0) > kDensityTolerance) {
    throw NotADensityMatrix("density matrix trace differs from 1");
  }
  const double half_diff = 0.5 * (rho(0, 0) - rho(1, 1)).real();
  const double min_eigenvalue = 0.5 * trace.real() - std::hypot(half_diff, std::abs(rho(1, 0)));
  if (min_eigenvalue < -kDensityTolerance) {
    throw NotADensityMatrix("density matrix has a negative eigenvalue");
  }
}

double trace_distance(const Matrix2c& rho_a, const Matrix2c& rho_b) {
  check_density_matrix(rho_a);
  check_density_matrix(rho_b);
  // The difference is Hermitian and traceless, so its eigenvalues are +-r and D = r.
  const Matrix2c d = rho_a - rho_b;
  const double half_diff = 0.5 * (d(0, 0) - d(1, 1)).real();
  return std::hypot(half_diff, std::abs(0.5 * (d(0, 1) + std::conj(d(1, 0)))));
}

std::vector<double> pointwise_trace_distance(const Trajectory& trajectory) {
  if (trajectory.reference.size() != trajectory.size()) {
    throw std::invalid_argument("pointwise_trace_distance: trajectory has no reference");
  }
  std::vector<double> d(trajectory.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    d[k] = trace_distance(density_from_bloch(trajectory.pauli[k]),
                          density_from_bloch(trajectory.reference[k]));
  }
  return d;
}

std::vector<std::size_t> reporting_indices(const Trajectory& trajectory, int points) {
  if (trajectory.size() == 0 || points < 2) {
    throw std::invalid_argument("reporting_indices: empty trajectory or grid");
  }
  const double t0 = trajectory.times.front();
  const double t1 = trajectory.times.back();
  std::vector<std::size_t> idx;
  idx.reserve(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    const double target = t0 + (t1 - t0) * k / (points - 1);
    const auto it = std::lower_bound(trajectory.times.begin(), trajectory.times.end(), target);
    std::size_t i = static_cast<std::size_t>(it - trajectory.times.begin());
    if (i == trajectory.size() ||
        (i > 0 && target - trajectory.times[i - 1] < trajectory.times[i] - target)) {
      i = i == 0 ? 0 : i - 1;
    }
    idx.push_back(i);
  }
  return idx;
}

LoopSummary summarize_loop(const Trajectory& trajectory, const ControlSchedule& schedule,
                           CdMode mode) {
  const std::vector<double> d = pointwise_trace_distance(trajectory);
  LoopSummary s;
  s.period = schedule.period();
  s.direction = schedule.direction();
  s.cd_mode = mode;
  double sum = 0.0;
  const std::vector<std::size_t> idx = reporting_indices(trajectory);
  for (std::size_t i : idx) {
    sum += d[i];
  }
  s.dbar = sum / static_cast<double>(idx.size());
  double fine = 0.0;
  for (double v : d) {
    fine += v;
  }
  s.dbar_fine = fine / static_cast<double>(d.size());
  s.x_t = trajectory.pauli.back().x;
  s.enclosed_eps = enclosed_ep_count(schedule);
  return s;
}

}  // namespace nhcd
