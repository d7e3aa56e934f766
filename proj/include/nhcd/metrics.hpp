#pragma once

#include <optional>
#include <vector>

#include "nhcd/counterdiabatic.hpp"
#include "nhcd/propagator.hpp"

namespace nhcd {

/// Points on the uniform reporting grid, t_k = k T / 50.
inline constexpr int kReportingPoints = 51;

/// rho = (I + x sigma_x + y sigma_y + z sigma_z) / 2.
Matrix2c density_from_bloch(const BlochVector& r);
Matrix2c density_from_state(const Vector2c& state);

/// Throws NotADensityMatrix unless rho is Hermitian, has unit trace and no
/// eigenvalue below -1e-10.
void check_density_matrix(const Matrix2c& rho);

/// D = Tr|rho_a - rho_b| / 2. Throws NotADensityMatrix for invalid inputs.
double trace_distance(const Matrix2c& rho_a, const Matrix2c& rho_b);

/// D(rho(t), rho_I(t)) at every stored sample. Requires reference triples.
std::vector<double> pointwise_trace_distance(const Trajectory& trajectory);

struct LoopSummary {
  double period = 0.0;
  Direction direction = Direction::CounterClockwise;
  CdMode cd_mode = CdMode::None;
  double dbar = 0.0;       ///< on the 51-point reporting grid
  double dbar_fine = 0.0;  ///< on every stored sample
  double x_t = 0.0;
  int enclosed_eps = 0;
  std::optional<double> max_a;
};

/// Sample indices closest to the reporting grid.
std::vector<std::size_t> reporting_indices(const Trajectory& trajectory,
                                           int points = kReportingPoints);

LoopSummary summarize_loop(const Trajectory& trajectory, const ControlSchedule& schedule,
                           CdMode mode);

}  // namespace nhcd
