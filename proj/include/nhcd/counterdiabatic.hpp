#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nhcd/paths.hpp"

namespace nhcd {

enum class CdMode { None, HermitianOnly, Full, ParallelTransport };

std::string to_string(CdMode mode);
/// Accepts none, hermitian, full, parallel. Throws std::invalid_argument otherwise.
CdMode parse_cd_mode(const std::string& text);

/// One time sample of a counterdiabatic drive.
///
/// The Hermitian part is expanded as c0 I + cx sigma_x + cy sigma_y + cz sigma_z
/// and rewritten as delta_cd |z+><z+| + sigma_x sigma_x + sigma_y sigma_y +
/// identity_offset I.
struct DriveSample {
  double t = 0.0;
  Matrix2c full = Matrix2c::Zero();
  Matrix2c hermitian = Matrix2c::Zero();
  Matrix2c anti_hermitian = Matrix2c::Zero();
  Complex j_cd;  ///< upper off-diagonal element of the full drive
  double delta_cd = 0.0;
  double sigma_x = 0.0;
  double sigma_y = 0.0;
  double identity_offset = 0.0;
};

struct CDDrive {
  CdMode mode = CdMode::Full;
  std::vector<DriveSample> samples;
  /// Parallel-transport drives only: beta(t) = -int phi' cos(alpha) dt.
  std::vector<Complex> beta;
  /// Parallel-transport drives only: alpha_I constant and (phi' = 0 or cos alpha = 0).
  std::optional<bool> hermiticity_condition;

  double max_anti_hermitian_norm() const;
};

/// Splits a drive matrix into its parts and the coefficients above.
DriveSample decompose(double t, const Matrix2c& full);

/// <L_n| d/dt |R_m> for n, m in {+, -}: row/column 0 is +, 1 is -.
Matrix2c derivative_overlaps(const PathPoint& point);

/// <L_level| d/dt |R_level> = -/+ i (phi'/2) cos(alpha).
Complex berry_connection(const PathPoint& point, Level level);

/// Trapezoidal integral of berry_connection along the path.
Complex accumulated_dynamical_phase(std::span<const PathPoint> path, Level level);

/// (phi'/2) sigma_z + (alpha'/2) R_z(phi) sigma_y R_z(phi)^dagger.
Matrix2c cd_exact_matrix(const PathPoint& point);

CDDrive cd_exact(std::span<const PathPoint> path);

/// H = i sum_n [ |dR_n><L_n| - <L_n|dR_n> |R_n><L_n| ] with eigenvector
/// derivatives from a five-point stencil. The step is T / (10 N), shortened to
/// 1e-3 over the local rate |alpha'| + |phi'| + |eps'| / (distance to the EP).
CDDrive cd_general_form(const ControlSchedule& schedule, std::span<const PathPoint> path);

/// Keeps the Hermitian part in the form delta_cd |z+><z+| + sigma_x sigma_x +
/// sigma_y sigma_y. The identity offset is recorded, not applied.
CDDrive cd_hermitian_approx(const CDDrive& drive);

/// Exact drive minus (phi'/2) cos(alpha) (|R+><L+| - |R-><L-|).
CDDrive cd_parallel_transport(std::span<const PathPoint> path);

/// Drive matrix at an arbitrary time, evaluated from the schedule directly.
/// Returns zero for CdMode::None.
Matrix2c cd_drive_at(const ControlSchedule& schedule, double t, CdMode mode);

}  // namespace nhcd
