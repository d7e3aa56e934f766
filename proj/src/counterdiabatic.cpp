#include "nhcd/counterdiabatic.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "nhcd/errors.hpp"

namespace nhcd {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix2c projector_difference(const Eigensystem& es) {
  return es.right_plus * es.left_plus - es.right_minus * es.left_minus;
}

std::array<Vector2c, 2> right_vectors(const ControlSchedule& schedule, double t,
                                      const ComplexAngle& near) {
  const SystemParams params = schedule.params(t);
  const Eigensystem es = eigensystem(params, mixing_angle(params, near));
  return {es.right_plus, es.right_minus};
}

// Five-point stencil, one-sided where the schedule domain ends.
std::array<Vector2c, 2> right_derivatives(const ControlSchedule& schedule, const PathPoint& p,
                                          double h) {
  const auto [lo, hi] = schedule.domain();
  std::array<double, 5> offsets;
  std::array<double, 5> weights;
  if (p.t - 2.0 * h >= lo && p.t + 2.0 * h <= hi) {
    offsets = {-2.0, -1.0, 1.0, 2.0, 0.0};
    weights = {1.0, -8.0, 8.0, -1.0, 0.0};
  } else if (p.t - 2.0 * h < lo) {
    offsets = {0.0, 1.0, 2.0, 3.0, 4.0};
    weights = {-25.0, 48.0, -36.0, 16.0, -3.0};
  } else {
    offsets = {0.0, -1.0, -2.0, -3.0, -4.0};
    weights = {25.0, -48.0, 36.0, -16.0, 3.0};
  }
  std::array<Vector2c, 2> d{Vector2c::Zero(), Vector2c::Zero()};
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    if (weights[k] == 0.0) {
      continue;
    }
    const auto r = right_vectors(schedule, p.t + offsets[k] * h, p.alpha);
    d[0] += weights[k] * r[0];
    d[1] += weights[k] * r[1];
  }
  d[0] /= 12.0 * h;
  d[1] /= 12.0 * h;
  return d;
}

}  // namespace

std::string to_string(CdMode mode) {
  switch (mode) {
    case CdMode::None: return "none";
    case CdMode::HermitianOnly: return "hermitian";
    case CdMode::Full: return "full";
    case CdMode::ParallelTransport: return "parallel";
  }
  return "unknown";
}

CdMode parse_cd_mode(const std::string& text) {
  if (text == "none") return CdMode::None;
  if (text == "hermitian") return CdMode::HermitianOnly;
  if (text == "full") return CdMode::Full;
  if (text == "parallel") return CdMode::ParallelTransport;
  throw std::invalid_argument("unknown cd mode '" + text + "'");
}

double CDDrive::max_anti_hermitian_norm() const {
  double m = 0.0;
  for (const DriveSample& s : samples) {
    m = std::max(m, s.anti_hermitian.norm());
  }
  return m;
}

DriveSample decompose(double t, const Matrix2c& full) {
  DriveSample s;
  s.t = t;
  s.full = full;
  s.hermitian = 0.5 * (full + full.adjoint());
  s.anti_hermitian = 0.5 * (full - full.adjoint());
  s.j_cd = full(0, 1);
  const Matrix2c& h = s.hermitian;
  const double c0 = 0.5 * (h(0, 0) + h(1, 1)).real();
  const double cz = 0.5 * (h(0, 0) - h(1, 1)).real();
  s.sigma_x = h(1, 0).real();
  s.sigma_y = h(1, 0).imag();
  s.delta_cd = 2.0 * cz;
  s.identity_offset = c0 - cz;
  return s;
}

Matrix2c derivative_overlaps(const PathPoint& point) {
  const Complex a = point.alpha.value();
  const Matrix2c rotated_z = complex_rotation_y(-a) * pauli_z() * complex_rotation_y(a);
  return -0.5 * kI * point.phi_rate * rotated_z - 0.5 * kI * point.alpha_rate * pauli_y();
}

Complex berry_connection(const PathPoint& point, Level level) {
  return -sign(level) * 0.5 * kI * point.phi_rate * std::cos(point.alpha.value());
}

Complex accumulated_dynamical_phase(std::span<const PathPoint> path, Level level) {
  Complex sum = 0.0;
  for (std::size_t k = 1; k < path.size(); ++k) {
    sum += 0.5 * (path[k].t - path[k - 1].t) *
           (berry_connection(path[k], level) + berry_connection(path[k - 1], level));
  }
  return sum;
}

Matrix2c cd_exact_matrix(const PathPoint& point) {
  const Matrix2c rz = rotation_z(point.params.phi());
  return 0.5 * point.phi_rate * pauli_z() + 0.5 * point.alpha_rate * (rz * pauli_y() * rz.adjoint());
}

CDDrive cd_exact(std::span<const PathPoint> path) {
  CDDrive drive;
  drive.mode = CdMode::Full;
  drive.samples.reserve(path.size());
  for (const PathPoint& p : path) {
    drive.samples.push_back(decompose(p.t, cd_exact_matrix(p)));
  }
  return drive;
}

CDDrive cd_general_form(const ControlSchedule& schedule, std::span<const PathPoint> path) {
  const double h_max = schedule.period() / (10.0 * schedule.sample_count());
  CDDrive drive;
  drive.mode = CdMode::Full;
  drive.samples.reserve(path.size());
  for (const PathPoint& p : path) {
    const Eigensystem es = eigensystem(p.params, p.alpha);
    const ControlSample c = schedule.sample(p.t);
    const double rate = std::abs(p.alpha_rate) + std::abs(p.phi_rate) +
                        std::hypot(0.5 * c.delta_rate, c.amplitude_rate) /
                            p.params.distance_to_exceptional_point();
    const double h = rate > 0.0 ? std::min(h_max, 1e-3 / rate) : h_max;
    const auto d = right_derivatives(schedule, p, h);
    Matrix2c m = Matrix2c::Zero();
    for (Level level : {Level::Plus, Level::Minus}) {
      const Vector2c& dr = d[level == Level::Plus ? 0 : 1];
      const RowVector2c& left = es.left(level);
      const Complex connection = (left * dr)(0, 0);
      m += dr * left - connection * es.right(level) * left;
    }
    drive.samples.push_back(decompose(p.t, kI * m));
  }
  return drive;
}

CDDrive cd_hermitian_approx(const CDDrive& drive) {
  CDDrive out;
  out.mode = CdMode::HermitianOnly;
  out.samples.reserve(drive.samples.size());
  for (const DriveSample& s : drive.samples) {
    const Matrix2c implemented = s.hermitian - s.identity_offset * Matrix2c::Identity();
    DriveSample r = decompose(s.t, implemented);
    r.identity_offset = s.identity_offset;
    out.samples.push_back(r);
  }
  return out;
}

CDDrive cd_parallel_transport(std::span<const PathPoint> path) {
  CDDrive drive;
  drive.mode = CdMode::ParallelTransport;
  drive.samples.reserve(path.size());
  drive.beta.reserve(path.size());

  bool hermitian = true;
  const double alpha_i0 = path.empty() ? 0.0 : path.front().alpha.imag;
  Complex beta = 0.0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const PathPoint& p = path[k];
    const Complex cos_a = std::cos(p.alpha.value());
    if (k > 0) {
      const PathPoint& q = path[k - 1];
      beta -= 0.5 * (p.t - q.t) * (p.phi_rate * cos_a + q.phi_rate * std::cos(q.alpha.value()));
    }
    drive.beta.push_back(beta);

    const Eigensystem es = eigensystem(p.params, p.alpha);
    const Matrix2c m = cd_exact_matrix(p) - 0.5 * p.phi_rate * cos_a * projector_difference(es);
    drive.samples.push_back(decompose(p.t, m));

    const double scale = 1.0 + std::abs(p.alpha_rate) + std::abs(p.phi_rate);
    const bool constant_imag = std::abs(p.alpha.imag - alpha_i0) <= 1e-9 &&
                               std::abs(p.alpha_rate.imag()) <= 1e-9 * scale;
    const bool transverse = std::abs(p.phi_rate) <= 1e-12 || std::abs(cos_a) <= 1e-9;
    hermitian = hermitian && constant_imag && transverse;
  }
  drive.hermiticity_condition = hermitian;
  return drive;
}

Matrix2c cd_drive_at(const ControlSchedule& schedule, double t, CdMode mode) {
  if (mode == CdMode::None) {
    return Matrix2c::Zero();
  }
  const ControlSample c = schedule.sample(t);
  PathPoint p;
  p.t = t;
  p.params = SystemParams(c.delta, c.amplitude, schedule.kappa(), c.phi);
  const bool real_slice = c.phi == 0.0 && c.phi_rate == 0.0;
  p.alpha_rate = real_slice ? alpha_rate_epsilon(c, schedule.kappa()) : alpha_rate(c, schedule.kappa());
  p.phi_rate = c.phi_rate;

  switch (mode) {
    case CdMode::Full: return cd_exact_matrix(p);
    case CdMode::HermitianOnly: {
      const DriveSample s = decompose(t, cd_exact_matrix(p));
      return s.hermitian - s.identity_offset * Matrix2c::Identity();
    }
    case CdMode::ParallelTransport: {
      // cos(alpha) (P+ - P-) is unchanged by alpha -> alpha + pi, so the principal value suffices.
      p.alpha = mixing_angle(p.params);
      const Eigensystem es = eigensystem(p.params, p.alpha);
      return cd_exact_matrix(p) -
             0.5 * p.phi_rate * std::cos(p.alpha.value()) * projector_difference(es);
    }
    case CdMode::None: break;
  }
  return Matrix2c::Zero();
}

}  // namespace nhcd
