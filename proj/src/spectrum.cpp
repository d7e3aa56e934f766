#include "nhcd/spectrum.hpp"

#include <cmath>
#include <stdexcept>

#include "nhcd/errors.hpp"

namespace nhcd {

namespace {

constexpr Complex kI{0.0, 1.0};

bool at_exceptional_point(const SystemParams& p) {
  return std::abs(p.discriminant()) < kExceptionalPointTolerance * kExceptionalPointTolerance;
}

// Residuals are reported in the Frobenius norm.
double residual(const Matrix2c& m) { return m.norm(); }

}  // namespace

SystemParams::SystemParams(double delta, double amplitude, double kappa, double phi)
    : delta_(delta), amplitude_(amplitude), kappa_(kappa), phi_(phi) {
  if (!std::isfinite(delta) || !std::isfinite(amplitude) || !std::isfinite(kappa) ||
      !std::isfinite(phi)) {
    throw std::invalid_argument("SystemParams: non-finite parameter");
  }
  if (kappa < 0.0) {
    throw std::invalid_argument("SystemParams: kappa must be nonnegative");
  }
}

SystemParams SystemParams::from_coupling(double delta, Complex coupling, double kappa) {
  return SystemParams(delta, std::abs(coupling), kappa, std::arg(coupling));
}

double SystemParams::distance_to_exceptional_point() const {
  const Complex eps = epsilon();
  return std::min(std::abs(eps - kI * kappa_), std::abs(eps + kI * kappa_));
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

Matrix2c pauli_x() {
  Matrix2c m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix2c pauli_y() {
  Matrix2c m;
  m << 0.0, -kI, kI, 0.0;
  return m;
}

Matrix2c pauli_z() {
  Matrix2c m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Matrix2c rotation_z(double phi) {
  Matrix2c m = Matrix2c::Zero();
  m(0, 0) = std::polar(1.0, -0.5 * phi);
  m(1, 1) = std::polar(1.0, 0.5 * phi);
  return m;
}

Matrix2c complex_rotation_y(Complex alpha) {
  const Complex c = std::cos(0.5 * alpha);
  const Complex s = std::sin(0.5 * alpha);
  Matrix2c m;
  m << c, -s, s, c;
  return m;
}

Matrix2c hamiltonian(const SystemParams& params) {
  const Complex coupling = params.coupling();
  Matrix2c h;
  h << 2.0 * params.energy(), std::conj(coupling), coupling, 0.0;
  return h;
}

ComplexAngle mixing_angle(const SystemParams& params, const std::optional<ComplexAngle>& previous) {
  if (at_exceptional_point(params)) {
    throw AtExceptionalPoint("mixing angle undefined: j^2 + E^2 = 0");
  }
  // alpha = (1/2i) Log[(eps - i kappa) / (eps* - i kappa)]; the principal Log
  // puts Re(alpha) in (-pi/2, pi/2] and gives Im(alpha) = (1/2) ln|eps+ik|/|eps-ik|.
  const Complex eps = params.epsilon();
  const Complex ik = kI * params.kappa();
  const Complex principal = std::log((eps - ik) / (std::conj(eps) - ik)) / (2.0 * kI);

  ComplexAngle alpha{principal.real(), principal.imag(), 0};
  if (!previous) {
    if (alpha.real <= -0.5 * kPi) {
      alpha.real += kPi;  // keep (-pi/2, pi/2] under rounding
    }
    return alpha;
  }

  const double shift = std::round((previous->real - alpha.real) / kPi);
  double best_distance = std::abs(alpha.real + shift * kPi - previous->real);
  int best = static_cast<int>(shift);
  for (int candidate : {best - 1, best + 1}) {
    const double distance = std::abs(alpha.real + candidate * kPi - previous->real);
    if (std::abs(distance - best_distance) < 1e-12) {
      throw AmbiguousBranch("mixing angle: two continuations equidistant from previous value");
    }
    if (distance < best_distance) {
      best_distance = distance;
      best = candidate;
    }
  }
  alpha.real += best * kPi;
  alpha.branch = best;
  return alpha;
}

Eigensystem eigensystem(const SystemParams& params, const ComplexAngle& alpha) {
  const Complex a = alpha.value();
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
    throw AtExceptionalPoint("eigensystem: non-finite mixing angle");
  }
  const Complex energy = params.energy();
  const double amplitude = params.amplitude();
  if (at_exceptional_point(params) && (std::abs(energy) + std::abs(amplitude)) > kExceptionalPointTolerance) {
    throw AtExceptionalPoint("eigensystem: eigenvectors coalesce");
  }

  const Complex sin_a = std::sin(a);
  const Complex cos_a = std::cos(a);
  const double scale = (std::abs(amplitude) + std::abs(energy)) * (std::abs(sin_a) + std::abs(cos_a));
  if (std::abs(amplitude * cos_a - energy * sin_a) > 1e-8 * scale + 1e-300) {
    throw std::invalid_argument("eigensystem: mixing angle inconsistent with parameters");
  }

  Eigensystem es;
  es.xi = std::abs(sin_a) >= std::abs(cos_a) ? amplitude / sin_a : energy / cos_a;
  es.lambda_plus = energy + es.xi;
  es.lambda_minus = energy - es.xi;

  const Matrix2c forward = rotation_z(params.phi()) * complex_rotation_y(a);
  const Matrix2c backward = complex_rotation_y(-a) * rotation_z(-params.phi());
  es.right_plus = forward.col(0);
  es.right_minus = forward.col(1);
  es.left_plus = backward.row(0);
  es.left_minus = backward.row(1);
  return es;
}

BlochVector pauli_expectation(const Vector2c& state) {
  const double n2 = state.squaredNorm();
  const Complex coherence = std::conj(state(0)) * state(1);
  return {2.0 * coherence.real() / n2, 2.0 * coherence.imag() / n2,
          (std::norm(state(0)) - std::norm(state(1))) / n2};
}

BlochPair bloch_coordinates(const ComplexAngle& alpha, double phi) {
  const double t = std::tanh(alpha.imag);
  const double sech = 1.0 / std::cosh(alpha.imag);  // sqrt(1 - tanh^2)
  const double cr = std::cos(alpha.real);
  const double sr = std::sin(alpha.real);
  const double cp = std::cos(phi);
  const double sp = std::sin(phi);

  auto point = [&](double s) {
    return BlochVector{-s * cp * sr * sech + sp * t, cp * t + s * sp * sr * sech, -s * cr * sech};
  };
  return {point(1.0), point(-1.0)};
}

OverlapAngle overlap_angle(const ComplexAngle& alpha) {
  const double t = std::tanh(alpha.imag);
  return {std::acos(std::abs(t)), t * t};
}

ChiralReport chiral_checks(const SystemParams& params) {
  const Matrix2c h = hamiltonian(params);
  const Matrix2c shifted = h - 0.5 * h.trace() * Matrix2c::Identity();
  const Matrix2c rz = rotation_z(params.phi());

  ChiralReport report;
  report.gamma = rz * pauli_y() * rz.adjoint();
  report.anticommutator_residual = residual(report.gamma * shifted * report.gamma + shifted);
  report.gamma_square_residual = residual(report.gamma * report.gamma - Matrix2c::Identity());

  if (at_exceptional_point(params)) {
    return report;
  }
  const ComplexAngle alpha = mixing_angle(params);
  const Eigensystem es = eigensystem(params, alpha);
  report.exchange_residual_plus = (report.gamma * es.right_plus - kI * es.right_minus).norm();
  report.exchange_residual_minus = (report.gamma * es.right_minus + kI * es.right_plus).norm();

  // +-xi are the eigenvalues of H'; pick the root matching the alpha branch.
  Complex xi = std::sqrt(params.discriminant());
  if (std::abs(xi + es.xi) < std::abs(xi - es.xi)) {
    xi = -xi;
  }
  report.xi = xi;
  report.energy_identity_residual = std::abs(params.energy() - xi * std::cos(alpha.value()));
  report.coupling_identity_residual = std::abs(params.amplitude() - xi * std::sin(alpha.value()));
  return report;
}

}  // namespace nhcd
