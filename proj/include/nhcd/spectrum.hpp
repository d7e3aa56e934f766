#pragma once

// Closed-form eigenstructure of the driven passive PT dimer
//
//   H = [[2E, J*], [J, 0]],   E = delta/2 - i kappa,   J = j e^{i phi}
//
// in the {|z+>, |z->} basis. Eigenvectors are parameterized by a complex
// mixing angle alpha with tan(alpha) = j / E:
//
//   |R±> = R_z(phi) C_y(alpha) |z±>,   <L±| = <z±| C_y(-alpha) R_z(-phi)
//
// with C_y(a) = exp(-i a sigma_y / 2) and R_z(phi) = exp(-i phi sigma_z / 2).
// Units: rates in rad/us, times in us.

#include <complex>
#include <optional>

#include <Eigen/Core>

namespace nhcd {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;
using RowVector2c = Eigen::RowVector2cd;

inline constexpr double kPi = 3.14159265358979323846;

/// |J|^2 + E^2 below this squared magnitude counts as an exceptional point.
inline constexpr double kExceptionalPointTolerance = 1e-9;

enum class Level { Plus, Minus };

constexpr Level other(Level level) { return level == Level::Plus ? Level::Minus : Level::Plus; }
constexpr double sign(Level level) { return level == Level::Plus ? 1.0 : -1.0; }

/// Instantaneous Hamiltonian parameters.
///
/// The coupling is stored as a signed amplitude and a phase, J = j e^{i phi}.
/// Real-coupling paths (phi = 0) may cross j = 0 and take j < 0, which is
/// how loops enclosing both exceptional points are described.
class SystemParams {
public:
  SystemParams() = default;
  SystemParams(double delta, double amplitude, double kappa, double phi = 0.0);

  /// j = |J|, phi = arg J.
  static SystemParams from_coupling(double delta, Complex coupling, double kappa);

  double delta() const { return delta_; }
  double amplitude() const { return amplitude_; }
  double phi() const { return phi_; }
  double kappa() const { return kappa_; }

  Complex coupling() const { return amplitude_ * std::polar(1.0, phi_); }
  /// E = delta/2 - i kappa.
  Complex energy() const { return {0.5 * delta_, -kappa_}; }
  /// epsilon = delta/2 + i j (complex parameter plane of the real-coupling slice).
  Complex epsilon() const { return {0.5 * delta_, amplitude_}; }
  /// j^2 + E^2; vanishes exactly at the exceptional points.
  Complex discriminant() const { return amplitude_ * amplitude_ + energy() * energy(); }
  /// min(|epsilon - i kappa|, |epsilon + i kappa|).
  double distance_to_exceptional_point() const;

private:
  double delta_ = 0.0;
  double amplitude_ = 0.0;
  double kappa_ = 0.0;
  double phi_ = 0.0;
};

/// Complex mixing angle alpha = real + i imag, carried with the number of
/// pi-shifts applied relative to the principal value.
struct ComplexAngle {
  double real = 0.0;
  double imag = 0.0;
  int branch = 0;

  Complex value() const { return {real, imag}; }
};

struct Eigensystem {
  Complex lambda_plus;
  Complex lambda_minus;
  Vector2c right_plus;
  Vector2c right_minus;
  RowVector2c left_plus;
  RowVector2c left_minus;
  /// Eigenvalue +xi of the traceless H' = H - Tr(H)/2, with the branch tied to alpha.
  Complex xi;

  Complex lambda(Level level) const { return level == Level::Plus ? lambda_plus : lambda_minus; }
  const Vector2c& right(Level level) const { return level == Level::Plus ? right_plus : right_minus; }
  const RowVector2c& left(Level level) const { return level == Level::Plus ? left_plus : left_minus; }
  /// Unit-norm view of |R_level>.
  Vector2c normalized(Level level) const { return right(level).normalized(); }
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

struct BlochPair {
  BlochVector plus;
  BlochVector minus;
};

struct OverlapAngle {
  /// theta = arccos|tanh alpha_I|, the angle between the normalized right eigenvectors.
  double theta = 0.0;
  /// |<Lambda-|Lambda+>|^2 = tanh^2 alpha_I.
  double transition_probability = 0.0;
};

struct ChiralReport {
  double anticommutator_residual = 0.0;  ///< ||Gamma H' Gamma + H'||
  double gamma_square_residual = 0.0;    ///< ||Gamma^2 - I||
  Matrix2c gamma;
  /// The remaining fields need a mixing angle and are empty at an exceptional point.
  std::optional<double> exchange_residual_plus;   ///< || Gamma|R+> - i|R-> ||
  std::optional<double> exchange_residual_minus;  ///< || Gamma|R-> + i|R+> ||
  std::optional<Complex> xi;
  std::optional<double> energy_identity_residual;    ///< |E - xi cos alpha|
  std::optional<double> coupling_identity_residual;  ///< |j - xi sin alpha|
};

Matrix2c pauli_x();
Matrix2c pauli_y();
Matrix2c pauli_z();

/// R_z(phi) = exp(-i phi sigma_z / 2).
Matrix2c rotation_z(double phi);
/// C_y(alpha) = exp(-i alpha sigma_y / 2) for complex alpha.
Matrix2c complex_rotation_y(Complex alpha);

Matrix2c hamiltonian(const SystemParams& params);

/// tan(alpha) = j / E. Without `previous`, returns the principal value with
/// real part in (-pi/2, pi/2]; with it, the pi-shifted continuation closest
/// to `previous`.
///
/// Throws AtExceptionalPoint when |j^2 + E^2| < 1e-18, AmbiguousBranch when
/// two continuations are equally close to `previous`.
ComplexAngle mixing_angle(const SystemParams& params,
                          const std::optional<ComplexAngle>& previous = std::nullopt);

/// Biorthonormal eigensystem for an angle on any branch. The square root in
/// lambda± = E ± sqrt(j^2 + E^2) is taken as j/sin(alpha) (or E/cos(alpha)),
/// so eigenvalue labels follow the eigenvector labels across branch cuts.
Eigensystem eigensystem(const SystemParams& params, const ComplexAngle& alpha);

/// Pauli expectation values of a (not necessarily normalized) state.
BlochVector pauli_expectation(const Vector2c& state);

/// Closed-form Bloch-sphere map of the eigenstate pair. This uses the
/// orientation in which the eigenstates sit at (x, y, z) = (∓sin a_R, tanh a_I,
/// ∓cos a_R) on the real-coupling slice; it is the pi rotation about y of
/// pauli_expectation() applied to the normalized |R±>.
BlochPair bloch_coordinates(const ComplexAngle& alpha, double phi);

OverlapAngle overlap_angle(const ComplexAngle& alpha);

ChiralReport chiral_checks(const SystemParams& params);

}  // namespace nhcd
