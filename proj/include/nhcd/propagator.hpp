#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "nhcd/counterdiabatic.hpp"

namespace nhcd {

using HamiltonianFn = std::function<Matrix2c(double)>;

/// Sampled evolution on [t0, t0 + T]. States are normalized; log_norm keeps
/// the accumulated log of the norm the unnormalized state would have.
struct Trajectory {
  std::vector<double> times;
  std::vector<Vector2c> states;
  std::vector<double> log_norm;
  std::vector<BlochVector> pauli;
  /// Pauli triples of the tracked instantaneous eigenstate; empty from evolve().
  std::vector<BlochVector> reference;

  std::size_t size() const { return times.size(); }
};

struct EvolveOptions {
  /// Added to the base Hamiltonian; the clamp acts on this term only.
  HamiltonianFn drive;
  /// Saturates |entry| of the drive matrix at this value (rad/us).
  std::optional<double> drive_clamp;
  double start_time = 0.0;
};

/// Fixed-step RK4 for d psi/dt = -i H(t) psi with n = ceil(T/dt) equal steps.
///
/// Throws StepTooLarge if h ||H||_2 > 0.1 at any step and NonFiniteState on
/// overflow. Throws std::invalid_argument for dt <= 0, T <= 0 or a zero state.
Trajectory evolve(const HamiltonianFn& hamiltonian, const Vector2c& initial, double period,
                  double dt, const EvolveOptions& options = {});

/// Largest singular value of a 2x2 matrix.
double spectral_norm(const Matrix2c& m);

/// Entry-wise magnitude clamp that keeps phases.
Matrix2c clamp_entries(const Matrix2c& m, double limit);

enum class InitialCondition { RightMinus, RightPlus, Custom };

struct CdEvolveOptions {
  CdMode mode = CdMode::None;
  InitialCondition initial = InitialCondition::RightMinus;
  Vector2c custom_state = Vector2c::Zero();
  /// Defaults to T / 20000.
  std::optional<double> dt;
  std::optional<double> drive_clamp;
};

/// Evolves under H_eff(t) plus the selected drive and fills the reference
/// triples from the instantaneous eigenstate of maximal overlap with the
/// previous reference. A custom initial state starts on the closer eigenstate.
Trajectory evolve_with_cd(const ControlSchedule& schedule, const CdEvolveOptions& options);

/// Default integration step for a loop of period T.
inline double default_step(double period) { return period / 20000.0; }

}  // namespace nhcd
