#include "nhcd/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nhcd/errors.hpp"

namespace nhcd {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kMaxStepNorm = 0.1;

bool finite(const Vector2c& v) {
  return std::isfinite(v(0).real()) && std::isfinite(v(0).imag()) && std::isfinite(v(1).real()) &&
         std::isfinite(v(1).imag());
}

Vector2c unit_right(const ControlSchedule& schedule, double t, Level level) {
  const SystemParams params = schedule.params(t);
  return eigensystem(params, mixing_angle(params)).normalized(level);
}

}  // namespace

double spectral_norm(const Matrix2c& m) {
  const double f2 = m.squaredNorm();
  const double det = std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
  const double disc = std::max(0.0, f2 * f2 - 4.0 * det * det);
  return std::sqrt(0.5 * (f2 + std::sqrt(disc)));
}

Matrix2c clamp_entries(const Matrix2c& m, double limit) {
  Matrix2c out = m;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double mag = std::abs(out(i, j));
      if (mag > limit) {
        out(i, j) *= limit / mag;
      }
    }
  }
  return out;
}

Trajectory evolve(const HamiltonianFn& hamiltonian, const Vector2c& initial, double period,
                  double dt, const EvolveOptions& options) {
  if (!(dt > 0.0) || !(period > 0.0)) {
    throw std::invalid_argument("evolve: dt and T must be positive");
  }
  const double n0 = initial.norm();
  if (!(n0 > 0.0) || !std::isfinite(n0)) {
    throw std::invalid_argument("evolve: initial state must be nonzero and finite");
  }
  if (options.drive_clamp && !(*options.drive_clamp > 0.0)) {
    throw std::invalid_argument("evolve: drive clamp must be positive");
  }

  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(period / dt - 1e-9)));
  const double h = period / static_cast<double>(steps);
  const double t0 = options.start_time;

  auto generator = [&](double t) {
    Matrix2c m = hamiltonian(t);
    if (options.drive) {
      const Matrix2c d = options.drive(t);
      m += options.drive_clamp ? clamp_entries(d, *options.drive_clamp) : d;
    }
    return m;
  };

  Trajectory tr;
  tr.times.reserve(steps + 1);
  tr.states.reserve(steps + 1);
  tr.log_norm.reserve(steps + 1);
  tr.pauli.reserve(steps + 1);

  Vector2c psi = initial / n0;
  double log_norm = 0.0;
  auto record = [&](double t) {
    tr.times.push_back(t);
    tr.states.push_back(psi);
    tr.log_norm.push_back(log_norm);
    tr.pauli.push_back(pauli_expectation(psi));
  };
  record(t0);

  Matrix2c h0 = generator(t0);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = t0 + static_cast<double>(k) * h;
    const Matrix2c h_mid = generator(t + 0.5 * h);
    const Matrix2c h1 = generator(t + h);
    const double size = h * std::max({spectral_norm(h0), spectral_norm(h_mid), spectral_norm(h1)});
    if (size > kMaxStepNorm) {
      throw StepTooLarge("evolve: dt ||H|| = " + std::to_string(size) + " exceeds 0.1 at t = " +
                         std::to_string(t));
    }
    const Vector2c k1 = -kI * (h0 * psi);
    const Vector2c k2 = -kI * (h_mid * (psi + 0.5 * h * k1));
    const Vector2c k3 = -kI * (h_mid * (psi + 0.5 * h * k2));
    const Vector2c k4 = -kI * (h1 * (psi + h * k3));
    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double norm = psi.norm();
    if (!finite(psi) || !(norm > 0.0) || !std::isfinite(norm)) {
      throw NonFiniteState("evolve: state became non-finite at t = " + std::to_string(t + h));
    }
    psi /= norm;
    log_norm += std::log(norm);
    record(k + 1 == steps ? t0 + period : t + h);
    h0 = h1;
  }
  return tr;
}

Trajectory evolve_with_cd(const ControlSchedule& schedule, const CdEvolveOptions& options) {
  const double period = schedule.period();
  const double t0 = schedule.kind() == ScheduleKind::Custom ? schedule.domain().first : 0.0;

  Level level = options.initial == InitialCondition::RightPlus ? Level::Plus : Level::Minus;
  Vector2c psi0;
  if (options.initial == InitialCondition::Custom) {
    psi0 = options.custom_state;
    const Vector2c plus = unit_right(schedule, t0, Level::Plus);
    const Vector2c minus = unit_right(schedule, t0, Level::Minus);
    level = std::abs(plus.dot(psi0)) > std::abs(minus.dot(psi0)) ? Level::Plus : Level::Minus;
  } else {
    psi0 = unit_right(schedule, t0, level);
  }

  EvolveOptions evo;
  evo.start_time = t0;
  evo.drive_clamp = options.drive_clamp;
  if (options.mode != CdMode::None) {
    evo.drive = [&schedule, mode = options.mode](double t) { return cd_drive_at(schedule, t, mode); };
  }
  const HamiltonianFn base = [&schedule](double t) { return hamiltonian(schedule.params(t)); };
  Trajectory tr = evolve(base, psi0, period, options.dt.value_or(default_step(period)), evo);

  tr.reference.reserve(tr.size());
  Vector2c ref = unit_right(schedule, t0, level);
  for (double t : tr.times) {
    const Vector2c plus = unit_right(schedule, t, Level::Plus);
    const Vector2c minus = unit_right(schedule, t, Level::Minus);
    ref = std::abs(plus.dot(ref)) >= std::abs(minus.dot(ref)) ? plus : minus;
    tr.reference.push_back(pauli_expectation(ref));
  }
  return tr;
}

}  // namespace nhcd
