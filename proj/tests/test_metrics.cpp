#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "nhcd/errors.hpp"
#include "nhcd/metrics.hpp"

using namespace nhcd;

namespace {

Vector2c random_state(std::mt19937_64& rng) {
  Vector2c v(fixtures::random_complex(rng, 1.0), fixtures::random_complex(rng, 1.0));
  return v.normalized();
}

Matrix2c random_density(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double p = u(rng);
  return p * density_from_state(random_state(rng)) + (1.0 - p) * density_from_state(random_state(rng));
}

LoopSummary loop_from_x_minus(double j_min) {
  const ControlSchedule s = fixtures::encircling_loop(0.2, Direction::Clockwise, 2001, j_min);
  CdEvolveOptions o;
  o.mode = CdMode::Full;
  o.initial = InitialCondition::Custom;
  o.custom_state = Vector2c(1.0, -1.0) / std::sqrt(2.0);
  return summarize_loop(evolve_with_cd(s, o), s, CdMode::Full);
}

}  // namespace

TEST_CASE("trace distance examples") {
  const Vector2c zp(1.0, 0.0);
  const Vector2c zm(0.0, 1.0);
  const Vector2c xp = Vector2c(1.0, 1.0) / std::sqrt(2.0);
  CHECK(trace_distance(density_from_state(zp), density_from_state(zp)) == 0.0);
  CHECK(trace_distance(density_from_state(zp), density_from_state(zm)) == doctest::Approx(1.0));
  CHECK(trace_distance(density_from_state(zp), density_from_state(xp)) ==
        doctest::Approx(0.70711).epsilon(1e-5));
  CHECK(trace_distance(density_from_bloch({0, 0, 0}), density_from_state(zp)) == doctest::Approx(0.5));
  CHECK((density_from_bloch({1.0, 0.0, 0.0}) - density_from_state(xp)).norm() < 1e-15);
}

TEST_CASE("density matrix validation") {
  Matrix2c rho = Matrix2c::Identity() * 0.5;
  CHECK_NOTHROW(check_density_matrix(rho));
  Matrix2c bad = rho;
  bad(0, 1) = 0.1;
  CHECK_THROWS_AS(check_density_matrix(bad), NotADensityMatrix);
  CHECK_THROWS_AS(check_density_matrix(2.0 * rho), NotADensityMatrix);
  CHECK_THROWS_AS(check_density_matrix(density_from_bloch({0.0, 0.0, 1.5})), NotADensityMatrix);
  CHECK_THROWS_AS(trace_distance(rho, bad), NotADensityMatrix);
}

TEST_CASE("property: trace distance is a metric") {
  std::mt19937_64 rng(77);
  for (int k = 0; k < 500; ++k) {
    const Matrix2c a = random_density(rng);
    const Matrix2c b = random_density(rng);
    const Matrix2c c = random_density(rng);
    const double ab = trace_distance(a, b);
    CHECK(ab == trace_distance(b, a));
    CHECK(ab <= trace_distance(a, c) + trace_distance(c, b) + 1e-12);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0 + 1e-12);
    CHECK(trace_distance(a, a) == 0.0);
    if ((a - b).norm() > 1e-10) {
      CHECK(ab > 0.0);
    }
  }
}

TEST_CASE("property: pure-state formula") {
  std::mt19937_64 rng(78);
  for (int k = 0; k < 500; ++k) {
    const Vector2c a = random_state(rng);
    const Vector2c b = random_state(rng);
    const double overlap = std::abs(a.dot(b));
    const double expected = std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
    CHECK(trace_distance(density_from_state(a), density_from_state(b)) ==
          doctest::Approx(expected).epsilon(1e-10));
    // density_from_state normalizes
    CHECK((density_from_state(3.0 * a) - density_from_state(a)).norm() < 1e-14);
  }
}

TEST_CASE("reporting grid") {
  const ControlSchedule s = fixtures::encircling_loop(0.2, Direction::Clockwise);
  CdEvolveOptions o;
  const Trajectory tr = evolve_with_cd(s, o);
  const std::vector<std::size_t> idx = reporting_indices(tr);
  REQUIRE(idx.size() == static_cast<std::size_t>(kReportingPoints));
  CHECK(idx.front() == 0);
  CHECK(idx.back() == tr.size() - 1);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    CHECK(tr.times[idx[k]] == doctest::Approx(0.2 * k / 50.0).epsilon(1e-9));
  }
  const std::vector<double> d = pointwise_trace_distance(tr);
  CHECK(d.size() == tr.size());
  CHECK(d.front() < 1e-12);
}

TEST_CASE("loop summaries") {
  SUBCASE("no drive at T = 0.2 us") {
    for (Direction dir : {Direction::Clockwise, Direction::CounterClockwise}) {
      const ControlSchedule s = fixtures::encircling_loop(0.2, dir);
      CdEvolveOptions o;
      const Trajectory tr = evolve_with_cd(s, o);
      const LoopSummary sum = summarize_loop(tr, s, CdMode::None);
      CHECK(sum.dbar > 0.3);
      CHECK(sum.dbar <= 1.0);
      CHECK(sum.period == 0.2);
      CHECK(sum.direction == dir);
      CHECK(sum.cd_mode == CdMode::None);
      CHECK(sum.enclosed_eps == 1);
      CHECK(sum.x_t == tr.pauli.back().x);
      CHECK_FALSE(sum.max_a.has_value());
    }
  }
  SUBCASE("full drive tracks exactly") {
    const ControlSchedule s = fixtures::encircling_loop(0.2, Direction::Clockwise);
    CdEvolveOptions o;
    o.mode = CdMode::Full;
    const LoopSummary sum = summarize_loop(evolve_with_cd(s, o), s, CdMode::Full);
    CHECK(sum.dbar < 1e-6);
    CHECK(sum.dbar_fine < 1e-6);
  }
  SUBCASE("state change from |x->") {
    const LoopSummary one = loop_from_x_minus(0.0);
    CHECK(one.enclosed_eps == 1);
    CHECK(one.x_t > 0.95);
    const LoopSummary zero = loop_from_x_minus(0.5);
    CHECK(zero.enclosed_eps == 0);
    CHECK(zero.x_t < -0.95);
    CHECK(std::abs(one.x_t) <= 1.0);
  }
}

TEST_CASE("property: reporting grid and fine grid agree") {
  for (double T : {0.05, 0.2, 1.0}) {
    for (CdMode mode : {CdMode::None, CdMode::HermitianOnly}) {
      const ControlSchedule s = fixtures::encircling_loop(T, Direction::CounterClockwise);
      CdEvolveOptions o;
      o.mode = mode;
      const LoopSummary sum = summarize_loop(evolve_with_cd(s, o), s, mode);
      CHECK(std::abs(sum.dbar - sum.dbar_fine) < 0.01);
    }
  }
}
