#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "fixtures.hpp"
#include "nhcd/errors.hpp"
#include "nhcd/paths.hpp"

using namespace nhcd;
using fixtures::kKappa;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("nhcd_test_paths_" + name);
}

}  // namespace

TEST_CASE("cosine loop values") {
  const ControlSchedule s = ControlSchedule::cosine_loop(2.0, 0.0, 30.0, -10.0 * kPi, kKappa);
  ControlSample c = s.sample(0.0);
  CHECK(c.amplitude == doctest::Approx(30.0));
  CHECK(c.delta == doctest::Approx(0.0));
  c = s.sample(0.5);
  CHECK(c.amplitude == doctest::Approx(15.0));
  CHECK(c.delta == doctest::Approx(-10.0 * kPi));
  CHECK(c.delta_rate == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(c.amplitude_rate == doctest::Approx(-15.0 * kPi));
  c = s.sample(1.0);
  CHECK(c.amplitude == doctest::Approx(0.0));
  CHECK(s.direction() == Direction::Clockwise);
  CHECK(s.reversed().direction() == Direction::CounterClockwise);

  SUBCASE("periodic") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (int k = 0; k < 50; ++k) {
      const double t = u(rng);
      const ControlSample a = s.sample(t);
      const ControlSample b = s.sample(t + 2.0);
      CHECK(a.amplitude == doctest::Approx(b.amplitude));
      CHECK(a.delta == doctest::Approx(b.delta));
    }
  }
  SUBCASE("grid") {
    const std::vector<double> g = s.grid();
    REQUIRE(g.size() == static_cast<std::size_t>(ControlSchedule::kDefaultSamples));
    CHECK(g.front() == 0.0);
    CHECK(g.back() == doctest::Approx(2.0));
  }
  SUBCASE("invalid input") {
    CHECK_THROWS_AS(ControlSchedule::cosine_loop(0.0, 0.0, 1.0, 1.0, kKappa), std::invalid_argument);
    CHECK_THROWS_AS(ControlSchedule::cosine_loop(1.0, 0.0, 1.0, 1.0, kKappa, 1), std::invalid_argument);
  }
}

TEST_CASE("Apollonius circle from ratio") {
  const double kappa = fixtures::kEllipseKappa;
  const ApolloniusCircle c = apollonius_from_ratio(0.9733, kappa);
  CHECK(c.center == doctest::Approx(15.26).epsilon(0.002));
  CHECK(c.radius == doctest::Approx(15.25).epsilon(0.002));
  CHECK(std::abs(c.j_max() - 30.3) / 30.3 < 0.03);
  CHECK(c.j_min() == doctest::Approx(kappa * std::tanh(c.alpha_imag())).epsilon(1e-9));
  CHECK(c.j_max() == doctest::Approx(kappa / std::tanh(c.alpha_imag())).epsilon(1e-9));

  SUBCASE("small ratio shrinks onto the EP") {
    const ApolloniusCircle tiny = apollonius_from_ratio(1e-6, kappa);
    CHECK(tiny.center == doctest::Approx(kappa).epsilon(1e-9));
    CHECK(tiny.radius < 1e-5);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(apollonius_from_ratio(1.0, kappa), DegenerateRatio);
    CHECK_THROWS_AS(apollonius_from_ratio(-0.5, kappa), std::invalid_argument);
    CHECK_THROWS_AS(apollonius_from_ratio(0.5, 0.0), std::invalid_argument);
  }
  SUBCASE("alpha_I is constant along the circle") {
    const ControlSchedule s = c.schedule(1.0);
    CHECK(s.kind() == ScheduleKind::ApolloniusCircle);
    const std::vector<PathPoint> path = tracked_angle(s);
    double max_rate = 0.0;
    for (const PathPoint& p : path) {
      CHECK(p.alpha.imag == doctest::Approx(path.front().alpha.imag).epsilon(1e-9));
      max_rate = std::max(max_rate, std::abs(p.alpha_rate));
    }
    CHECK(max_alpha_imag_rate(path) <= 1e-10 * max_rate);
    CHECK(std::abs(path.front().alpha.imag) == doctest::Approx(c.alpha_imag()).epsilon(1e-9));
  }
}

TEST_CASE("detuning and coupling from angles") {
  const double kappa = kKappa;
  const DetuningCoupling d = j_delta_from_angles(kPi / 4, std::atanh(0.5), kappa);
  CHECK(d.delta == doctest::Approx(2.0 * kappa / std::sinh(2.0 * std::atanh(0.5))));
  CHECK(d.amplitude == doctest::Approx(kappa * std::cosh(2.0 * std::atanh(0.5)) /
                                       std::sinh(2.0 * std::atanh(0.5))));
  CHECK_THROWS_AS(j_delta_from_angles(0.3, 0.0, kappa), HyperbolicSingularity);

  SUBCASE("round trip through the mixing angle") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> ar(-1.5, 1.5);
    std::uniform_real_distribution<double> ai(0.05, 3.0);
    for (int k = 0; k < 500; ++k) {
      const double a_r = ar(rng);
      const double a_i = ai(rng);
      const DetuningCoupling p = j_delta_from_angles(a_r, a_i, kappa);
      const ComplexAngle a = mixing_angle(SystemParams(p.delta, p.amplitude, kappa));
      CHECK(a.real == doctest::Approx(a_r).epsilon(1e-8));
      CHECK(a.imag == doctest::Approx(a_i).epsilon(1e-8));
    }
  }
}

TEST_CASE("alpha rate") {
  SUBCASE("constant controls") {
    ControlSample c;
    c.amplitude = 1.0;
    c.delta = 0.4;
    CHECK(std::abs(alpha_rate(c, kKappa)) == 0.0);
    CHECK(std::abs(alpha_rate_epsilon(c, kKappa)) == 0.0);
  }
  SUBCASE("property: chain rule against a central difference of the principal angle") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> period(0.5, 5.0);
    std::uniform_real_distribution<double> jmin(-2.0, 2.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int checked = 0;
    while (checked < 100) {
      const double T = period(rng);
      const ControlSchedule s =
          ControlSchedule::cosine_loop(T, jmin(rng), 3.0 + 10.0 * unit(rng), 20.0 * (unit(rng) - 0.5), kKappa);
      const double t = T * unit(rng);
      const double h = 1e-6;
      const SystemParams p = s.params(t);
      if (p.distance_to_exceptional_point() < 0.05) {
        continue;
      }
      const ComplexAngle a0 = mixing_angle(p);
      const ComplexAngle ap = mixing_angle(s.params(t + h), a0);
      const ComplexAngle am = mixing_angle(s.params(t - h), a0);
      const Complex numeric = (ap.value() - am.value()) / (2.0 * h);
      const Complex analytic = alpha_rate(s.sample(t), kKappa);
      CHECK(std::abs(numeric - analytic) <= 1e-6 * std::max(1.0, std::abs(analytic)));
      CHECK(std::abs(alpha_rate_epsilon(s.sample(t), kKappa) - analytic) <=
            1e-10 * std::max(1.0, std::abs(analytic)));
      ++checked;
    }
  }
  SUBCASE("moving along alpha_I at fixed alpha_R gives alpha rate i") {
    // Tangent of the constant-alpha_R line mapped through j_delta_from_angles.
    for (double a_r : {0.2, 0.7, 1.2}) {
      for (double a_i : {0.3, 0.9}) {
        const double s2 = std::sinh(2.0 * a_i);
        const double c2 = std::cosh(2.0 * a_i);
        const DetuningCoupling p = j_delta_from_angles(a_r, a_i, kKappa);
        ControlSample c;
        c.amplitude = p.amplitude;
        c.delta = p.delta;
        c.delta_rate = 2.0 * kKappa * std::sin(2.0 * a_r) * (-2.0 * c2 / (s2 * s2));
        c.amplitude_rate = 2.0 * kKappa * (std::cos(2.0 * a_r) * c2 - 1.0) / (s2 * s2);
        const Complex rate = alpha_rate(c, kKappa);
        CHECK(rate.real() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(rate.imag() == doctest::Approx(1.0).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("enclosed exceptional points") {
  CHECK(enclosed_ep_count(fixtures::encircling_loop(1.0, Direction::Clockwise)) == 1);
  CHECK(enclosed_ep_count(fixtures::encircling_loop(1.0, Direction::Clockwise, 2001, -30.0)) == 2);
  CHECK(enclosed_ep_count(fixtures::encircling_loop(1.0, Direction::Clockwise, 2001, 0.5)) == 0);
  CHECK(enclosed_ep_count(apollonius_from_ratio(0.9733, fixtures::kEllipseKappa).schedule(1.0)) == 1);

  const ControlSchedule ccw = fixtures::encircling_loop(1.0, Direction::CounterClockwise);
  const ControlSchedule cw = fixtures::encircling_loop(1.0, Direction::Clockwise);
  CHECK(winding_number(ccw, Complex(0.0, kKappa)) == -winding_number(cw, Complex(0.0, kKappa)));
  CHECK(std::abs(winding_number(ccw, Complex(0.0, kKappa))) == 1);
  CHECK(winding_number(ccw, Complex(0.0, -kKappa)) == 0);
}

TEST_CASE("branch tracking along a loop") {
  SUBCASE("one enclosed EP advances alpha_R by pi") {
    for (Direction d : {Direction::Clockwise, Direction::CounterClockwise}) {
      const std::vector<PathPoint> path = tracked_angle(fixtures::encircling_loop(1.0, d));
      CHECK(std::abs(path.back().alpha.real - path.front().alpha.real) == doctest::Approx(kPi).epsilon(1e-6));
      CHECK(path.back().alpha.imag == doctest::Approx(path.front().alpha.imag).epsilon(1e-9));
      CHECK(path.back().t == doctest::Approx(1.0));
    }
  }
  SUBCASE("no enclosed EP returns to the start") {
    const std::vector<PathPoint> path =
        tracked_angle(fixtures::encircling_loop(1.0, Direction::Clockwise, 2001, 0.5));
    CHECK(path.back().alpha.real == doctest::Approx(path.front().alpha.real).epsilon(1e-9));
  }
  SUBCASE("reversal retraces the same angles") {
    const ControlSchedule s = fixtures::encircling_loop(1.0, Direction::Clockwise);
    const std::vector<PathPoint> fwd = tracked_angle(s);
    const std::vector<PathPoint> rev = tracked_angle(s.reversed(), fwd.back().alpha);
    REQUIRE(rev.size() == fwd.size());
    for (std::size_t k = 0; k < fwd.size(); ++k) {
      const PathPoint& a = fwd[fwd.size() - 1 - k];
      const PathPoint& b = rev[k];
      CHECK(std::abs(a.alpha.value() - b.alpha.value()) < 1e-9);
      CHECK(std::abs(a.alpha_rate + b.alpha_rate) < 1e-9 * (1.0 + std::abs(a.alpha_rate)));
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(tracked_angle(fixtures::encircling_loop(1.0, Direction::Clockwise, 2001, kKappa)),
                    PathTooCloseToEP);
    CHECK_THROWS_AS(tracked_angle(fixtures::encircling_loop(1.0, Direction::Clockwise, 3)),
                    SamplingTooCoarse);
    try {
      tracked_angle(fixtures::encircling_loop(1.0, Direction::Clockwise, 2001, kKappa));
    } catch (const PathTooCloseToEP& e) {
      CHECK(e.time() == doctest::Approx(0.5));
    }
  }
}

TEST_CASE("torus path") {
  const double kappa = kKappa;
  const ControlSchedule s = ControlSchedule::torus(1.0, 0.4, 0.1, 2.0 * kPi, 3.0, kappa);
  CHECK(s.kind() == ScheduleKind::Torus);
  const std::vector<PathPoint> path = tracked_angle(s);
  for (const PathPoint& p : path) {
    CHECK(p.alpha.imag == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(p.phi_rate == doctest::Approx(3.0));
    CHECK(p.alpha_rate.real() == doctest::Approx(2.0 * kPi).epsilon(1e-8));
  }
  CHECK(path.back().alpha.real - path.front().alpha.real == doctest::Approx(2.0 * kPi).epsilon(1e-8));
  CHECK_THROWS_AS(ControlSchedule::torus(1.0, 0.0, 0.0, 1.0, 1.0, kappa), HyperbolicSingularity);
}

TEST_CASE("phase override") {
  const ControlSchedule base = fixtures::encircling_loop(1.0, Direction::Clockwise, 2001, 0.5);
  const ControlSchedule s =
      base.with_phase({[](double t) { return 0.5 * t * t; }, [](double t) { return t; }});
  const ControlSample c = s.sample(0.3);
  CHECK(c.phi == doctest::Approx(0.045));
  CHECK(c.phi_rate == doctest::Approx(0.3));
  CHECK(c.amplitude == doctest::Approx(base.sample(0.3).amplitude));
  const SystemParams p = s.params(0.3);
  CHECK(std::abs(p.coupling() - c.amplitude * std::polar(1.0, 0.045)) < 1e-12);
}

TEST_CASE("custom schedules") {
  const ControlSchedule ref = fixtures::encircling_loop(1.0, Direction::CounterClockwise, 2001, 0.5);
  const std::filesystem::path file = temp_file("loop.csv");
  {
    std::ofstream out(file);
    out << "t,J_x,J_y,delta\n";
    for (int k = 0; k <= 400; ++k) {
      const double t = k / 400.0;
      const ControlSample c = ref.sample(t);
      char line[256];
      std::snprintf(line, sizeof line, "%.17g,%.17g,0,%.17g\n", t, c.amplitude, c.delta);
      out << line;
    }
  }
  const ControlSchedule s = ControlSchedule::from_csv(file.string(), kKappa);
  CHECK(s.kind() == ScheduleKind::Custom);
  CHECK(s.period() == doctest::Approx(1.0));
  for (double t : {0.1234, 0.5, 0.777}) {
    const ControlSample a = s.sample(t);
    const ControlSample b = ref.sample(t);
    CHECK(std::abs(a.amplitude - b.amplitude) < 1e-4);
    CHECK(std::abs(a.delta - b.delta) < 1e-4);
    CHECK(std::abs(a.amplitude_rate - b.amplitude_rate) < 1e-2);
    CHECK(a.phi == 0.0);
  }
  CHECK(enclosed_ep_count(s) == 0);
  std::filesystem::remove(file);

  SUBCASE("complex coupling keeps its phase") {
    std::vector<double> t{0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<Complex> j;
    for (double x : t) {
      j.push_back(std::polar(2.0, 0.4 * x));
    }
    const ControlSchedule c = ControlSchedule::custom(t, j, {1.0, 1.0, 1.0, 1.0, 1.0}, kKappa);
    CHECK(c.sample(0.6).amplitude == doctest::Approx(2.0));
    CHECK(c.sample(0.6).phi == doctest::Approx(0.24));
  }
  SUBCASE("bad input") {
    const std::filesystem::path bad = temp_file("bad.csv");
    {
      std::ofstream out(bad);
      out << "time,J,delta\n0,1,2\n";
    }
    CHECK_THROWS(ControlSchedule::from_csv(bad.string(), kKappa));
    std::filesystem::remove(bad);
    CHECK_THROWS_AS(ControlSchedule::custom({0.0, 1.0, 0.5, 2.0}, {1.0, 1.0, 1.0, 1.0}, {0, 0, 0, 0}, kKappa),
                    std::invalid_argument);
  }
}
