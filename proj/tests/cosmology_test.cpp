#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "rbgk/cosmology.hpp"
#include "rbgk/dynamics.hpp"
#include "test_oracles.hpp"

using namespace rbgk;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("scale factor and its derivatives") {
  const ScaleFactorState a = scale_factor({1.0, 1.0}, 0.0);
  CHECK(a.R == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a.Rdot == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(a.Rddot == doctest::Approx(-0.25).epsilon(1e-15));

  const ScaleFactorState b = scale_factor({2.0, 1.0}, 3.0);
  CHECK(b.R == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(b.Rdot == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(b.Rddot == doctest::Approx(-0.0625).epsilon(1e-15));

  CHECK_THROWS_AS(scale_factor({0.0, 1.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(scale_factor({1.0, 1.0}, -0.5), std::invalid_argument);
}

TEST_CASE("geometric identity (R'/R)^2 + R''/R = 0") {
  std::mt19937 rng(2718);
  std::uniform_real_distribution<double> pos(0.05, 20.0);
  std::uniform_real_distribution<double> times(0.0, 50.0);
  const double eps = std::numeric_limits<double>::epsilon();
  for (int i = 0; i < 100; ++i) {
    const ScaleFactorState s = scale_factor({pos(rng), pos(rng)}, times(rng));
    const double h2 = (s.Rdot / s.R) * (s.Rdot / s.R);
    CHECK(std::abs(h2 + s.Rddot / s.R) <= 64.0 * eps * h2);
  }
}

TEST_CASE("derivatives agree with finite differences") {
  const ScaleFactor sf{1.7, 2.3};
  for (const double t : {0.5, 1.5, 6.5}) {
    const double fd_dot = oracle::derivative(
        [&](double x) { return scale_factor(sf, x).R; }, t, 1e-6);
    const double fd_ddot = oracle::derivative(
        [&](double x) { return scale_factor(sf, x).Rdot; }, t, 1e-6);
    const auto s = scale_factor(sf, t);
    CHECK(s.Rdot == doctest::Approx(fd_dot).epsilon(1e-9));
    CHECK(s.Rddot == doctest::Approx(fd_ddot).epsilon(1e-9));
  }
}

TEST_CASE("characteristic map and its inverse") {
  // R = 1: identity
  CHECK(characteristic_map(0.8, {1.0, 1.0}, 0.0) == doctest::Approx(0.8));

  // R^2 = 4 at (C=1, t0=1, t=3): p = y/4 and v = R^2 p recovers y
  const ScaleFactor sf{1.0, 1.0};
  const double y = 2.5;
  const double p = characteristic_map(y, sf, 3.0);
  CHECK(p == doctest::Approx(y / 4.0));
  const double R = scale_factor(sf, 3.0).R;
  CHECK(R * R * p == doctest::Approx(y).epsilon(1e-15));

  // round trip across random inputs
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> dist(0.1, 5.0);
  for (int i = 0; i < 50; ++i) {
    const ScaleFactor s{dist(rng), dist(rng)};
    const double t = dist(rng), v = dist(rng);
    const double Rt = scale_factor(s, t).R;
    CHECK(Rt * Rt * characteristic_map(v, s, t) ==
          doctest::Approx(v).epsilon(1e-14));
  }
}

TEST_CASE("characteristic curve satisfies dp/dt = -2 (R'/R) p") {
  const ScaleFactor sf{1.3, 0.7};
  const double y = 1.9;
  for (const double t : {0.5, 2.0, 9.0}) {
    const double fd = oracle::derivative(
        [&](double x) { return characteristic_map(y, sf, x); }, t, 1e-6);
    const auto s = scale_factor(sf, t);
    const double expected = -2.0 * (s.Rdot / s.R) * characteristic_map(y, sf, t);
    CHECK(fd == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("physical moments of the global equilibrium at R = 1") {
  const GridPtr g = build_grid(RuleKind::ExponentiallyWeighted, 64);
  const auto j0 = global_equilibrium(Statistics::MaxwellBoltzmann, g);
  const PhysicalMoments pm = physical_moments(j0, {1.0, 1.0}, 0.0);
  CHECK(pm.n == doctest::Approx(8.0 * kPi).epsilon(1e-13));
  CHECK(pm.e == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(pm.P == doctest::Approx(8.0 * kPi).epsilon(1e-13));
  CHECK(pm.e * pm.n == doctest::Approx(3.0 * pm.P).epsilon(1e-14));

  const auto zero = sample(g, [](double) { return 0.0; });
  CHECK_THROWS_AS(physical_moments(zero, {1.0, 1.0}, 0.0), std::domain_error);
}

TEST_CASE("equation of state e n = 3 P for arbitrary states and times") {
  const GridPtr g = build_grid(RuleKind::ExponentiallyWeighted, 64);
  std::mt19937 rng(404);
  std::uniform_real_distribution<double> dist(0.2, 3.0);
  for (int i = 0; i < 30; ++i) {
    const double a = dist(rng), s = dist(rng);
    const auto f =
        sample(g, [a, s](double r) { return s * (1.0 + r) * std::exp(-a * r); });
    const ScaleFactor sf{dist(rng), dist(rng)};
    const double t = dist(rng);
    const PhysicalMoments pm = physical_moments(f, sf, t);
    CHECK(std::abs(pm.e * pm.n - 3.0 * pm.P) <= 1e-10 * pm.e * pm.n);
  }
}

TEST_CASE("covariant moments ignore the background, physical ones do not") {
  const GridPtr g = build_grid(RuleKind::ExponentiallyWeighted, 64);
  const auto f = global_equilibrium(Statistics::BoseEinstein, g);
  const ScaleFactor sf{1.0, 1.0};
  const MomentPair m = moments(f);  // no time argument exists to vary

  const PhysicalMoments early = physical_moments(f, sf, 0.0);
  const PhysicalMoments late = physical_moments(f, sf, 3.0);
  CHECK(early.n > late.n);  // dilution as R grows
  CHECK(early.e > late.e);  // redshift
  // recompute covariant moments: identical values at both times
  CHECK(moments(f).rho == m.rho);
  CHECK(moments(f).energy == m.energy);
}

TEST_CASE("friedmann residuals vanish for a calibrated state") {
  const GridPtr g = build_grid(RuleKind::ExponentiallyWeighted, 64);
  const auto j0 = global_equilibrium(Statistics::MaxwellBoltzmann, g);
  const ScaleFactor sf{1.5, 2.0};
  const double t = 1.25;

  // scale the state so that (R'/R)^2 = (8 pi/3) e n at this instant
  const auto s = scale_factor(sf, t);
  const double hubble2 = (s.Rdot / s.R) * (s.Rdot / s.R);
  const PhysicalMoments pm = physical_moments(j0, sf, t);
  const double scale = hubble2 / ((8.0 * kPi / 3.0) * pm.e * pm.n);
  DistributionState calibrated = j0;
  for (double& v : calibrated.values) v *= scale;

  const auto [r1, r2] = friedmann_residuals(calibrated, sf, t);
  CHECK(std::abs(r1) <= 1e-13 * hubble2);
  CHECK(std::abs(r2) <= 1e-13 * hubble2);

  // uncalibrated states report a nonzero source residual but the geometric
  // combination stays exact
  const auto [u1, u2] = friedmann_residuals(j0, sf, t);
  CHECK(std::abs(u1 + u2) <= 1e-13 * std::abs(u1));
  CHECK(std::abs(u1) > 0.0);
}
