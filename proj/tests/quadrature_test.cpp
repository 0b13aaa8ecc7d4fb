#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rbgk/quadrature.hpp"
#include "test_oracles.hpp"

using namespace rbgk;

namespace {
constexpr double kPi = std::numbers::pi;

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}
}  // namespace

TEST_CASE("exponential rule integrates r^k e^{-r} exactly") {
  // Gauss exactness up to polynomial degree 2n-1 against weight e^{-r}
  const GridPtr g = build_grid(RuleKind::ExponentiallyWeighted, 8);
  for (int k = 0; k <= 15; ++k) {
    double q = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i)
      q += g->weights[i] * std::pow(g->nodes[i], k) * std::exp(-g->nodes[i]);
    CHECK(q == doctest::Approx(factorial(k)).epsilon(1e-12));
  }
}

TEST_CASE("gamma(3) check at the declared tolerances") {
  for (const int n : {32, 64, 128}) {
    const GridPtr g = build_grid(RuleKind::ExponentiallyWeighted, n);
    double q = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i)
      q += g->weights[i] * g->nodes[i] * g->nodes[i] * std::exp(-g->nodes[i]);
    CHECK(std::abs(q - 2.0) <= 1e-12);
  }
  const GridPtr u = build_grid(RuleKind::UniformCutoff, 400, 40.0);
  double q = 0.0;
  for (std::size_t i = 0; i < u->size(); ++i)
    q += u->weights[i] * u->nodes[i] * u->nodes[i] * std::exp(-u->nodes[i]);
  CHECK(std::abs(q - 2.0) <= 1e-8);
}

TEST_CASE("grid invariants") {
  for (const GridPtr& g : {build_grid(RuleKind::ExponentiallyWeighted, 64),
                           build_grid(RuleKind::UniformCutoff, 400, 40.0)}) {
    REQUIRE(g->nodes.size() == g->weights.size());
    double prev = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i) {
      CHECK(g->nodes[i] > prev);
      CHECK(g->weights[i] > 0.0);
      prev = g->nodes[i];
    }
  }
}

TEST_CASE("build_grid rejects bad arguments") {
  CHECK_THROWS_AS(build_grid(RuleKind::ExponentiallyWeighted, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_grid(RuleKind::UniformCutoff, 2, 40.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_grid(RuleKind::UniformCutoff, 400),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_grid(RuleKind::UniformCutoff, 400, -1.0),
                  std::invalid_argument);
}

TEST_CASE("build_grid rejects grids that miss their declared tolerance") {
  // cutoff too short: the truncated tail of r^2 e^{-r} alone exceeds 1e-4
  CHECK_THROWS_AS(build_grid(RuleKind::UniformCutoff, 16, 8.0),
                  std::runtime_error);
  // spacing too coarse to resolve the integrand
  CHECK_THROWS_AS(build_grid(RuleKind::UniformCutoff, 16, 40.0),
                  std::runtime_error);
  // a coarse but adequate grid still builds
  CHECK_NOTHROW(build_grid(RuleKind::UniformCutoff, 64, 20.0));
  // large exponential rules stay positive despite plain-weight underflow
  CHECK_NOTHROW(build_grid(RuleKind::ExponentiallyWeighted, 256));
}

TEST_CASE("moments of the exponential equilibrium") {
  const GridPtr g = build_grid(RuleKind::ExponentiallyWeighted, 64);
  const auto f = sample(g, [](double r) { return std::exp(-r); });
  const MomentPair m = moments(f);
  CHECK(m.rho == doctest::Approx(8.0 * kPi).epsilon(1e-13));
  CHECK(m.energy == doctest::Approx(24.0 * kPi).epsilon(1e-13));
  CHECK(temperature(m) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("moments of the zero state vanish") {
  const GridPtr g = build_grid(RuleKind::ExponentiallyWeighted, 32);
  const auto f = sample(g, [](double) { return 0.0; });
  const MomentPair m = moments(f);
  CHECK(m.rho == 0.0);
  CHECK(m.energy == 0.0);
  CHECK_THROWS_AS(temperature(m), std::domain_error);
}

TEST_CASE("moments of the occupation equilibrium match the series values") {
  // rho = 8 pi Li3(1/e), energy = 24 pi Li4(1/e)
  const double li3 = static_cast<double>(oracle::polylog(3, std::exp(-1.0L)));
  const double li4 = static_cast<double>(oracle::polylog(4, std::exp(-1.0L)));
  CHECK(li3 == doctest::Approx(0.38699542421019975).epsilon(1e-14));
  CHECK(li4 == doctest::Approx(0.37703727692432029).epsilon(1e-14));

  const GridPtr g = build_grid(RuleKind::ExponentiallyWeighted, 64);
  const auto f = sample(g, [](double r) { return 1.0 / std::expm1(1.0 + r); });
  const MomentPair m = moments(f);
  CHECK(m.rho == doctest::Approx(8.0 * kPi * li3).epsilon(1e-12));
  CHECK(m.energy == doctest::Approx(24.0 * kPi * li4).epsilon(1e-12));
  CHECK(temperature(m) == doctest::Approx(li4 / li3).epsilon(1e-12));
  CHECK(temperature(m) == doctest::Approx(0.97426804901840231).epsilon(1e-12));
}

TEST_CASE("uniform rule agrees with the exponential rule on occupation data") {
  // two independent quadrature routes to the same integrals
  const GridPtr e = build_grid(RuleKind::ExponentiallyWeighted, 64);
  const GridPtr u = build_grid(RuleKind::UniformCutoff, 800, 60.0);
  const auto shape = [](double r) { return 1.0 / std::expm1(1.0 + r); };
  const MomentPair me = moments(sample(e, shape));
  const MomentPair mu = moments(sample(u, shape));
  CHECK(mu.rho == doctest::Approx(me.rho).epsilon(1e-7));
  CHECK(mu.energy == doctest::Approx(me.energy).epsilon(1e-7));

  // and against a third route: adaptive Simpson in long double
  const long double i2 = oracle::adaptive_simpson(
      [](long double r) { return r * r / std::expm1(1.0L + r); }, 0.0L, 70.0L);
  CHECK(me.rho ==
        doctest::Approx(static_cast<double>(4.0L * kPi * i2)).epsilon(1e-11));
}

TEST_CASE("moment homogeneity") {
  const GridPtr g = build_grid(RuleKind::ExponentiallyWeighted, 48);
  const auto f = sample(g, [](double r) { return (1.0 + r) * std::exp(-r); });
  const MomentPair m = moments(f);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 10.0);
  for (int i = 0; i < 50; ++i) {
    const double s = dist(rng);
    DistributionState scaled = f;
    for (double& v : scaled.values) v *= s;
    const MomentPair ms = moments(scaled);
    CHECK(ms.rho == doctest::Approx(s * m.rho).epsilon(1e-14));
    CHECK(ms.energy == doctest::Approx(s * m.energy).epsilon(1e-14));
  }
}

TEST_CASE("scaling law rho ~ lambda^-3, energy ~ lambda^-4") {
  const GridPtr g = build_grid(RuleKind::ExponentiallyWeighted, 64);
  const auto base = moments(sample(g, [](double r) { return std::exp(-r); }));
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(0.5, 2.0);
  for (int i = 0; i < 25; ++i) {
    const double lam = dist(rng);
    const auto scaled =
        moments(sample(g, [lam](double r) { return std::exp(-lam * r); }));
    CHECK(scaled.rho ==
          doctest::Approx(base.rho / (lam * lam * lam)).epsilon(1e-11));
    CHECK(scaled.energy ==
          doctest::Approx(base.energy / (lam * lam * lam * lam))
              .epsilon(1e-11));
  }
}

TEST_CASE("moment_match identity cases") {
  const GridPtr g = build_grid(RuleKind::ExponentiallyWeighted, 64);

  const auto j0 = sample(g, [](double r) { return std::exp(-r); });
  const auto matched =
      moment_match(g, [](double r) { return std::exp(-r); }, moments(j0));
  for (std::size_t i = 0; i < g->size(); ++i)
    CHECK(matched.values[i] == doctest::Approx(j0.values[i]).epsilon(1e-12));

  const auto be = sample(g, [](double r) { return 1.0 / std::expm1(1.0 + r); });
  const auto matched_be = moment_match(
      g, [](double r) { return 1.0 / std::expm1(1.0 + r); }, moments(be));
  for (std::size_t i = 0; i < g->size(); ++i)
    CHECK(matched_be.values[i] == doctest::Approx(be.values[i]).epsilon(1e-11));
}

TEST_CASE("moment_match gamma shell against the closed form") {
  // r e^{-r} matched to (8 pi, 24 pi) is A r e^{-a r}, a = 4/3, A = 2a^4/3!
  const GridPtr g = build_grid(RuleKind::ExponentiallyWeighted, 64);
  const MomentPair target{8.0 * kPi, 24.0 * kPi};
  const auto f0 =
      moment_match(g, [](double r) { return r * std::exp(-r); }, target);

  const double a = 4.0 / 3.0;
  const double A = 2.0 * a * a * a * a / 6.0;
  CHECK(A == doctest::Approx(1.0534979423868313).epsilon(1e-15));
  for (std::size_t i = 0; i < g->size(); ++i) {
    const double r = g->nodes[i];
    CHECK(f0.values[i] ==
          doctest::Approx(A * r * std::exp(-a * r)).epsilon(1e-10));
  }
  const MomentPair got = moments(f0);
  CHECK(got.rho == doctest::Approx(target.rho).epsilon(1e-13));
  CHECK(got.energy == doctest::Approx(target.energy).epsilon(1e-12));
}

TEST_CASE("moment_match round trip across template families") {
  const GridPtr g = build_grid(RuleKind::ExponentiallyWeighted, 64);
  struct Family {
    std::function<double(double)> profile;
    double t_min, t_max;  // admissible target temperatures
  };
  // the occupation and oscillatory templates tolerate only mild rescaling:
  // the near-pole at r = -(1/lambda), resp. the oscillation frequency
  // 2 lambda, leaves the rule's validated envelope for large lambda
  const std::vector<Family> families = {
      {[](double r) { return std::exp(-r); }, 0.5, 2.0},
      {[](double r) { return r * std::exp(-r); }, 0.5, 2.0},
      {[](double r) { return r * r * std::exp(-r / 1.5); }, 0.5, 2.0},
      {[](double r) { return 1.0 / std::expm1(1.0 + r); }, 0.8, 1.3},
      {[](double r) { return std::exp(-r) * (1.0 + 0.3 * std::cos(2.0 * r)); },
       0.8, 2.0},
  };
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> rho_dist(1.0, 50.0);
  for (const auto& family : families) {
    std::uniform_real_distribution<double> temp_dist(family.t_min,
                                                     family.t_max);
    for (int i = 0; i < 10; ++i) {
      const double rho = rho_dist(rng);
      const MomentPair target{rho, 3.0 * rho * temp_dist(rng)};
      const MomentPair got = moments(moment_match(g, family.profile, target));
      CHECK(got.rho == doctest::Approx(target.rho).epsilon(1e-11));
      CHECK(got.energy == doctest::Approx(target.energy).epsilon(1e-11));
    }
  }
}

TEST_CASE("moment_match rejects degenerate input") {
  const GridPtr g = build_grid(RuleKind::ExponentiallyWeighted, 32);
  const MomentPair ok{1.0, 3.0};
  CHECK_THROWS_AS(moment_match(g, [](double) { return 0.0; }, ok),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      moment_match(g, [](double r) { return std::exp(-r) - 0.5; }, ok),
      std::invalid_argument);  // negative template values are rejected
  CHECK_THROWS_AS(moment_match(g, [](double r) { return std::exp(-r); },
                               MomentPair{-1.0, 3.0}),
                  std::invalid_argument);
}

TEST_CASE("sample and same_grid") {
  const GridPtr a = build_grid(RuleKind::ExponentiallyWeighted, 32);
  const GridPtr b = build_grid(RuleKind::ExponentiallyWeighted, 32);
  const GridPtr c = build_grid(RuleKind::ExponentiallyWeighted, 48);
  const auto fa = sample(a, [](double r) { return std::exp(-r); });
  const auto fb = sample(b, [](double r) { return std::exp(-r); });
  const auto fc = sample(c, [](double r) { return std::exp(-r); });
  CHECK(same_grid(fa, fb));  // value-equal grids
  CHECK_FALSE(same_grid(fa, fc));
  CHECK_THROWS_AS(sample(a, [](double r) { return -r; }),
                  std::invalid_argument);
}
