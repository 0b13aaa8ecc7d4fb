#include "rbgk/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "rbgk/cosmology.hpp"
#include "rbgk/dynamics.hpp"
#include "rbgk/equilibrium.hpp"
#include "rbgk/quadrature.hpp"

namespace rbgk::acceptance {
namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

// Independent zeta oracle: direct summation with an Euler-Maclaurin tail,
// accurate to well below 1e-15 for s >= 3.  Deliberately does not share any
// constant with the equilibrium module.
double zeta_oracle(double s) {
  const int K = 2000;
  double sum = 0.0;
  for (int k = K - 1; k >= 1; --k) sum += std::pow(k, -s);
  const double Kd = K;
  const double tail = std::pow(Kd, 1.0 - s) / (s - 1.0) +
                      0.5 * std::pow(Kd, -s) +
                      s * std::pow(Kd, -s - 1.0) / 12.0 -
                      s * (s + 1.0) * (s + 2.0) * std::pow(Kd, -s - 3.0) / 720.0;
  return sum + tail;
}

double shell_profile(double r) { return r * std::exp(-r); }

// Matched initial data: the gamma-shell profile rescaled onto the grid
// moments of the sampled global equilibrium.
DistributionState matched_initial(Statistics stats, const GridPtr& grid) {
  const MomentPair target = moments(global_equilibrium(stats, grid));
  return moment_match(grid, shell_profile, target);
}

Trajectory run_matched(Statistics stats, Stepper stepper, const GridPtr& grid,
                       double dt, double t_end) {
  SolverConfig config;
  config.dt = dt;
  config.t_end = t_end;
  config.stepper = stepper;
  config.statistics = stats;
  return simulate(matched_initial(stats, grid), config);
}

double max_deviation(const Trajectory& traj) {
  double dev = 0.0;
  for (const StepRecord& rec : traj.records)
    dev = std::max(dev, rec.linf_vs_analytic.value_or(
                            std::numeric_limits<double>::infinity()));
  return dev;
}

CheckResult check_closed_form_oracle_mb() {
  const auto start = std::chrono::steady_clock::now();
  const GridPtr grid = build_grid(RuleKind::ExponentiallyWeighted, 64);
  const Trajectory traj =
      run_matched(Statistics::MaxwellBoltzmann, Stepper::ExactExponential,
                  grid, 0.01, 10.0);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  const double dev = max_deviation(traj);
  const bool ok = !traj.failure && traj.records.size() == 1001 &&
                  dev <= 1e-10 && seconds <= 5.0;
  return {"closed-form-oracle-mb", ok,
          "max |F - analytic| = " + fmt(dev) + " (tol 1e-10), " +
              fmt(seconds) + " s (limit 5)"};
}

CheckResult check_closed_form_oracle_be() {
  const GridPtr grid = build_grid(RuleKind::ExponentiallyWeighted, 64);
  const Trajectory traj = run_matched(
      Statistics::BoseEinstein, Stepper::ExactExponential, grid, 0.01, 10.0);
  double worst_c = 0.0, worst_gamma = 0.0;
  for (const StepRecord& rec : traj.records) {
    const auto& p = std::get<BoseEinsteinParams>(rec.params);
    worst_c = std::max(worst_c, std::abs(p.c - 1.0));
    worst_gamma = std::max(worst_gamma, std::abs(p.gamma - 1.0));
  }
  const double dev = max_deviation(traj);
  const bool ok = !traj.failure && worst_c <= 1e-8 && worst_gamma <= 1e-8 &&
                  dev <= 1e-10;
  return {"closed-form-oracle-be", ok,
          "max |c-1| = " + fmt(worst_c) + ", max |gamma-1| = " +
              fmt(worst_gamma) + " (tol 1e-8), max dev = " + fmt(dev) +
              " (tol 1e-10)"};
}

CheckResult check_beta_range_bound() {
  const double z3 = zeta_oracle(3.0);
  const double z4 = zeta_oracle(4.0);
  const double oracle = (8.0 * kPi / 27.0) * std::pow(z3, 4) / std::pow(z4, 3);
  const double impl = beta_zero_limit();
  const double rel = std::abs(impl - oracle) / oracle;
  return {"beta-range-bound", rel <= 1e-10,
          "limit " + fmt(impl) + " vs zeta oracle " + fmt(oracle) +
              ", rel diff " + fmt(rel) + " (tol 1e-10)"};
}

CheckResult check_monotone_inversion() {
  double worst_rt = 0.0;
  for (const double c : {0.05, 0.2, 1.0, 3.0, 10.0, 20.0}) {
    const double back = solve_c(beta(c));
    worst_rt = std::max(worst_rt, std::abs(back - c) / c);
  }

  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> dist(0.01, 50.0);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    double c1 = dist(rng), c2 = dist(rng);
    if (c1 == c2) continue;
    if (c1 > c2) std::swap(c1, c2);
    if (!(beta(c1) > beta(c2))) ++violations;
  }
  const bool ok = worst_rt <= 1e-10 && violations == 0;
  return {"monotone-inversion", ok,
          "worst round-trip rel err " + fmt(worst_rt) +
              " (tol 1e-10), monotonicity violations " +
              std::to_string(violations) + "/1000"};
}

CheckResult check_derivative() {
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double c = 0.1 * std::pow(100.0, i / 19.0);  // log-spaced in [0.1,10]
    const double h = 1e-5 * c;
    const double fd = (beta(c + h) - beta(c - h)) / (2.0 * h);
    const double an = beta_derivative(c);
    worst = std::max(worst, std::abs(fd - an) / std::abs(an));
  }
  return {"beta-derivative", worst <= 1e-4,
          "worst rel err vs centered differences " + fmt(worst) +
              " (tol 1e-4, 20 samples in [0.1,10])"};
}

CheckResult check_conservation_and_rk4() {
  const GridPtr grid = build_grid(RuleKind::ExponentiallyWeighted, 64);
  const Trajectory exact =
      run_matched(Statistics::MaxwellBoltzmann, Stepper::ExactExponential,
                  grid, 0.01, 10.0);
  const ConservationReport cons = conservation_report(exact);
  const double drift =
      std::max(cons.max_rho_drift, cons.max_energy_drift);

  const Trajectory coarse = run_matched(
      Statistics::MaxwellBoltzmann, Stepper::RungeKutta4, grid, 0.1, 10.0);
  const Trajectory fine = run_matched(
      Statistics::MaxwellBoltzmann, Stepper::RungeKutta4, grid, 0.05, 10.0);
  const double e_coarse = max_deviation(coarse);
  const double e_fine = max_deviation(fine);
  const double ratio = e_coarse / e_fine;

  const bool ok = drift <= 1e-10 && ratio >= 15.0;
  return {"conservation-and-rk4-order", ok,
          "max moment drift " + fmt(drift) +
              " (tol 1e-10); rk4 error ratio dt 0.1/0.05 = " + fmt(ratio) +
              " (need >= 15)"};
}

CheckResult check_geometry() {
  std::mt19937 rng(987654321);
  std::uniform_real_distribution<double> pos(0.1, 10.0);
  std::uniform_real_distribution<double> times(0.0, 20.0);
  double worst_identity = 0.0;
  for (int i = 0; i < 100; ++i) {
    const ScaleFactor sf{pos(rng), pos(rng)};
    const ScaleFactorState s = scale_factor(sf, times(rng));
    const double hubble2 = (s.Rdot / s.R) * (s.Rdot / s.R);
    const double identity = std::abs(hubble2 + s.Rddot / s.R) / hubble2;
    worst_identity = std::max(worst_identity, identity);
  }

  // equation of state on the shipped equilibria
  const GridPtr grid = build_grid(RuleKind::ExponentiallyWeighted, 64);
  const ScaleFactor sf{2.0, 1.0};
  double worst_eos = 0.0;
  std::vector<DistributionState> states = {
      global_equilibrium(Statistics::MaxwellBoltzmann, grid),
      global_equilibrium(Statistics::BoseEinstein, grid),
      sample_equilibrium(MaxwellBoltzmannParams{30.0, 1.7}, grid),
      sample_equilibrium(BoseEinsteinParams{2.0, 1.2}, grid)};
  for (const auto& st : states) {
    for (const double t : {0.0, 1.0, 7.5}) {
      const PhysicalMoments pm = physical_moments(st, sf, t);
      worst_eos = std::max(
          worst_eos, std::abs(pm.e * pm.n - 3.0 * pm.P) / (pm.e * pm.n));
    }
  }

  const double eps = std::numeric_limits<double>::epsilon();
  const bool ok = worst_identity <= 64.0 * eps && worst_eos <= 1e-10;
  return {"flrw-geometry", ok,
          "worst |(R'/R)^2 + R''/R| rel " + fmt(worst_identity) +
              " (tol 64 eps); worst |en-3P|/en " + fmt(worst_eos) +
              " (tol 1e-10)"};
}

CheckResult check_matching_conditions() {
  std::mt19937 rng(424242);

  // Maxwell-Boltzmann on the default grid
  const GridPtr mb_grid = build_grid(RuleKind::ExponentiallyWeighted, 64);
  std::uniform_real_distribution<double> rho_dist(2.0, 60.0);
  std::uniform_real_distribution<double> temp_dist(0.4, 2.5);
  double worst_mb = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double rho = rho_dist(rng), T = temp_dist(rng);
    const MomentPair target{rho, 3.0 * rho * T};
    const auto params =
        build_equilibrium(target, Statistics::MaxwellBoltzmann);
    const MomentPair got = moments(sample_equilibrium(params, mb_grid));
    worst_mb = std::max(worst_mb,
                        std::max(std::abs(got.rho - target.rho) / target.rho,
                                 std::abs(got.energy - target.energy) /
                                     target.energy));
  }
  const double mb_tol = 10.0 * mb_grid->tolerance;

  // Bose-Einstein: valid moment pairs generated from (c, gamma) inside the
  // envelope where the exponential rule integrates occupation shapes at its
  // declared tolerance (the near-pole at r = -c/gamma degrades it for
  // smaller c or larger gamma).
  const GridPtr be_grid = build_grid(RuleKind::ExponentiallyWeighted, 128);
  std::uniform_real_distribution<double> c_dist(0.5, 5.0);
  std::uniform_real_distribution<double> g_dist(0.5, 1.3);
  double worst_be = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double c = c_dist(rng), g = g_dist(rng);
    const MomentPair target{
        4.0 * kPi * bose_series(2, c) / (g * g * g),
        4.0 * kPi * bose_series(3, c) / (g * g * g * g)};
    const auto params = build_equilibrium(target, Statistics::BoseEinstein);
    const MomentPair got = moments(sample_equilibrium(params, be_grid));
    worst_be = std::max(worst_be,
                        std::max(std::abs(got.rho - target.rho) / target.rho,
                                 std::abs(got.energy - target.energy) /
                                     target.energy));
  }
  const double be_tol = 10.0 * be_grid->tolerance;

  const bool ok = worst_mb <= mb_tol && worst_be <= be_tol;
  return {"matching-conditions", ok,
          "worst relative mismatch: mb " + fmt(worst_mb) + " (tol " +
              fmt(mb_tol) + "), be " + fmt(worst_be) + " (tol " + fmt(be_tol) +
              "), 100 pairs each"};
}

CheckResult check_apery_rejection() {
  const double bound = beta_zero_limit();
  int rejected = 0, attempted = 0;
  std::string sample_message;

  for (const double target : {1.6, bound, 1.534, 2.5}) {
    ++attempted;
    try {
      solve_c(target);
    } catch (const AperyRangeError& e) {
      ++rejected;
      if (sample_message.empty()) sample_message = e.what();
    }
  }

  // the same rejection must surface through the moment pipeline
  ++attempted;
  const double energy = 24.0 * kPi;
  const double rho = std::pow(1.6 * std::pow(energy, 3), 0.25);
  try {
    build_equilibrium(MomentPair{rho, energy}, Statistics::BoseEinstein);
  } catch (const AperyRangeError&) {
    ++rejected;
  }

  const bool ok = rejected == attempted;
  return {"apery-range-rejection", ok,
          std::to_string(rejected) + "/" + std::to_string(attempted) +
              " inadmissible targets rejected; e.g. \"" + sample_message +
              "\""};
}

}  // namespace

std::vector<CheckResult> run_all() {
  return {
      check_closed_form_oracle_mb(),    check_closed_form_oracle_be(),
      check_beta_range_bound(),     check_monotone_inversion(),
      check_derivative(),           check_conservation_and_rk4(),
      check_geometry(),             check_matching_conditions(),
      check_apery_rejection(),
  };
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace rbgk::acceptance
