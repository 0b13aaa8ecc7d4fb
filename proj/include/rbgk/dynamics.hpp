#ifndef RBGK_DYNAMICS_HPP
#define RBGK_DYNAMICS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rbgk/equilibrium.hpp"
#include "rbgk/quadrature.hpp"

namespace rbgk {

enum class Stepper { ExactExponential, RungeKutta4 };

struct SolverConfig {
  double dt = 0.01;
  double t_end = 10.0;
  Stepper stepper = Stepper::ExactExponential;
  Statistics statistics = Statistics::MaxwellBoltzmann;
  SeriesTolerance series{};
  /// Relative tolerance of the initial-moment check against the global
  /// equilibrium; controls whether the analytic-deviation diagnostic is
  /// recorded.
  double match_rtol = 1e-8;
};

/// Per-state diagnostics along a trajectory.
struct StepRecord {
  double time;
  MomentPair moments;
  EquilibriumParams params;  // attractor built from this state's moments
  /// L-inf distance to the closed-form solution; present only when the
  /// initial data was moment-matched to the global equilibrium.
  std::optional<double> linf_vs_analytic;
};

struct Trajectory {
  std::vector<DistributionState> states;  // time-ordered, states[0] = F0
  std::vector<StepRecord> records;        // one per state until a failure
  std::optional<std::string> failure;     // set when truncated by an error
};

/// The global attractor J0: exp(-r) for Maxwell-Boltzmann,
/// 1/(exp(1+r) - 1) for Bose-Einstein, sampled pointwise.
DistributionState global_equilibrium(Statistics stats, const GridPtr& grid);

/// Closed-form relaxation  F(t) = e^{-t} F0 + (1 - e^{-t}) J0,  valid when
/// F0 and J0 share both covariant moments.  t is the time elapsed since F0.
/// Throws std::invalid_argument on a grid mismatch; the moment hypothesis is
/// the caller's to check (see same_grid/moments).
DistributionState analytic_solution(const DistributionState& f0,
                                    const DistributionState& j0, double t);

/// Advances one step of  dF/dt = J(F) - F  with J rebuilt from the current
/// moments.  ExactExponential: F <- e^{-dt} F + (1-e^{-dt}) J(F), exact for
/// the affine right-hand side and nonnegativity-preserving (convex
/// combination).  RungeKutta4: classical four-stage update, J rebuilt at
/// every stage.
DistributionState step(const DistributionState& state, double dt,
                       Statistics stats, Stepper stepper,
                       const SeriesTolerance& tol = {});

/// Integrates to t_end in uniform steps of dt, recording per-state moments,
/// attractor parameters, and (for matched initial data) the deviation from
/// the closed-form solution.  On an equilibrium-construction failure the
/// trajectory is truncated and `failure` records the step and reason.
Trajectory simulate(const DistributionState& f0, const SolverConfig& config);

/// Iteration scheme for the Bose-Einstein problem: each iterate solves
///   dF^{n+1}/dt = J^n - F^{n+1},  F^{n+1}(0) = F0,
/// with J^n the equilibrium frozen from iterate n, in closed form
///   F^{n+1}(t) = e^{-t} F0 + (1 - e^{-t}) J^n.
/// Intended for initial data moment-matched to the Bose-Einstein global
/// equilibrium; every iterate then reproduces the closed-form solution and
/// its solved (c, gamma) stay at (1, 1).  Returns iterates F^1..F^{n+1}
/// densely sampled on t_grid.  An admissibility failure at any iterate is
/// reported with the iterate index.
std::vector<Trajectory> picard_iterate(const DistributionState& f0,
                                       int n_iters,
                                       const SeriesTolerance& tol,
                                       std::span<const double> t_grid);

/// Relative drift of both covariant moments against the first state.
struct ConservationReport {
  std::vector<double> rho_drift;     // per record
  std::vector<double> energy_drift;  // per record
  double max_rho_drift = 0.0;
  double max_energy_drift = 0.0;
};

ConservationReport conservation_report(const Trajectory& traj);

/// max_i |a_i - b_i| on a shared grid.
double linf_distance(const DistributionState& a, const DistributionState& b);

}  // namespace rbgk

#endif
