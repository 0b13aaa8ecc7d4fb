#include "rbgk/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rbgk {
namespace {

MomentPair raw_moments(const RadialGrid& g, const std::vector<double>& v) {
  double rho = 0.0, energy = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r2w = g.weights[i] * g.nodes[i] * g.nodes[i];
    rho += r2w * v[i];
    energy += r2w * g.nodes[i] * v[i];
  }
  constexpr double four_pi = 4.0 * std::numbers::pi;
  return {four_pi * rho, four_pi * energy};
}

// J(F) - F for a raw value vector (RK4 stages may dip below zero, so this
// bypasses the nonnegativity check of DistributionState sampling).
std::vector<double> relaxation_rhs(const RadialGrid& g,
                                   const std::vector<double>& v,
                                   Statistics stats,
                                   const SeriesTolerance& tol) {
  const EquilibriumParams params =
      build_equilibrium(raw_moments(g, v), stats, tol);
  std::vector<double> rhs(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    rhs[i] = evaluate(params, g.nodes[i]) - v[i];
  return rhs;
}

bool moments_close(const MomentPair& a, const MomentPair& b, double rtol) {
  return std::abs(a.rho - b.rho) <= rtol * b.rho &&
         std::abs(a.energy - b.energy) <= rtol * b.energy;
}

}  // namespace

DistributionState global_equilibrium(Statistics stats, const GridPtr& grid) {
  if (stats == Statistics::MaxwellBoltzmann)
    return sample(grid, [](double r) { return std::exp(-r); });
  return sample(grid, [](double r) { return 1.0 / std::expm1(1.0 + r); });
}

DistributionState analytic_solution(const DistributionState& f0,
                                    const DistributionState& j0, double t) {
  if (!same_grid(f0, j0))
    throw std::invalid_argument("analytic_solution: grid mismatch");
  if (t < 0.0) throw std::invalid_argument("analytic_solution: t must be >= 0");
  const double decay = std::exp(-t);
  DistributionState out = f0;
  out.time = f0.time + t;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = decay * f0.values[i] + (1.0 - decay) * j0.values[i];
  return out;
}

DistributionState step(const DistributionState& state, double dt,
                       Statistics stats, Stepper stepper,
                       const SeriesTolerance& tol) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
  const RadialGrid& g = *state.grid;
  DistributionState out = state;
  out.time = state.time + dt;

  switch (stepper) {
    case Stepper::ExactExponential: {
      const EquilibriumParams params =
          build_equilibrium(moments(state), stats, tol);
      const double decay = std::exp(-dt);
      for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = decay * state.values[i] +
                        (1.0 - decay) * evaluate(params, g.nodes[i]);
      break;
    }
    case Stepper::RungeKutta4: {
      const std::vector<double>& v = state.values;
      const std::size_t n = v.size();
      std::vector<double> stage(n);

      const std::vector<double> k1 = relaxation_rhs(g, v, stats, tol);
      for (std::size_t i = 0; i < n; ++i) stage[i] = v[i] + 0.5 * dt * k1[i];
      const std::vector<double> k2 = relaxation_rhs(g, stage, stats, tol);
      for (std::size_t i = 0; i < n; ++i) stage[i] = v[i] + 0.5 * dt * k2[i];
      const std::vector<double> k3 = relaxation_rhs(g, stage, stats, tol);
      for (std::size_t i = 0; i < n; ++i) stage[i] = v[i] + dt * k3[i];
      const std::vector<double> k4 = relaxation_rhs(g, stage, stats, tol);

      for (std::size_t i = 0; i < n; ++i)
        out.values[i] =
            v[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      break;
    }
  }
  return out;
}

Trajectory simulate(const DistributionState& f0, const SolverConfig& config) {
  if (!(config.dt > 0.0) || !(config.t_end > config.dt))
    throw std::invalid_argument("simulate: need t_end > dt > 0");
  const double steps_needed = config.t_end / config.dt;
  if (steps_needed > 1e7)
    throw std::invalid_argument("simulate: step budget t_end/dt exceeds 1e7");
  const long n_steps = std::lround(steps_needed);

  Trajectory traj;
  traj.states.reserve(n_steps + 1);
  traj.records.reserve(n_steps + 1);
  traj.states.push_back(f0);

  // The deviation diagnostic applies only under the hypothesis of the
  // closed-form solution: initial moments equal to those of J0.
  const DistributionState j0 =
      global_equilibrium(config.statistics, f0.grid);
  const bool matched =
      moments_close(moments(f0), moments(j0), config.match_rtol);

  for (long k = 0;; ++k) {
    const DistributionState& current = traj.states.back();
    try {
      StepRecord rec;
      rec.time = current.time;
      rec.moments = moments(current);
      rec.params =
          build_equilibrium(rec.moments, config.statistics, config.series);
      if (matched) {
        const double elapsed = static_cast<double>(k) * config.dt;
        rec.linf_vs_analytic =
            linf_distance(current, analytic_solution(f0, j0, elapsed));
      }
      traj.records.push_back(std::move(rec));
      if (k == n_steps) break;
      traj.states.push_back(step(current, config.dt, config.statistics,
                                 config.stepper, config.series));
    } catch (const std::exception& e) {
      traj.failure = "step " + std::to_string(k) + ": " + e.what();
      break;
    }
  }
  return traj;
}

std::vector<Trajectory> picard_iterate(const DistributionState& f0,
                                       int n_iters,
                                       const SeriesTolerance& tol,
                                       std::span<const double> t_grid) {
  if (n_iters < 0)
    throw std::invalid_argument("picard_iterate: n_iters must be >= 0");
  if (t_grid.empty())
    throw std::invalid_argument("picard_iterate: empty time grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i)
    if (t_grid[i] < 0.0 || (i > 0 && t_grid[i] <= t_grid[i - 1]))
      throw std::invalid_argument(
          "picard_iterate: time grid must be nonnegative and strictly "
          "increasing");

  std::vector<Trajectory> iterates;
  iterates.reserve(n_iters + 1);

  // Iterate 0 is the constant-in-time extension of F0; its frozen
  // equilibrium seeds the scheme.
  MomentPair frozen_moments = moments(f0);

  for (int n = 0; n <= n_iters; ++n) {
    EquilibriumParams params;
    try {
      params = build_equilibrium(frozen_moments, Statistics::BoseEinstein, tol);
    } catch (const std::exception& e) {
      throw std::runtime_error("picard_iterate: iterate " + std::to_string(n) +
                               ": " + e.what());
    }
    const DistributionState jn =
        sample_equilibrium(params, f0.grid, f0.time);

    Trajectory traj;
    traj.states.reserve(t_grid.size());
    traj.records.reserve(t_grid.size());
    for (const double t : t_grid) {
      DistributionState st = analytic_solution(f0, jn, t);
      StepRecord rec;
      rec.time = st.time;
      rec.moments = moments(st);
      try {
        rec.params = build_equilibrium(rec.moments, Statistics::BoseEinstein,
                                       tol);
      } catch (const std::exception& e) {
        throw std::runtime_error("picard_iterate: iterate " +
                                 std::to_string(n + 1) + ": " + e.what());
      }
      traj.states.push_back(std::move(st));
      traj.records.push_back(std::move(rec));
    }
    frozen_moments = traj.records.front().moments;
    iterates.push_back(std::move(traj));
  }
  return iterates;
}

ConservationReport conservation_report(const Trajectory& traj) {
  if (traj.records.empty())
    throw std::invalid_argument("conservation_report: empty trajectory");
  ConservationReport rep;
  const MomentPair first = traj.records.front().moments;
  rep.rho_drift.reserve(traj.records.size());
  rep.energy_drift.reserve(traj.records.size());
  for (const StepRecord& rec : traj.records) {
    const double dr =
        first.rho > 0.0 ? std::abs(rec.moments.rho - first.rho) / first.rho
                        : 0.0;
    const double de = first.energy > 0.0
                          ? std::abs(rec.moments.energy - first.energy) /
                                first.energy
                          : 0.0;
    rep.rho_drift.push_back(dr);
    rep.energy_drift.push_back(de);
    rep.max_rho_drift = std::max(rep.max_rho_drift, dr);
    rep.max_energy_drift = std::max(rep.max_energy_drift, de);
  }
  return rep;
}

double linf_distance(const DistributionState& a, const DistributionState& b) {
  if (!same_grid(a, b))
    throw std::invalid_argument("linf_distance: grid mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

}  // namespace rbgk
