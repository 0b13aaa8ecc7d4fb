#ifndef RBGK_EQUILIBRIUM_HPP
#define RBGK_EQUILIBRIUM_HPP

#include <stdexcept>
#include <variant>

#include "rbgk/quadrature.hpp"

namespace rbgk {

/// Particle statistics selecting the form of the attractor J(F).
enum class Statistics { MaxwellBoltzmann, BoseEinstein };

/// Maxwell-Boltzmann attractor  J(r) = rho/(8 pi T^3) exp(-r/T).
/// (rho, T) are the covariant moments; they house the equilibrium
/// temperature and chemical potential through T_E = T/R and
/// exp(mu_E/T_E) = rho/(8 pi T^3).
struct MaxwellBoltzmannParams {
  double rho;
  double temperature;
};

/// Bose-Einstein attractor  J(r) = 1/(exp(c + gamma r) - 1), with
/// c = -mu_E/T_E > 0 and gamma = 1/(R T_E) > 0.
struct BoseEinsteinParams {
  double c;
  double gamma;
};

using EquilibriumParams =
    std::variant<MaxwellBoltzmannParams, BoseEinsteinParams>;

/// Truncation control for the occupation-number series.
struct SeriesTolerance {
  double abs_tol = 1e-14;   // relative stop: next term < abs_tol * sum
  long max_terms = 100000;  // hard budget
};

/// Thrown when a Bose-Einstein target rho/(3T)^3 falls outside the
/// admissible range (0, beta(0+)); carries the offending value and bound.
class AperyRangeError : public std::domain_error {
 public:
  AperyRangeError(double target_, double bound_);
  double target;
  double bound;
};

double mb_eval(const MaxwellBoltzmannParams& p, double r);
double be_eval(const BoseEinsteinParams& p, double r);

/// int_0^inf r^n/(e^{c+r} - 1) dr  =  n! sum_{k>=1} e^{-ck}/k^{n+1},
/// truncated by `tol`.  Requires n >= 2 and c > 0 (the series identity needs
/// z = e^{-c} < 1).  Throws std::runtime_error if the budget runs out before
/// the relative tolerance is met.
double bose_series(int n, double c, const SeriesTolerance& tol = {});

/// beta(c) = (8 pi / 27) S3(c)^4 / S4(c)^3 with S_m(c) = sum e^{-ck}/k^m.
/// Strictly decreasing on (0, inf), range (0, beta_zero_limit()).
/// For c below 1e-4 the value comes from the zeta-limit expansion
/// beta ~ (8 pi/27)(z3 - c z2)^4/(z4 - c z3)^3 instead of the series.
double beta(double c, const SeriesTolerance& tol = {});

/// d beta/dc = beta(c) [3 S3^2 - 4 S2 S4] / (S3 S4), strictly negative.
double beta_derivative(double c, const SeriesTolerance& tol = {});

/// lim_{c->0} beta(c) = (8 pi/27) zeta(3)^4 / zeta(4)^3: the admissibility
/// bound on rho/(3T)^3.
double beta_zero_limit();

/// Inverts beta: finds the unique c > 0 with beta(c) = target.  Bracketed by
/// doubling/halving from c = 1, then safeguarded Newton with bisection
/// fallback.  Throws AperyRangeError for target outside (0, beta_zero_limit()).
double solve_c(double target, const SeriesTolerance& tol = {});

/// gamma = rho^{-1/3} (4 pi bose_series(2, c))^{1/3}.
double gamma_from(double c, double rho, const SeriesTolerance& tol = {});

/// Determines the attractor parameters from covariant moments.
/// Maxwell-Boltzmann: (rho, T) directly.  Bose-Einstein: c from inverting
/// beta at rho/(3T)^3, then gamma.  Throws on nonpositive moments and, for
/// Bose-Einstein, AperyRangeError outside the admissible range.
EquilibriumParams build_equilibrium(const MomentPair& m, Statistics stats,
                                    const SeriesTolerance& tol = {});

/// J evaluated at radius r for either statistics.
double evaluate(const EquilibriumParams& params, double r);

/// J sampled on a grid, stamped with `time`.
DistributionState sample_equilibrium(const EquilibriumParams& params,
                                     const GridPtr& grid, double time = 0.0);

Statistics statistics_of(const EquilibriumParams& params);

}  // namespace rbgk

#endif
