#ifndef RBGK_COSMOLOGY_HPP
#define RBGK_COSMOLOGY_HPP

#include <utility>

#include "rbgk/quadrature.hpp"

namespace rbgk {

/// Radiation-era scale factor R(t) = C (t + t0)^{1/2}, C > 0, t0 > 0.
struct ScaleFactor {
  double C = 1.0;
  double t0 = 1.0;
};

struct ScaleFactorState {
  double R;
  double Rdot;
  double Rddot;
};

/// R and its first two time derivatives at t >= 0.  For this R the geometric
/// identity (Rdot/R)^2 + Rddot/R = 0 holds exactly.
ScaleFactorState scale_factor(const ScaleFactor& sf, double t);

/// Characteristic curve of the momentum transport: a particle with covariant
/// momentum y (constant along the motion) has contravariant 3-momentum
/// p(t) = y / R(t)^2.  The inverse map is v = R(t)^2 p.  Componentwise
/// linear, so a radius transforms the same way as a 3-vector.
double characteristic_map(double y, const ScaleFactor& sf, double t);

/// Macroscopic quantities in the contravariant p-frame: particle density n,
/// internal energy per particle e, pressure P.  Satisfies the massless
/// equation of state e n = 3 P.
struct PhysicalMoments {
  double n;
  double e;
  double P;
};

/// Changes variables v = R^2 p in the p-frame integrals:
///   n = rho / R^3,   e = (energy/rho) / R,   P = energy / (3 R^4).
/// Throws std::domain_error for a state with zero number moment.
PhysicalMoments physical_moments(const DistributionState& state,
                                 const ScaleFactor& sf, double t);

/// Residuals of the Friedmann and acceleration equations,
///   r1 = (Rdot/R)^2 - (8 pi/3) e n,
///   r2 = Rddot/R + (4 pi/3)(e n + 3 P).
/// Diagnostic only: R(t) is fixed a priori, so r1 vanishes only for a state
/// calibrated to the chosen C; r2 then vanishes with it because e n = 3 P
/// and (Rdot/R)^2 + Rddot/R = 0.
std::pair<double, double> friedmann_residuals(const DistributionState& state,
                                              const ScaleFactor& sf, double t);

}  // namespace rbgk

#endif
