#include "rbgk/cosmology.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rbgk {

ScaleFactorState scale_factor(const ScaleFactor& sf, double t) {
  if (!(sf.C > 0.0) || !(sf.t0 > 0.0))
    throw std::invalid_argument("scale_factor: C and t0 must be positive");
  if (t < 0.0) throw std::invalid_argument("scale_factor: t must be >= 0");
  const double u = t + sf.t0;
  const double root = std::sqrt(u);
  return {sf.C * root, sf.C / (2.0 * root), -sf.C / (4.0 * u * root)};
}

double characteristic_map(double y, const ScaleFactor& sf, double t) {
  const double R = scale_factor(sf, t).R;
  return y / (R * R);
}

PhysicalMoments physical_moments(const DistributionState& state,
                                 const ScaleFactor& sf, double t) {
  const MomentPair m = moments(state);
  if (!(m.rho > 0.0))
    throw std::domain_error("physical_moments: state has zero number moment");
  const double R = scale_factor(sf, t).R;
  const double R3 = R * R * R;
  return {m.rho / R3, m.energy / m.rho / R, m.energy / (3.0 * R3 * R)};
}

std::pair<double, double> friedmann_residuals(const DistributionState& state,
                                              const ScaleFactor& sf,
                                              double t) {
  const ScaleFactorState s = scale_factor(sf, t);
  const PhysicalMoments pm = physical_moments(state, sf, t);
  const double hubble = s.Rdot / s.R;
  const double en = pm.e * pm.n;
  const double r1 = hubble * hubble - (8.0 * std::numbers::pi / 3.0) * en;
  const double r2 =
      s.Rddot / s.R + (4.0 * std::numbers::pi / 3.0) * (en + 3.0 * pm.P);
  return {r1, r2};
}

}  // namespace rbgk
