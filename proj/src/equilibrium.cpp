#include "rbgk/equilibrium.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

namespace rbgk {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeta2 = kPi * kPi / 6.0;
constexpr double kZeta3 = 1.2020569031595942854;  // Apery's constant
constexpr double kZeta4 = kPi * kPi * kPi * kPi / 90.0;

// Threshold below which the occupation sums switch to the zeta-limit
// expansion S_m(c) ~ zeta(m) - c zeta(m-1); the plain series would need
// more than the default term budget there.
constexpr double kSmallC = 1e-4;

// S_m(c) = sum_{k>=1} e^{-ck}/k^m.  Returns 0 when e^{-c} underflows (the
// true value is then below the smallest normal double).
double occupation_sum(int m, double c, const SeriesTolerance& tol) {
  if (!(c > 0.0)) throw std::invalid_argument("occupation_sum: c must be > 0");
  if (tol.abs_tol < 1e-15 || tol.max_terms < 10)
    throw std::invalid_argument("occupation_sum: invalid tolerance");

  const double q = std::exp(-c);
  if (q == 0.0) return 0.0;

  double z = q;  // e^{-ck}
  double sum = 0.0;
  for (long k = 1; k <= tol.max_terms; ++k) {
    double denom = static_cast<double>(k);
    for (int i = 1; i < m; ++i) denom *= static_cast<double>(k);
    sum += z / denom;

    const double kn = static_cast<double>(k + 1);
    double next_denom = kn;
    for (int i = 1; i < m; ++i) next_denom *= kn;
    const double next = z * q / next_denom;
    if (next < tol.abs_tol * sum) return sum;
    z *= q;
  }
  throw std::runtime_error(
      "occupation_sum: term budget exhausted before tolerance was met "
      "(c = " +
      std::to_string(c) + ")");
}

std::string format17(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

AperyRangeError::AperyRangeError(double target_, double bound_)
    : std::domain_error("rho/(3T)^3 = " + format17(target_) +
                        " outside the admissible range (0, " +
                        format17(bound_) + ")"),
      target(target_),
      bound(bound_) {}

double mb_eval(const MaxwellBoltzmannParams& p, double r) {
  if (!(p.rho > 0.0) || !(p.temperature > 0.0))
    throw std::invalid_argument("mb_eval: parameters must be positive");
  const double T = p.temperature;
  return p.rho / (8.0 * kPi * T * T * T) * std::exp(-r / T);
}

double be_eval(const BoseEinsteinParams& p, double r) {
  if (!(p.c > 0.0) || !(p.gamma > 0.0))
    throw std::invalid_argument("be_eval: parameters must be positive");
  return 1.0 / std::expm1(p.c + p.gamma * r);
}

double bose_series(int n, double c, const SeriesTolerance& tol) {
  if (n < 2) throw std::invalid_argument("bose_series: n must be >= 2");
  const double s = occupation_sum(n + 1, c, tol);
  if (s == 0.0)
    throw std::runtime_error("bose_series: series underflow, c too large");
  double factorial = 1.0;
  for (int i = 2; i <= n; ++i) factorial *= i;
  return factorial * s;
}

double beta_zero_limit() {
  const double ratio = kZeta3 / kZeta4;
  return (8.0 * kPi / 27.0) * kZeta3 * ratio * ratio * ratio;
}

double beta(double c, const SeriesTolerance& tol) {
  if (!(c > 0.0)) throw std::invalid_argument("beta: c must be > 0");
  if (c < kSmallC) {
    // first-order zeta expansion (approximate, within O(c^2) of the series)
    const double s3 = kZeta3 - c * kZeta2;
    const double s4 = kZeta4 - c * kZeta3;
    const double ratio = s3 / s4;
    return (8.0 * kPi / 27.0) * s3 * ratio * ratio * ratio;
  }
  const double s3 = occupation_sum(3, c, tol);
  const double s4 = occupation_sum(4, c, tol);
  if (s4 == 0.0) return 0.0;  // underflow limit, beta -> 0 as c -> inf
  const double ratio = s3 / s4;
  return (8.0 * kPi / 27.0) * s3 * ratio * ratio * ratio;
}

double beta_derivative(double c, const SeriesTolerance& tol) {
  if (!(c > 0.0))
    throw std::invalid_argument("beta_derivative: c must be > 0");
  double s2, s3, s4;
  if (c < kSmallC) {
    const double s1 = -std::log1p(-std::exp(-c));
    s2 = kZeta2 - c * s1;
    s3 = kZeta3 - c * kZeta2;
    s4 = kZeta4 - c * kZeta3;
  } else {
    s2 = occupation_sum(2, c, tol);
    s3 = occupation_sum(3, c, tol);
    s4 = occupation_sum(4, c, tol);
  }
  if (s4 == 0.0)
    return 0.0;  // both beta and its derivative have underflowed
  return beta(c, tol) * (3.0 * s3 * s3 - 4.0 * s2 * s4) / (s3 * s4);
}

double solve_c(double target, const SeriesTolerance& tol) {
  const double bound = beta_zero_limit();
  if (!(target > 0.0) || !(target < bound))
    throw AperyRangeError(target, bound);

  constexpr double kFloor = 1e-6;
  constexpr double kCap = 1e3;
  constexpr int kMaxIter = 200;

  // bracket [lo, hi] with beta(lo) >= target >= beta(hi)
  double lo = 1.0, hi = 1.0;
  if (beta(1.0, tol) >= target) {
    while (beta(hi, tol) > target) {
      lo = hi;
      hi *= 2.0;
      if (hi > kCap)
        throw std::runtime_error("solve_c: failed to bracket below cap");
    }
  } else {
    while (beta(lo, tol) < target) {
      hi = lo;
      lo *= 0.5;
      if (lo < kFloor)
        throw AperyRangeError(target, bound);  // within solver floor of limit
    }
  }

  double x = 0.5 * (lo + hi);
  for (int it = 0; it < kMaxIter; ++it) {
    const double f = beta(x, tol) - target;
    if (std::abs(f) <= tol.abs_tol * target) return x;
    if (f > 0.0)
      lo = x;  // beta decreasing: root lies to the right
    else
      hi = x;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return x;

    const double df = beta_derivative(x, tol);
    double next = x - f / df;
    if (!std::isfinite(next) || next <= lo || next >= hi)
      next = 0.5 * (lo + hi);
    x = next;
  }
  return x;
}

double gamma_from(double c, double rho, const SeriesTolerance& tol) {
  if (!(rho > 0.0)) throw std::invalid_argument("gamma_from: rho must be > 0");
  return std::cbrt(4.0 * kPi * bose_series(2, c, tol) / rho);
}

EquilibriumParams build_equilibrium(const MomentPair& m, Statistics stats,
                                    const SeriesTolerance& tol) {
  if (!(m.rho > 0.0) || !(m.energy > 0.0))
    throw std::invalid_argument(
        "build_equilibrium: moments must be positive");
  if (stats == Statistics::MaxwellBoltzmann)
    return MaxwellBoltzmannParams{m.rho, temperature(m)};

  const double ratio = m.rho / m.energy;
  const double target = m.rho * ratio * ratio * ratio;  // rho/(3T)^3
  const double c = solve_c(target, tol);
  return BoseEinsteinParams{c, gamma_from(c, m.rho, tol)};
}

double evaluate(const EquilibriumParams& params, double r) {
  return std::visit(
      [r](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, MaxwellBoltzmannParams>)
          return mb_eval(p, r);
        else
          return be_eval(p, r);
      },
      params);
}

DistributionState sample_equilibrium(const EquilibriumParams& params,
                                     const GridPtr& grid, double time) {
  return sample(grid, [&](double r) { return evaluate(params, r); }, time);
}

Statistics statistics_of(const EquilibriumParams& params) {
  return std::holds_alternative<MaxwellBoltzmannParams>(params)
             ? Statistics::MaxwellBoltzmann
             : Statistics::BoseEinstein;
}

}  // namespace rbgk
