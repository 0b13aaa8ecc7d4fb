// Independent numerical oracles for the test suites.  Everything here is
// deliberately implemented against the defining series/integrals in long
// double, sharing no code or constants with the library.
#ifndef RBGK_TEST_ORACLES_HPP
#define RBGK_TEST_ORACLES_HPP

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

// Li_n(z) by direct summation; converges for 0 < z < 1.
inline long double polylog(int n, long double z) {
  long double sum = 0.0L, zk = z;
  for (long k = 1; k < 50'000'000L; ++k) {
    const long double term = zk / std::pow(static_cast<long double>(k), n);
    sum += term;
    if (term < 1e-21L * sum) return sum;
    zk *= z;
  }
  throw std::runtime_error("oracle::polylog did not converge");
}

// zeta(s) by summation with an Euler-Maclaurin tail.
inline long double zeta(long double s) {
  const long K = 4000;
  long double sum = 0.0L;
  for (long k = K - 1; k >= 1; --k)
    sum += std::pow(static_cast<long double>(k), -s);
  const long double Kd = K;
  return sum + std::pow(Kd, 1 - s) / (s - 1) + std::pow(Kd, -s) / 2 +
         s * std::pow(Kd, -s - 1) / 12 -
         s * (s + 1) * (s + 2) * std::pow(Kd, -s - 3) / 720;
}

// Adaptive Simpson on [a, b]; an integration route independent of any grid.
inline long double adaptive_simpson(const std::function<long double(long double)>& f,
                                    long double a, long double b,
                                    long double tol = 1e-16L, int depth = 28) {
  const auto simpson = [&f](long double lo, long double hi) {
    return (hi - lo) / 6.0L *
           (f(lo) + 4.0L * f((lo + hi) / 2.0L) + f(hi));
  };
  const std::function<long double(long double, long double, long double,
                                  long double, int)>
      recurse = [&](long double lo, long double hi, long double whole,
                    long double eps, int d) -> long double {
    const long double mid = (lo + hi) / 2.0L;
    const long double left = simpson(lo, mid);
    const long double right = simpson(mid, hi);
    if (d <= 0 || std::abs(left + right - whole) < 15.0L * eps)
      return left + right + (left + right - whole) / 15.0L;
    return recurse(lo, mid, left, eps / 2.0L, d - 1) +
           recurse(mid, hi, right, eps / 2.0L, d - 1);
  };
  return recurse(a, b, simpson(a, b), tol, depth);
}

// Centered finite difference.
inline double derivative(const std::function<double(double)>& f, double x,
                         double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracle

#endif
