#include "rbgk/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rbgk {
namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// Implicit-QL diagonalization of a symmetric tridiagonal matrix (EISPACK
// lineage, as used for IQPACK-style quadrature generation).  d holds the
// diagonal, e the subdiagonal in e[0..n-2]; z is rotated along so that on
// exit z[i] is the first component of the i-th eigenvector.  Eigenvalues are
// returned sorted ascending in d.
void tridiag_ql(std::vector<double>& d, std::vector<double>& e,
                std::vector<double>& z) {
  const int n = static_cast<int>(d.size());
  if (n == 1) return;
  const double prec = std::numeric_limits<double>::epsilon();
  const int max_sweeps = 30;
  e[n - 1] = 0.0;

  for (int l = 1; l <= n; ++l) {
    int sweeps = 0;
    for (;;) {
      int m = l;
      for (; m < n; ++m) {
        if (std::abs(e[m - 1]) <= prec * (std::abs(d[m - 1]) + std::abs(d[m])))
          break;
      }
      double p = d[l - 1];
      if (m == l) break;
      if (sweeps++ >= max_sweeps)
        throw std::runtime_error("tridiag_ql: QL iteration did not converge");

      double g = (d[l] - p) / (2.0 * e[l - 1]);
      double r = std::sqrt(g * g + 1.0);
      g = d[m - 1] - p + e[l - 1] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0;
      p = 0.0;
      for (int i = m - 1; i >= l; --i) {
        double f = s * e[i - 1];
        const double b = c * e[i - 1];
        if (std::abs(g) <= std::abs(f)) {
          c = g / f;
          r = std::sqrt(c * c + 1.0);
          e[i] = f * r;
          s = 1.0 / r;
          c *= s;
        } else {
          s = f / g;
          r = std::sqrt(s * s + 1.0);
          e[i] = g * r;
          c = 1.0 / r;
          s *= c;
        }
        g = d[i] - p;
        r = (d[i - 1] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i] = g + p;
        g = c * r - b;
        f = z[i];
        z[i] = s * z[i - 1] + c * f;
        z[i - 1] = c * z[i - 1] - s * f;
      }
      d[l - 1] -= p;
      e[l - 1] = g;
      e[m - 1] = 0.0;
    }
  }

  // insertion sort, carrying z along
  for (int i = 1; i < n; ++i) {
    const double dv = d[i], zv = z[i];
    int j = i - 1;
    for (; j >= 0 && d[j] > dv; --j) {
      d[j + 1] = d[j];
      z[j + 1] = z[j];
    }
    d[j + 1] = dv;
    z[j + 1] = zv;
  }
}

// Gauss-Laguerre rule by Golub-Welsch: the Jacobi matrix for the Laguerre
// recurrence has diagonal 2i+1 and subdiagonal i+1.  The plain weight is
// what_i = (first eigenvector component)^2; the stored total weight folds in
// the e^{r_i} factor, computed in log space so large-node weights survive
// the underflow of what_i itself.
void laguerre_rule(int n, std::vector<double>& x, std::vector<double>& w) {
  std::vector<double> d(n), e(n), z(n, 0.0);
  for (int i = 0; i < n; ++i) {
    d[i] = 2.0 * i + 1.0;
    e[i] = static_cast<double>(i + 1);
  }
  z[0] = 1.0;
  tridiag_ql(d, e, z);

  x = d;
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    const double q = std::abs(z[i]);
    if (q == 0.0)
      throw std::runtime_error(
          "laguerre_rule: weight underflow; node count too large");
    w[i] = std::exp(x[i] + 2.0 * std::log(q));
  }
}

// Gregory coefficients of the end-corrected trapezoidal rule.
constexpr int kGregoryOrder = 7;
constexpr double kGregory[kGregoryOrder] = {
    1.0 / 12.0,      1.0 / 24.0,      19.0 / 720.0,        3.0 / 160.0,
    863.0 / 60480.0, 275.0 / 24192.0, 33953.0 / 3628800.0};

double binom(int k, int j) {
  double b = 1.0;
  for (int i = 1; i <= j; ++i) b *= static_cast<double>(k - j + i) / i;
  return b;
}

// Trapezoidal weights on the closed uniform mesh 0, h, ..., Nh with Gregory
// end corrections; returned in units of h for nodes 0..N.
std::vector<double> gregory_unit_weights(int intervals) {
  const int N = intervals;
  std::vector<double> w(N + 1, 1.0);
  w[0] = w[N] = 0.5;
  for (int k = 1; k <= kGregoryOrder; ++k) {
    const double ck = kGregory[k - 1];
    const double delta_sign = (k % 2 == 1) ? 1.0 : -1.0;
    for (int j = 0; j <= k; ++j) {
      const double b = binom(k, j);
      w[j] += delta_sign * ck * ((k - j) % 2 == 0 ? b : -b);
      w[N - j] += -ck * (j % 2 == 0 ? b : -b);
    }
  }
  return w;
}

void uniform_rule(int n, double r_max, std::vector<double>& x,
                  std::vector<double>& w) {
  const double h = r_max / n;
  const std::vector<double> unit = gregory_unit_weights(n);
  x.resize(n);
  w.resize(n);
  // node j = 0 of the closed formula sits at r = 0 and is dropped; the rule
  // is used only on integrands that vanish there.
  for (int j = 1; j <= n; ++j) {
    x[j - 1] = j * h;
    w[j - 1] = unit[j] * h;
  }
}

void validate(const RadialGrid& g) {
  if (g.nodes.size() != g.weights.size())
    throw std::runtime_error("RadialGrid: node/weight length mismatch");
  double prev = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (!(g.nodes[i] > prev))
      throw std::runtime_error("RadialGrid: nodes not strictly increasing");
    if (!(g.weights[i] > 0.0))
      throw std::runtime_error("RadialGrid: nonpositive weight");
    prev = g.nodes[i];
  }
  double gamma3 = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    gamma3 += g.weights[i] * g.nodes[i] * g.nodes[i] * std::exp(-g.nodes[i]);
  if (std::abs(gamma3 - 2.0) > g.tolerance)
    throw std::runtime_error("RadialGrid: Gamma(3) check failed, error " +
                             std::to_string(std::abs(gamma3 - 2.0)));
}

}  // namespace

GridPtr build_grid(RuleKind rule, int n_nodes, std::optional<double> r_max) {
  auto grid = std::make_shared<RadialGrid>();
  grid->rule = rule;

  switch (rule) {
    case RuleKind::ExponentiallyWeighted: {
      if (n_nodes < 4)
        throw std::invalid_argument(
            "build_grid: exponential rule needs n_nodes >= 4");
      laguerre_rule(n_nodes, grid->nodes, grid->weights);
      grid->r_max = 0.0;
      grid->tolerance = n_nodes >= 32 ? 1e-12 : 1e-9;
      break;
    }
    case RuleKind::UniformCutoff: {
      if (n_nodes < 16)
        throw std::invalid_argument(
            "build_grid: uniform rule needs n_nodes >= 16");
      if (!r_max || *r_max <= 0.0)
        throw std::invalid_argument(
            "build_grid: uniform rule needs positive r_max");
      uniform_rule(n_nodes, *r_max, grid->nodes, grid->weights);
      grid->r_max = *r_max;
      grid->tolerance =
          (n_nodes >= 400 && *r_max >= 40.0) ? 1e-8 : 1e-4;
      break;
    }
  }

  validate(*grid);
  return grid;
}

DistributionState sample(const GridPtr& grid,
                         const std::function<double(double)>& profile,
                         double time) {
  if (!grid) throw std::invalid_argument("sample: null grid");
  DistributionState s;
  s.grid = grid;
  s.time = time;
  s.values.resize(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const double v = profile(grid->nodes[i]);
    if (v < 0.0)
      throw std::invalid_argument("sample: negative profile value at r = " +
                                  std::to_string(grid->nodes[i]));
    s.values[i] = v;
  }
  return s;
}

bool same_grid(const DistributionState& a, const DistributionState& b) {
  if (a.grid == b.grid) return a.grid != nullptr;
  return a.grid && b.grid && *a.grid == *b.grid;
}

MomentPair moments(const DistributionState& state) {
  const RadialGrid& g = *state.grid;
  if (state.values.size() != g.size())
    throw std::invalid_argument("moments: state/grid length mismatch");
  double rho = 0.0, energy = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r2w = g.weights[i] * g.nodes[i] * g.nodes[i];
    rho += r2w * state.values[i];
    energy += r2w * g.nodes[i] * state.values[i];
  }
  return {kFourPi * rho, kFourPi * energy};
}

double temperature(const MomentPair& m) {
  if (!(m.rho > 0.0))
    throw std::domain_error("temperature: nonpositive number moment");
  return m.energy / (3.0 * m.rho);
}

DistributionState moment_match(const GridPtr& grid,
                               const std::function<double(double)>& profile,
                               const MomentPair& target) {
  if (!(target.rho > 0.0) || !(target.energy > 0.0))
    throw std::invalid_argument("moment_match: target moments must be > 0");

  const DistributionState g = sample(grid, profile);
  const MomentPair mg = moments(g);
  if (!(mg.rho > 0.0) || !(mg.energy > 0.0))
    throw std::invalid_argument("moment_match: template has zero moments");

  // rho[a G(l.)] = a l^-3 rho[G], energy[a G(l.)] = a l^-4 energy[G]:
  // the ratio fixes l, then a is set from the scaled samples directly so the
  // number moment matches to rounding.
  const double lambda = (target.rho / target.energy) * (mg.energy / mg.rho);
  const DistributionState scaled =
      sample(grid, [&](double r) { return profile(lambda * r); });
  const MomentPair ms = moments(scaled);
  if (!(ms.rho > 0.0))
    throw std::invalid_argument("moment_match: scaled template vanishes");
  const double alpha = target.rho / ms.rho;

  DistributionState out = scaled;
  for (double& v : out.values) v *= alpha;
  return out;
}

}  // namespace rbgk
