#ifndef RBGK_CONFIG_HPP
#define RBGK_CONFIG_HPP

#include <filesystem>
#include <stdexcept>
#include <string>

#include "rbgk/dynamics.hpp"
#include "rbgk/quadrature.hpp"

namespace rbgk {

/// Config-file or command-line input that fails to parse or validate.
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class InitialFamily { Juttner, GammaShell, BeJuttner, Perturbed, Table };

struct GridSpec {
  RuleKind rule = RuleKind::ExponentiallyWeighted;
  int n_nodes = 64;
  double r_max = 40.0;  // uniform rule only
  bool operator==(const GridSpec&) const = default;
};

struct InitialSpec {
  InitialFamily family = InitialFamily::GammaShell;
  // gamma_shell: r^k exp(-a r)
  double k = 1.0;
  double a = 1.0;
  // juttner: rho/(8 pi T^3) exp(-r/T)
  double rho = 25.132741228718345;  // 8 pi
  double T = 1.0;
  // be_juttner: 1/(exp(c + gamma r) - 1)
  double c = 1.0;
  double gamma = 1.0;
  // perturbed: J0(r) (1 + eps cos(2 r)), |eps| < 1
  double eps = 0.1;
  // table: CSV of "r,F" rows whose radii must coincide with the grid nodes
  std::string path;
  // moment-match the sampled family to the global equilibrium of the run's
  // statistics (required for gamma_shell/perturbed, unsupported for table)
  bool match = true;
  bool operator==(const InitialSpec&) const = default;
};

struct SolverSpec {
  Stepper stepper = Stepper::ExactExponential;
  double dt = 0.01;
  double t_end = 10.0;
  bool operator==(const SolverSpec&) const = default;
};

struct ToleranceSpec {
  double series_abs = 1e-14;
  long series_max_terms = 100000;
  double match_rtol = 1e-8;
  bool operator==(const ToleranceSpec&) const = default;
};

/// One simulation run: statistics, initial condition, grid, solver,
/// tolerances, output directory.
struct RunConfig {
  Statistics statistics = Statistics::MaxwellBoltzmann;
  unsigned long seed = 0;  // reserved for randomized initial-data families
  GridSpec grid;
  InitialSpec initial;
  SolverSpec solver;
  ToleranceSpec tolerance;
  std::string output_dir = "out";
  bool operator==(const RunConfig&) const = default;
};

/// Parses the key-value format with [section] headers and '#' comments.
/// Unknown sections or keys are rejected with a line diagnostic.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::filesystem::path& file);

/// Canonical echo of a config; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// Floats formatted with 17 significant digits, as used by all outputs.
std::string format_double(double v);

}  // namespace rbgk

#endif
