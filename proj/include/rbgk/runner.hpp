#ifndef RBGK_RUNNER_HPP
#define RBGK_RUNNER_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rbgk/config.hpp"
#include "rbgk/dynamics.hpp"

namespace rbgk {

/// Outcome of one simulation run.
struct RunSummary {
  bool matched = false;
  long n_steps = 0;
  double max_rho_drift = 0.0;
  double max_energy_drift = 0.0;
  std::optional<double> max_analytic_deviation;  // matched runs only
  std::optional<std::string> failure;  // mid-run failure, trajectory truncated
  double wall_seconds = 0.0;
  std::filesystem::path csv_path;
  std::filesystem::path json_path;
};

/// Resolves the run's output directory: absolute directories are used as
/// given; relative ones are placed under `root` (which itself defaults to
/// the RBGK_OUTPUT_ROOT environment variable, or "." if unset).
std::filesystem::path resolve_output_dir(
    const RunConfig& config, const std::filesystem::path& root = {});

/// Builds the configured initial condition on the given grid.  Throws
/// ConfigError for an unreadable or grid-incompatible table file.
DistributionState build_initial_state(const RunConfig& config,
                                      const GridPtr& grid);

/// Runs one simulation and writes <dir>/timeseries.csv and
/// <dir>/summary.json.  The CSV columns are
///   t,rho,energy,T[,c,gamma][,linf_vs_analytic]
/// with c,gamma present for Bose-Einstein runs and linf_vs_analytic present
/// for moment-matched runs; floats carry 17 significant digits.
/// AperyRangeError from an inadmissible initial condition propagates;
/// mid-run failures are recorded in the summary instead.
RunSummary run_simulation(const RunConfig& config,
                          const std::filesystem::path& output_root = {});

/// Runs every *.cfg under `dir` concurrently (one run per config, each into
/// its own output directory).  Returns per-config summaries in path order.
struct SweepEntry {
  std::filesystem::path config_path;
  std::optional<std::string> error;  // set when the run threw
  RunSummary summary;                // valid when !error
};
std::vector<SweepEntry> run_sweep(const std::filesystem::path& dir,
                                  const std::filesystem::path& output_root = {});

}  // namespace rbgk

#endif
