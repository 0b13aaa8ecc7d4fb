#include "rbgk/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <sstream>

#include <nlohmann/json.hpp>

namespace rbgk {
namespace {

using nlohmann::json;

GridPtr build_configured_grid(const GridSpec& spec) {
  if (spec.rule == RuleKind::UniformCutoff)
    return build_grid(spec.rule, spec.n_nodes, spec.r_max);
  return build_grid(spec.rule, spec.n_nodes);
}

DistributionState load_table(const std::filesystem::path& path,
                             const GridPtr& grid) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open table file: " + path.string());

  std::vector<std::pair<double, double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double r, f;
    if (!(ls >> r >> f))
      throw ConfigError("table file " + path.string() + ": bad row '" + line +
                        "'");
    rows.emplace_back(r, f);
  }
  if (rows.size() != grid->size())
    throw ConfigError("table file " + path.string() + ": " +
                      std::to_string(rows.size()) + " rows for a grid of " +
                      std::to_string(grid->size()) + " nodes");

  DistributionState s;
  s.grid = grid;
  s.values.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double node = grid->nodes[i];
    if (std::abs(rows[i].first - node) > 1e-9 * std::max(1.0, node))
      throw ConfigError("table file " + path.string() + ": row " +
                        std::to_string(i) + " radius " +
                        format_double(rows[i].first) +
                        " does not match grid node " + format_double(node));
    if (rows[i].second < 0.0)
      throw ConfigError("table file " + path.string() +
                        ": negative value at row " + std::to_string(i));
    s.values[i] = rows[i].second;
  }
  return s;
}

json summary_json(const RunConfig& config, const GridPtr& grid,
                  const RunSummary& s) {
  json j;
  j["statistics"] =
      config.statistics == Statistics::MaxwellBoltzmann ? "mb" : "be";
  j["stepper"] =
      config.solver.stepper == Stepper::ExactExponential ? "exact" : "rk4";
  j["dt"] = config.solver.dt;
  j["t_end"] = config.solver.t_end;
  j["n_steps"] = s.n_steps;
  j["matched"] = s.matched;
  j["max_drift_rho"] = s.max_rho_drift;
  j["max_drift_energy"] = s.max_energy_drift;
  if (s.max_analytic_deviation)
    j["max_analytic_deviation"] = *s.max_analytic_deviation;
  else
    j["max_analytic_deviation"] = nullptr;
  j["wall_time_seconds"] = s.wall_seconds;
  j["failure"] = s.failure ? json(*s.failure) : json(nullptr);
  j["grid"] = {{"rule", grid->rule == RuleKind::ExponentiallyWeighted
                            ? "exponential"
                            : "uniform"},
               {"n_nodes", grid->size()},
               {"r_max", grid->r_max},
               {"tolerance", grid->tolerance}};
  j["timeseries"] = s.csv_path.filename().string();
  return j;
}

}  // namespace

std::filesystem::path resolve_output_dir(const RunConfig& config,
                                         const std::filesystem::path& root) {
  std::filesystem::path base = root;
  if (base.empty()) {
    if (const char* env = std::getenv("RBGK_OUTPUT_ROOT")) base = env;
  }
  std::filesystem::path dir = config.output_dir;
  if (dir.is_absolute() || base.empty()) return dir;
  return base / dir;
}

DistributionState build_initial_state(const RunConfig& config,
                                      const GridPtr& grid) {
  const InitialSpec& in = config.initial;

  std::function<double(double)> profile;
  switch (in.family) {
    case InitialFamily::Juttner: {
      const MaxwellBoltzmannParams p{in.rho, in.T};
      profile = [p](double r) { return mb_eval(p, r); };
      break;
    }
    case InitialFamily::GammaShell: {
      const double k = in.k, a = in.a;
      profile = [k, a](double r) { return std::pow(r, k) * std::exp(-a * r); };
      break;
    }
    case InitialFamily::BeJuttner: {
      const BoseEinsteinParams p{in.c, in.gamma};
      profile = [p](double r) { return be_eval(p, r); };
      break;
    }
    case InitialFamily::Perturbed: {
      const Statistics stats = config.statistics;
      const double eps = in.eps;
      profile = [stats, eps](double r) {
        const double j0 = stats == Statistics::MaxwellBoltzmann
                              ? std::exp(-r)
                              : 1.0 / std::expm1(1.0 + r);
        return j0 * (1.0 + eps * std::cos(2.0 * r));
      };
      break;
    }
    case InitialFamily::Table:
      return load_table(in.path, grid);
  }

  if (!in.match) return sample(grid, profile);
  const MomentPair target =
      moments(global_equilibrium(config.statistics, grid));
  return moment_match(grid, profile, target);
}

RunSummary run_simulation(const RunConfig& config,
                          const std::filesystem::path& output_root) {
  const auto start = std::chrono::steady_clock::now();

  const GridPtr grid = build_configured_grid(config.grid);
  const DistributionState f0 = build_initial_state(config, grid);

  // An inadmissible initial condition is a configuration error, reported
  // with a typed exception before any stepping; mid-run failures are
  // recorded in the trajectory instead.
  build_equilibrium(moments(f0), config.statistics,
                    SeriesTolerance{config.tolerance.series_abs,
                                    config.tolerance.series_max_terms});

  SolverConfig solver;
  solver.dt = config.solver.dt;
  solver.t_end = config.solver.t_end;
  solver.stepper = config.solver.stepper;
  solver.statistics = config.statistics;
  solver.series = SeriesTolerance{config.tolerance.series_abs,
                                  config.tolerance.series_max_terms};
  solver.match_rtol = config.tolerance.match_rtol;

  const Trajectory traj = simulate(f0, solver);
  const ConservationReport cons = conservation_report(traj);

  RunSummary summary;
  summary.n_steps =
      static_cast<long>(traj.states.size()) - 1;
  summary.max_rho_drift = cons.max_rho_drift;
  summary.max_energy_drift = cons.max_energy_drift;
  summary.failure = traj.failure;

  const bool be = config.statistics == Statistics::BoseEinstein;
  const bool matched = !traj.records.empty() &&
                       traj.records.front().linf_vs_analytic.has_value();
  summary.matched = matched;
  if (matched) {
    double max_dev = 0.0;
    for (const StepRecord& rec : traj.records)
      max_dev = std::max(max_dev, rec.linf_vs_analytic.value_or(0.0));
    summary.max_analytic_deviation = max_dev;
  }

  const std::filesystem::path dir = resolve_output_dir(config, output_root);
  std::filesystem::create_directories(dir);
  summary.csv_path = dir / "timeseries.csv";
  summary.json_path = dir / "summary.json";

  std::ofstream csv(summary.csv_path);
  if (!csv)
    throw std::runtime_error("cannot write " + summary.csv_path.string());
  csv << "t,rho,energy,T";
  if (be) csv << ",c,gamma";
  if (matched) csv << ",linf_vs_analytic";
  csv << '\n';
  for (const StepRecord& rec : traj.records) {
    csv << format_double(rec.time) << ',' << format_double(rec.moments.rho)
        << ',' << format_double(rec.moments.energy) << ','
        << format_double(temperature(rec.moments));
    if (be) {
      const auto& p = std::get<BoseEinsteinParams>(rec.params);
      csv << ',' << format_double(p.c) << ',' << format_double(p.gamma);
    }
    if (matched) csv << ',' << format_double(*rec.linf_vs_analytic);
    csv << '\n';
  }
  csv.close();

  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  std::ofstream js(summary.json_path);
  if (!js)
    throw std::runtime_error("cannot write " + summary.json_path.string());
  js << summary_json(config, grid, summary).dump(2) << '\n';
  return summary;
}

std::vector<SweepEntry> run_sweep(const std::filesystem::path& dir,
                                  const std::filesystem::path& output_root) {
  if (!std::filesystem::is_directory(dir))
    throw ConfigError("sweep: not a directory: " + dir.string());

  std::vector<std::filesystem::path> configs;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".cfg")
      configs.push_back(entry.path());
  std::sort(configs.begin(), configs.end());

  std::vector<std::future<SweepEntry>> futures;
  futures.reserve(configs.size());
  for (const auto& path : configs) {
    futures.push_back(std::async(std::launch::async, [path, output_root] {
      SweepEntry entry;
      entry.config_path = path;
      try {
        entry.summary = run_simulation(load_config(path), output_root);
      } catch (const std::exception& e) {
        entry.error = e.what();
      }
      return entry;
    }));
  }

  std::vector<SweepEntry> out;
  out.reserve(futures.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

}  // namespace rbgk
