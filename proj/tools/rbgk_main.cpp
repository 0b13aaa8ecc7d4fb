// rbgk: solve and verify the isotropic relaxation problem dF/dt = J(F) - F
// for massless particles on a radiation-era FLRW background.
//
// Subcommands:
//   simulate <config>     run one simulation from a config file
//   equilibrium           print attractor parameters for given moments
//   verify                run the full verification suite
//   sweep <dir>           run every *.cfg in a directory concurrently
//
// Exit codes: 0 success, 1 runtime/verification failure, 2 bad config,
// 3 inadmissible Bose-Einstein target.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rbgk/acceptance.hpp"
#include "rbgk/config.hpp"
#include "rbgk/runner.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitApery = 3;

int cmd_simulate(const std::string& config_path,
                 const std::string& output_root) {
  rbgk::RunConfig config;
  try {
    config = rbgk::load_config(config_path);
  } catch (const rbgk::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    const rbgk::RunSummary s = rbgk::run_simulation(config, output_root);
    std::cout << "run: " << s.n_steps << " steps, matched "
              << (s.matched ? "yes" : "no") << '\n'
              << "max moment drift: rho " << rbgk::format_double(s.max_rho_drift)
              << ", energy " << rbgk::format_double(s.max_energy_drift) << '\n';
    if (s.max_analytic_deviation)
      std::cout << "max analytic deviation: "
                << rbgk::format_double(*s.max_analytic_deviation) << '\n';
    std::cout << "wall time: " << s.wall_seconds << " s\n"
              << "wrote " << s.csv_path.string() << ", "
              << s.json_path.string() << '\n';
    if (s.failure) {
      std::cerr << "error: trajectory truncated at " << *s.failure << '\n';
      return kExitFailure;
    }
    return 0;
  } catch (const rbgk::AperyRangeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitApery;
  } catch (const rbgk::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_equilibrium(double rho, double energy, const std::string& stats_name,
                    const std::string& out_path, int n_nodes) {
  using namespace rbgk;
  const Statistics stats = stats_name == "mb" ? Statistics::MaxwellBoltzmann
                                              : Statistics::BoseEinstein;
  try {
    const MomentPair m{rho, energy};
    const double target = m.rho * std::pow(m.rho / m.energy, 3);
    std::cout << "rho = " << format_double(m.rho)
              << ", energy = " << format_double(m.energy)
              << ", T = " << format_double(temperature(m)) << '\n'
              << "rho/(3T)^3 = " << format_double(target)
              << ", admissible bound = " << format_double(beta_zero_limit())
              << '\n';

    const EquilibriumParams params = build_equilibrium(m, stats);
    if (const auto* mb = std::get_if<MaxwellBoltzmannParams>(&params))
      std::cout << "maxwell-boltzmann: rho = " << format_double(mb->rho)
                << ", T = " << format_double(mb->temperature) << '\n';
    else if (const auto* be = std::get_if<BoseEinsteinParams>(&params))
      std::cout << "bose-einstein: c = " << format_double(be->c)
                << ", gamma = " << format_double(be->gamma) << '\n';

    const GridPtr grid = build_grid(RuleKind::ExponentiallyWeighted, n_nodes);
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << '\n';
      return kExitFailure;
    }
    out << "r,J\n";
    for (std::size_t i = 0; i < grid->size(); ++i)
      out << format_double(grid->nodes[i]) << ','
          << format_double(evaluate(params, grid->nodes[i])) << '\n';
    std::cout << "wrote " << out_path << '\n';
    return 0;
  } catch (const AperyRangeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitApery;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_verify() {
  const auto results = rbgk::acceptance::run_all();
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.name.size());
  for (const auto& r : results)
    std::printf("[%s] %-*s  %s\n", r.passed ? "PASS" : "FAIL",
                static_cast<int>(width), r.name.c_str(), r.detail.c_str());
  const bool ok = rbgk::acceptance::all_passed(results);
  std::printf("%zu/%zu checks passed\n",
              static_cast<std::size_t>(
                  std::count_if(results.begin(), results.end(),
                                [](const auto& r) { return r.passed; })),
              results.size());
  return ok ? 0 : kExitFailure;
}

int cmd_sweep(const std::string& dir, const std::string& output_root) {
  try {
    const auto entries = rbgk::run_sweep(dir, output_root);
    if (entries.empty()) {
      std::cerr << "error: no *.cfg files in " << dir << '\n';
      return kExitConfig;
    }
    bool ok = true;
    for (const auto& e : entries) {
      if (e.error) {
        ok = false;
        std::cout << e.config_path.filename().string() << ": FAILED ("
                  << *e.error << ")\n";
      } else {
        std::cout << e.config_path.filename().string() << ": "
                  << e.summary.n_steps << " steps, drift "
                  << rbgk::format_double(std::max(e.summary.max_rho_drift,
                                                  e.summary.max_energy_drift))
                  << (e.summary.failure ? ", truncated" : "") << '\n';
        if (e.summary.failure) ok = false;
      }
    }
    return ok ? 0 : kExitFailure;
  } catch (const rbgk::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "relativistic BGK relaxation solver (massless, FLRW background)"};
  app.require_subcommand(1);

  std::string config_path, output_root, sweep_dir;
  auto* sim = app.add_subcommand("simulate", "run one simulation");
  sim->add_option("config", config_path, "config file")->required();
  sim->add_option("--output-root", output_root,
                  "directory prefix for relative output paths "
                  "(default: $RBGK_OUTPUT_ROOT)");

  double rho = 0.0, energy = 0.0;
  std::string stats_name, eq_out = "equilibrium.csv";
  int eq_nodes = 64;
  auto* eq = app.add_subcommand("equilibrium",
                                "attractor parameters from moments");
  eq->add_option("--rho", rho, "number moment int F dv")->required();
  eq->add_option("--energy", energy, "energy moment int |v| F dv")->required();
  eq->add_option("--stats", stats_name, "mb or be")
      ->required()
      ->check(CLI::IsMember({"mb", "be"}));
  eq->add_option("--out", eq_out, "sampled J output file");
  eq->add_option("--n-nodes", eq_nodes, "sampling grid size");

  auto* verify = app.add_subcommand("verify", "run the verification suite");

  auto* sweep = app.add_subcommand("sweep", "run every *.cfg in a directory");
  sweep->add_option("dir", sweep_dir, "directory of config files")->required();
  sweep->add_option("--output-root", output_root,
                    "directory prefix for relative output paths");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (sim->parsed()) return cmd_simulate(config_path, output_root);
  if (eq->parsed())
    return cmd_equilibrium(rho, energy, stats_name, eq_out, eq_nodes);
  if (verify->parsed()) return cmd_verify();
  if (sweep->parsed()) return cmd_sweep(sweep_dir, output_root);
  return kExitConfig;
}
