#include "rbgk/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rbgk {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_number(int line, const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    fail(line, "invalid number for '" + key + "': " + v);
  }
}

long parse_integer(int line, const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    fail(line, "invalid integer for '" + key + "': " + v);
  }
}

bool parse_bool(int line, const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  fail(line, "invalid boolean for '" + key + "': " + v);
}

void validate(const RunConfig& c) {
  if (c.grid.n_nodes < 4) throw ConfigError("grid.n_nodes must be >= 4");
  if (c.grid.rule == RuleKind::UniformCutoff && c.grid.r_max <= 0.0)
    throw ConfigError("grid.r_max must be positive for the uniform rule");
  if (!(c.solver.dt > 0.0) || !(c.solver.t_end > c.solver.dt))
    throw ConfigError("solver requires t_end > dt > 0");
  if (c.solver.t_end / c.solver.dt > 1e7)
    throw ConfigError("solver step budget t_end/dt exceeds 1e7");
  if (c.tolerance.series_abs < 1e-15)
    throw ConfigError("tolerance.series_abs must be >= 1e-15");
  if (c.tolerance.series_max_terms < 10)
    throw ConfigError("tolerance.series_max_terms must be >= 10");
  if (!(c.tolerance.match_rtol > 0.0))
    throw ConfigError("tolerance.match_rtol must be positive");
  if (c.output_dir.empty()) throw ConfigError("output.directory is empty");

  const InitialSpec& in = c.initial;
  switch (in.family) {
    case InitialFamily::Juttner:
      if (!(in.rho > 0.0) || !(in.T > 0.0))
        throw ConfigError("juttner family requires rho > 0 and T > 0");
      break;
    case InitialFamily::GammaShell:
      if (!(in.a > 0.0) || in.k < 0.0)
        throw ConfigError("gamma_shell family requires a > 0 and k >= 0");
      if (!in.match)
        throw ConfigError("gamma_shell family requires match = true");
      break;
    case InitialFamily::BeJuttner:
      if (!(in.c > 0.0) || !(in.gamma > 0.0))
        throw ConfigError("be_juttner family requires c > 0 and gamma > 0");
      break;
    case InitialFamily::Perturbed:
      if (!(std::abs(in.eps) < 1.0))
        throw ConfigError("perturbed family requires |eps| < 1");
      if (!in.match)
        throw ConfigError("perturbed family requires match = true");
      break;
    case InitialFamily::Table:
      if (in.path.empty())
        throw ConfigError("table family requires initial.path");
      if (in.match)
        throw ConfigError(
            "table family cannot be moment-matched (samples cannot be "
            "rescaled without interpolation); set initial.match = false");
      break;
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;

  while (std::getline(in, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section != "grid" && section != "initial" && section != "solver" &&
          section != "tolerance" && section != "output")
        fail(line, "unknown section [" + section + "]");
      continue;
    }

    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (key.empty() || val.empty()) fail(line, "expected 'key = value'");

    if (section.empty()) {
      if (key == "statistics") {
        if (val == "mb")
          c.statistics = Statistics::MaxwellBoltzmann;
        else if (val == "be")
          c.statistics = Statistics::BoseEinstein;
        else
          fail(line, "statistics must be 'mb' or 'be'");
      } else if (key == "seed") {
        c.seed = static_cast<unsigned long>(parse_integer(line, key, val));
      } else {
        fail(line, "unknown top-level key '" + key + "'");
      }
    } else if (section == "grid") {
      if (key == "rule") {
        if (val == "exponential")
          c.grid.rule = RuleKind::ExponentiallyWeighted;
        else if (val == "uniform")
          c.grid.rule = RuleKind::UniformCutoff;
        else
          fail(line, "grid.rule must be 'exponential' or 'uniform'");
      } else if (key == "n_nodes") {
        c.grid.n_nodes = static_cast<int>(parse_integer(line, key, val));
      } else if (key == "r_max") {
        c.grid.r_max = parse_number(line, key, val);
      } else {
        fail(line, "unknown grid key '" + key + "'");
      }
    } else if (section == "initial") {
      if (key == "family") {
        if (val == "juttner")
          c.initial.family = InitialFamily::Juttner;
        else if (val == "gamma_shell")
          c.initial.family = InitialFamily::GammaShell;
        else if (val == "be_juttner")
          c.initial.family = InitialFamily::BeJuttner;
        else if (val == "perturbed")
          c.initial.family = InitialFamily::Perturbed;
        else if (val == "table")
          c.initial.family = InitialFamily::Table;
        else
          fail(line, "unknown initial family '" + val + "'");
      } else if (key == "k") {
        c.initial.k = parse_number(line, key, val);
      } else if (key == "a") {
        c.initial.a = parse_number(line, key, val);
      } else if (key == "rho") {
        c.initial.rho = parse_number(line, key, val);
      } else if (key == "T") {
        c.initial.T = parse_number(line, key, val);
      } else if (key == "c") {
        c.initial.c = parse_number(line, key, val);
      } else if (key == "gamma") {
        c.initial.gamma = parse_number(line, key, val);
      } else if (key == "eps") {
        c.initial.eps = parse_number(line, key, val);
      } else if (key == "path") {
        c.initial.path = val;
      } else if (key == "match") {
        c.initial.match = parse_bool(line, key, val);
      } else {
        fail(line, "unknown initial key '" + key + "'");
      }
    } else if (section == "solver") {
      if (key == "stepper") {
        if (val == "exact")
          c.solver.stepper = Stepper::ExactExponential;
        else if (val == "rk4")
          c.solver.stepper = Stepper::RungeKutta4;
        else
          fail(line, "solver.stepper must be 'exact' or 'rk4'");
      } else if (key == "dt") {
        c.solver.dt = parse_number(line, key, val);
      } else if (key == "t_end") {
        c.solver.t_end = parse_number(line, key, val);
      } else {
        fail(line, "unknown solver key '" + key + "'");
      }
    } else if (section == "tolerance") {
      if (key == "series_abs") {
        c.tolerance.series_abs = parse_number(line, key, val);
      } else if (key == "series_max_terms") {
        c.tolerance.series_max_terms = parse_integer(line, key, val);
      } else if (key == "match_rtol") {
        c.tolerance.match_rtol = parse_number(line, key, val);
      } else {
        fail(line, "unknown tolerance key '" + key + "'");
      }
    } else {  // output
      if (key == "directory") {
        c.output_dir = val;
      } else {
        fail(line, "unknown output key '" + key + "'");
      }
    }
  }

  validate(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file: " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "statistics = "
      << (c.statistics == Statistics::MaxwellBoltzmann ? "mb" : "be") << '\n'
      << "seed = " << c.seed << "\n\n";

  out << "[grid]\n"
      << "rule = "
      << (c.grid.rule == RuleKind::ExponentiallyWeighted ? "exponential"
                                                         : "uniform")
      << '\n'
      << "n_nodes = " << c.grid.n_nodes << '\n'
      << "r_max = " << format_double(c.grid.r_max) << "\n\n";

  const char* family = nullptr;
  switch (c.initial.family) {
    case InitialFamily::Juttner: family = "juttner"; break;
    case InitialFamily::GammaShell: family = "gamma_shell"; break;
    case InitialFamily::BeJuttner: family = "be_juttner"; break;
    case InitialFamily::Perturbed: family = "perturbed"; break;
    case InitialFamily::Table: family = "table"; break;
  }
  out << "[initial]\n"
      << "family = " << family << '\n'
      << "k = " << format_double(c.initial.k) << '\n'
      << "a = " << format_double(c.initial.a) << '\n'
      << "rho = " << format_double(c.initial.rho) << '\n'
      << "T = " << format_double(c.initial.T) << '\n'
      << "c = " << format_double(c.initial.c) << '\n'
      << "gamma = " << format_double(c.initial.gamma) << '\n'
      << "eps = " << format_double(c.initial.eps) << '\n';
  if (!c.initial.path.empty()) out << "path = " << c.initial.path << '\n';
  out << "match = " << (c.initial.match ? "true" : "false") << "\n\n";

  out << "[solver]\n"
      << "stepper = "
      << (c.solver.stepper == Stepper::ExactExponential ? "exact" : "rk4")
      << '\n'
      << "dt = " << format_double(c.solver.dt) << '\n'
      << "t_end = " << format_double(c.solver.t_end) << "\n\n";

  out << "[tolerance]\n"
      << "series_abs = " << format_double(c.tolerance.series_abs) << '\n'
      << "series_max_terms = " << c.tolerance.series_max_terms << '\n'
      << "match_rtol = " << format_double(c.tolerance.match_rtol) << "\n\n";

  out << "[output]\n"
      << "directory = " << c.output_dir << '\n';
  return out.str();
}

}  // namespace rbgk
