#pragma once

// Run configuration shared by the command-line driver and the suites.
//
// A config names a suite, a model preset with its parameters, the grid
// resolution, a seed, and optional output paths.  validate() enforces the
// same preconditions the modules would raise later, so a bad configuration
// fails before any computation starts.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gbq/kottler.hpp"
#include "gbq/report.hpp"
#include "gbq/warped_product.hpp"

namespace gbq {

struct SuiteConfig {
  std::string suite = "all";
  std::string preset = "euclid";
  int n = 4;                                // ambient dimension
  int k = 1;                                // curvature degree
  double kappa = -1.0;                      // kottler fiber curvature
  double mass = 1.0;                        // kottler mass parameter
  double r0 = 1.0;                          // slice radius
  std::vector<double> eps = {0.01, 0.02, 0.05};
  int grid = 8;                             // nodes per fiber axis
  unsigned long long seed = 1;
  double tol = 1e-9;                        // slice-quotient gate
  bool check_logconvex = false;
  std::string report_path;                  // JSON; empty = do not write
  std::string csv_path;                     // flattened checks; empty = skip
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "identities", "variation", "hypersurface", "kottler", "perturb", "all"};
  return names;
}

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "euclid", "hyperbolic-horo", "hyperbolic-cosh", "kottler"};
  return names;
}

inline void validate(const SuiteConfig& cfg) {
  bool known = false;
  for (const std::string& s : suite_names()) known = known || s == cfg.suite;
  if (!known) throw std::invalid_argument("unknown suite '" + cfg.suite + "'");
  known = false;
  for (const std::string& p : preset_names()) known = known || p == cfg.preset;
  if (!known) {
    throw std::invalid_argument("unknown preset '" + cfg.preset + "'");
  }
  if (cfg.n < 3) throw std::invalid_argument("ambient dimension must be >= 3");
  if (cfg.k < 0 || 2 * cfg.k > cfg.n) {
    throw std::invalid_argument("need 0 <= 2k <= n");
  }
  if (cfg.kappa != -1.0 && cfg.kappa != 0.0 && cfg.kappa != 1.0) {
    throw std::invalid_argument("fiber curvature must be -1, 0 or +1");
  }
  if (cfg.grid < 4) throw std::invalid_argument("grid must be >= 4 nodes");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  for (double e : cfg.eps) {
    if (!(e >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  }
}

namespace detail {

inline std::string trim(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline double config_number(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != value.size()) {
    throw std::invalid_argument("config key '" + key + "': bad number '" +
                                value + "'");
  }
  return v;
}

inline int config_int(const std::string& key, const std::string& value) {
  const double v = config_number(key, value);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) {
    throw std::invalid_argument("config key '" + key +
                                "': expected an integer, got '" + value + "'");
  }
  return i;
}

inline unsigned long long config_seed(const std::string& key,
                                      const std::string& value) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (pos == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("config key '" + key + "': bad seed '" + value +
                              "'");
}

inline bool config_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw std::invalid_argument("config key '" + key +
                              "': expected true/false, got '" + value + "'");
}

}  // namespace detail

// Parses the flat config format: one "key = value" pair per line, blank
// lines skipped, lines whose first non-space character is '#' skipped.
inline std::vector<std::pair<std::string, std::string>> parse_flat_config(
    const std::string& text) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::istringstream lines(text);
  std::string raw;
  while (std::getline(lines, raw)) {
    const std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line is not 'key = value': " + line);
    }
    pairs.emplace_back(detail::trim(line.substr(0, eq)),
                       detail::trim(line.substr(eq + 1)));
  }
  return pairs;
}

// Long-flag spelling of a config file key, or "" when the key is unknown.
// "dim" names the same option as "n", matching the flag alias.
inline std::string config_key_flag(const std::string& key) {
  static const std::vector<std::string> keys = {
      "suite", "preset", "n",    "dim",  "k",   "kappa",
      "mass",  "r0",     "eps",  "grid", "seed", "tol",
      "report", "csv",   "check-logconvex"};
  for (const std::string& known : keys) {
    if (known == key) return key == "dim" ? "--n" : "--" + key;
  }
  return "";
}

// Applies one config file pair to cfg.  Unknown keys and unparseable
// values raise invalid_argument naming the offender.
inline void apply_config_value(SuiteConfig& cfg, const std::string& key,
                               const std::string& value) {
  if (key == "suite") {
    cfg.suite = value;
  } else if (key == "preset") {
    cfg.preset = value;
  } else if (key == "n" || key == "dim") {
    cfg.n = detail::config_int(key, value);
  } else if (key == "k") {
    cfg.k = detail::config_int(key, value);
  } else if (key == "kappa") {
    cfg.kappa = detail::config_number(key, value);
  } else if (key == "mass") {
    cfg.mass = detail::config_number(key, value);
  } else if (key == "r0") {
    cfg.r0 = detail::config_number(key, value);
  } else if (key == "eps") {
    cfg.eps.clear();
    std::istringstream ss(value);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      cfg.eps.push_back(detail::config_number(key, detail::trim(tok)));
    }
  } else if (key == "grid") {
    cfg.grid = detail::config_int(key, value);
  } else if (key == "seed") {
    cfg.seed = detail::config_seed(key, value);
  } else if (key == "tol") {
    cfg.tol = detail::config_number(key, value);
  } else if (key == "report") {
    cfg.report_path = value;
  } else if (key == "csv") {
    cfg.csv_path = value;
  } else if (key == "check-logconvex") {
    cfg.check_logconvex = detail::config_bool(key, value);
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

// Loads a flat config file into cfg.  skip(flag) says whether the option
// with that long-flag spelling is already fixed (an explicit command-line
// flag overrides the file), in which case the pair is ignored.
template <class SkipPred>
void load_config_file(SuiteConfig& cfg, const std::string& path,
                      SkipPred skip) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot read config file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  for (const auto& [key, value] : parse_flat_config(ss.str())) {
    const std::string flag = config_key_flag(key);
    if (flag.empty()) {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
    if (skip(flag)) continue;
    apply_config_value(cfg, key, value);
  }
}

// Model named by the preset id.  "hyperbolic-cosh" is the cosh warping over
// a flat fiber; the kottler preset reconstructs the profile outward to 2.5
// horizon radii, which the slice radius is checked against.
inline WarpedProduct make_preset(const SuiteConfig& cfg) {
  if (cfg.preset == "euclid") return euclid_model(cfg.n);
  if (cfg.preset == "hyperbolic-horo") return hyperbolic_horo_model(cfg.n);
  if (cfg.preset == "hyperbolic-cosh") return cosh_flat_model(cfg.n);
  const KottlerSpace ks =
      make_kottler(cfg.n, static_cast<int>(cfg.kappa), cfg.mass);
  const LambdaProfile prof = lambda_profile(ks, 2.5 * ks.rho0, 2048);
  return kottler_warped_product(prof);
}

// Ordered parameter echo, identical for identical configs.  Output paths
// are excluded: the bytes of a report must not depend on where it lands.
inline void echo_params(const SuiteConfig& cfg, Report& rep) {
  rep.param("suite", cfg.suite);
  rep.param("preset", cfg.preset);
  rep.param("n", std::to_string(cfg.n));
  rep.param("k", std::to_string(cfg.k));
  rep.param("kappa", format_double(cfg.kappa));
  rep.param("mass", format_double(cfg.mass));
  rep.param("r0", format_double(cfg.r0));
  std::string eps_list;
  for (std::size_t i = 0; i < cfg.eps.size(); ++i) {
    if (i) eps_list += ",";
    eps_list += format_double(cfg.eps[i]);
  }
  rep.param("eps", eps_list);
  rep.param("grid", std::to_string(cfg.grid));
  rep.param("seed", std::to_string(cfg.seed));
  rep.param("tol", format_double(cfg.tol));
  rep.param("check_logconvex", cfg.check_logconvex ? "true" : "false");
}

}  // namespace gbq
