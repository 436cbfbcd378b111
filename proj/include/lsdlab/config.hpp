// Run configuration: a plain-text key/value manifest with sections, every
// value overridable from the command line. The full config is echoed into
// output metadata so runs can be reproduced from their artifacts.
//
// Schema (all keys optional, defaults shown in README):
//   [function]   name, kind (alias: preset), alpha_re, alpha_im, big_a,
//                k_bound (alias: k), eps
//   [grid]       start, ratio, count
//   [expansion]  order_j, prime_cutoff
//   [output]     path, seed
#pragma once

#include <fstream>
#include <sstream>

#include "lsdlab/experiments.hpp"

namespace lsd {

struct RunConfig {
  std::string name;  // free-form label, echoed into outputs
  std::string preset = "tau_alpha";
  double alpha_re = 1.0;
  double alpha_im = 0.0;
  double big_a = 0.0;  // 0 = undeclared
  double k = 0.0;      // 0 = derive from the rule
  double eps = 0.5;
  std::uint64_t grid_start = 1000;
  double grid_ratio = 2.0;
  int grid_count = 14;
  int order_j = 1;
  std::uint64_t prime_cutoff = 1'000'000;
  std::string out_path;
  std::uint64_t seed = 1;

  Complex alpha() const { return Complex{alpha_re, alpha_im}; }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    require(pos == v.size(), errc::invalid_argument, "trailing junk in value for " + key);
    return d;
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail(errc::invalid_argument, "cannot parse number for key " + key + ": '" + v + "'");
  }
}

inline std::uint64_t parse_u64(const std::string& v, const std::string& key) {
  double d = parse_double(v, key);
  require(d >= 0 && d <= 1.8e18 && d == std::floor(d), errc::invalid_argument,
          "key " + key + " needs a nonnegative integer, got '" + v + "'");
  return static_cast<std::uint64_t>(d);
}

}  // namespace detail

inline void apply_config_key(RunConfig& cfg, const std::string& section, const std::string& key,
                             const std::string& value) {
  using detail::parse_double;
  using detail::parse_u64;
  const std::string q = section.empty() ? key : section + "." + key;
  if (q == "function.preset" || q == "function.kind") cfg.preset = value;
  else if (q == "function.name") cfg.name = value;
  else if (q == "function.alpha_re") cfg.alpha_re = parse_double(value, q);
  else if (q == "function.alpha_im") cfg.alpha_im = parse_double(value, q);
  else if (q == "function.big_a") cfg.big_a = parse_double(value, q);
  else if (q == "function.k" || q == "function.k_bound") cfg.k = parse_double(value, q);
  else if (q == "function.eps") cfg.eps = parse_double(value, q);
  else if (q == "grid.start") cfg.grid_start = parse_u64(value, q);
  else if (q == "grid.ratio") cfg.grid_ratio = parse_double(value, q);
  else if (q == "grid.count") cfg.grid_count = static_cast<int>(parse_u64(value, q));
  else if (q == "expansion.order_j") cfg.order_j = static_cast<int>(parse_u64(value, q));
  else if (q == "expansion.prime_cutoff") cfg.prime_cutoff = parse_u64(value, q);
  else if (q == "output.path") cfg.out_path = value;
  else if (q == "output.seed") cfg.seed = parse_u64(value, q);
  else fail(errc::invalid_argument, "unknown config key '" + q + "'");
}

inline RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = detail::trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      require(s.back() == ']', errc::invalid_argument,
              "malformed section header at line " + std::to_string(lineno));
      section = detail::trim(s.substr(1, s.size() - 2));
      continue;
    }
    std::size_t eq = s.find('=');
    require(eq != std::string::npos, errc::invalid_argument,
            "expected key = value at line " + std::to_string(lineno));
    std::string key = detail::trim(s.substr(0, eq));
    std::string value = detail::trim(s.substr(eq + 1));
    std::size_t hash = value.find(" #");
    if (hash != std::string::npos) value = detail::trim(value.substr(0, hash));
    apply_config_key(cfg, section, key, value);
  }
  return cfg;
}

inline RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::invalid_argument, "cannot open config file '" + path + "'");
  return parse_config(in);
}

inline std::vector<std::uint64_t> make_grid(const RunConfig& cfg) {
  require(cfg.grid_start >= 2, errc::invalid_argument, "grid.start must be >= 2");
  require(cfg.grid_ratio > 1.0, errc::invalid_argument, "grid.ratio must be > 1");
  require(cfg.grid_count >= 1, errc::invalid_argument, "grid.count must be >= 1");
  std::vector<std::uint64_t> grid;
  double x = double(cfg.grid_start);
  for (int i = 0; i < cfg.grid_count; ++i) {
    auto xi = static_cast<std::uint64_t>(x + 0.5);
    if (grid.empty() || xi > grid.back()) grid.push_back(xi);
    x *= cfg.grid_ratio;
  }
  return grid;
}

inline PrimePowerRule make_rule(const RunConfig& cfg) {
  if (cfg.preset == "tau_alpha") return PrimePowerRule::tau_alpha(cfg.alpha());
  if (cfg.preset == "squarefree") return PrimePowerRule::squarefree();
  if (cfg.preset == "counterexample") {
    require(cfg.big_a > 0.0, errc::invalid_argument, "counterexample preset needs big_a > 0");
    return counterexample_rule(cfg.alpha(), cfg.big_a, cfg.eps);
  }
  fail(errc::invalid_argument, "unknown preset '" + cfg.preset +
                                   "' (expected tau_alpha, squarefree or counterexample)");
}

// k to use in normalizations: declared, or derived from the rule.
inline double effective_k(const RunConfig& cfg, const PrimePowerRule& rule) {
  return cfg.k > 0.0 ? cfg.k : std::max(rule.k_bound(), 1e-12);
}

// Normalization exponent for compare runs: the theorem's error scale when A
// is declared, the next omitted main-term order otherwise.
inline double default_e_target(const RunConfig& cfg) {
  if (cfg.big_a > 0.0) return cfg.alpha_re - 1.0 - cfg.big_a;
  return cfg.alpha_re - double(cfg.order_j) - 2.0;
}

}  // namespace lsd
