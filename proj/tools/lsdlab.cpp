// Command-line front end: every experiment behind a subcommand, plain-text
// config manifests, flag overrides, CSV/JSON output with a full config echo.
// Exit codes: 0 ok, 2 invalid config or precondition, 3 budget exceeded.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "lsdlab/config.hpp"
#include "lsdlab/io.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::optional<std::string> preset;
  std::optional<double> alpha_re, alpha_im, big_a, k, eps, grid_ratio;
  std::optional<std::uint64_t> grid_start, prime_cutoff, seed;
  std::optional<int> grid_count, order_j;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
};

void attach_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "config manifest (key/value sections)");
  cmd->add_option("--preset", o.preset, "tau_alpha | squarefree | counterexample");
  cmd->add_option("--alpha-re", o.alpha_re, "Re alpha");
  cmd->add_option("--alpha-im", o.alpha_im, "Im alpha");
  cmd->add_option("--big-a", o.big_a, "hypothesis exponent A");
  cmd->add_option("--k", o.k, "divisor bound parameter k");
  cmd->add_option("--eps", o.eps, "epsilon of the optimality construction");
  cmd->add_option("--grid-start", o.grid_start, "first grid point");
  cmd->add_option("--grid-ratio", o.grid_ratio, "geometric grid ratio");
  cmd->add_option("--grid-count", o.grid_count, "number of grid points");
  cmd->add_option("--order-j", o.order_j, "expansion truncation J");
  cmd->add_option("--prime-cutoff", o.prime_cutoff, "Euler product cutoff P");
  cmd->add_option("--out", o.out, "output path (default stdout)");
  cmd->add_option("--seed", o.seed, "seed echoed into outputs");
  cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
}

lsd::RunConfig resolve(const CommonOpts& o) {
  lsd::RunConfig cfg;
  if (!o.config_path.empty()) cfg = lsd::parse_config_file(o.config_path);
  if (o.preset) cfg.preset = *o.preset;
  if (o.alpha_re) cfg.alpha_re = *o.alpha_re;
  if (o.alpha_im) cfg.alpha_im = *o.alpha_im;
  if (o.big_a) cfg.big_a = *o.big_a;
  if (o.k) cfg.k = *o.k;
  if (o.eps) cfg.eps = *o.eps;
  if (o.grid_start) cfg.grid_start = *o.grid_start;
  if (o.grid_ratio) cfg.grid_ratio = *o.grid_ratio;
  if (o.grid_count) cfg.grid_count = *o.grid_count;
  if (o.order_j) cfg.order_j = *o.order_j;
  if (o.prime_cutoff) cfg.prime_cutoff = *o.prime_cutoff;
  if (o.out) cfg.out_path = *o.out;
  if (o.seed) cfg.seed = *o.seed;

  // env var wins over the flag
  if (const char* env = std::getenv("LSDLAB_THREADS")) {
    lsd::set_threads(unsigned(std::strtoul(env, nullptr, 10)));
  } else if (o.threads) {
    lsd::set_threads(*o.threads);
  }
  return cfg;
}

nlohmann::json config_json(const lsd::RunConfig& cfg) {
  return nlohmann::json{{"function.name", cfg.name},
                        {"function.preset", cfg.preset},
                        {"function.alpha_re", cfg.alpha_re},
                        {"function.alpha_im", cfg.alpha_im},
                        {"function.big_a", cfg.big_a},
                        {"function.k", cfg.k},
                        {"function.eps", cfg.eps},
                        {"grid.start", cfg.grid_start},
                        {"grid.ratio", cfg.grid_ratio},
                        {"grid.count", cfg.grid_count},
                        {"expansion.order_j", cfg.order_j},
                        {"expansion.prime_cutoff", cfg.prime_cutoff},
                        {"output.path", cfg.out_path},
                        {"output.seed", cfg.seed}};
}

// stdout or the configured file
class OutputTarget {
 public:
  explicit OutputTarget(const lsd::RunConfig& cfg) {
    if (!cfg.out_path.empty()) {
      file_.open(cfg.out_path, std::ios::binary);  // fixed newlines on every platform
      lsd::require(file_.good(), lsd::errc::invalid_argument,
                   "cannot open output path '" + cfg.out_path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void drain_warnings() {
  for (const auto& w : lsd::diag::drain()) std::cerr << "warning: " << w << "\n";
}

int cmd_expand(const CommonOpts& o) {
  auto cfg = resolve(o);
  auto rule = lsd::make_rule(cfg);
  auto coeffs = lsd::compute_expansion(rule, cfg.alpha(), cfg.order_j, cfg.prime_cutoff);

  OutputTarget target(cfg);
  std::ostream& os = target.stream();
  lsd::write_config_echo(os, cfg, "expand");
  os << "# tail_estimate = " << lsd::format_double(coeffs.tail_estimate) << "\n";
  lsd::CsvWriter w(os);
  w.header({"j", "re_c", "im_c", "re_c_tilde", "im_c_tilde"});
  for (int j = 0; j <= coeffs.J; ++j) {
    w.field(std::uint64_t(j)).field(coeffs.c[j]).field(coeffs.c_tilde[j]);
    w.end_row();
  }
  drain_warnings();
  return 0;
}

int cmd_compare(const CommonOpts& o) {
  auto cfg = resolve(o);
  auto rule = lsd::make_rule(cfg);
  auto grid = lsd::make_grid(cfg);
  auto coeffs = lsd::compute_expansion(rule, cfg.alpha(), cfg.order_j, cfg.prime_cutoff);
  auto sums = lsd::streamed_partial_sums(rule, grid);
  const double e_target = lsd::default_e_target(cfg);

  OutputTarget target(cfg);
  std::ostream& os = target.stream();
  lsd::write_config_echo(os, cfg, "compare");
  os << "# e_target = " << lsd::format_double(e_target) << "\n";
  os << "# tail_estimate = " << lsd::format_double(coeffs.tail_estimate) << "\n";
  lsd::CsvWriter w(os);
  w.header({"x", "re_sum", "im_sum", "re_main_point", "im_main_point", "re_main_integral",
            "im_main_integral", "re_residual", "im_residual", "normalized"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double x = double(grid[i]);
    lsd::Complex point = lsd::main_term_point(coeffs, x);
    lsd::Complex integral = lsd::main_term_integral(coeffs, x);
    lsd::Complex residual = sums.sums[i] - point;
    double normalized = std::abs(residual) * std::pow(std::log(x), -e_target) / x;
    w.field(grid[i]).field(sums.sums[i]).field(point).field(integral).field(residual);
    w.field(normalized);
    w.end_row();
  }
  drain_warnings();
  return 0;
}

// minimal CSV reader for fit --in: finds x / re_residual / im_residual columns
lsd::ResidualGrid read_residual_csv(const std::string& path, double e_target) {
  std::ifstream in(path);
  lsd::require(in.good(), lsd::errc::invalid_argument, "cannot open input CSV '" + path + "'");
  std::string line;
  std::vector<std::string> header;
  std::vector<std::uint64_t> grid;
  std::vector<lsd::Complex> residuals;
  int xi = -1, ri = -1, ii = -1;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = s.find(',', start);
      out.push_back(s.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto cells = split(line);
    if (header.empty()) {
      header = cells;
      for (int c = 0; c < int(cells.size()); ++c) {
        if (cells[c] == "x") xi = c;
        if (cells[c] == "re_residual") ri = c;
        if (cells[c] == "im_residual") ii = c;
      }
      lsd::require(xi >= 0 && ri >= 0, lsd::errc::invalid_argument,
                   "input CSV needs 'x' and 're_residual' columns");
      continue;
    }
    lsd::require(int(cells.size()) > std::max(ri, std::max(xi, ii)), lsd::errc::invalid_argument,
                 "short CSV row");
    grid.push_back(std::strtoull(cells[xi].c_str(), nullptr, 10));
    double re = std::strtod(cells[ri].c_str(), nullptr);
    double im = ii >= 0 ? std::strtod(cells[ii].c_str(), nullptr) : 0.0;
    residuals.push_back({re, im});
  }
  return lsd::make_residual_grid(std::move(grid), std::move(residuals), e_target);
}

int cmd_fit(const CommonOpts& o, const std::string& in_path) {
  auto cfg = resolve(o);
  lsd::ResidualGrid res;
  if (!in_path.empty()) {
    res = read_residual_csv(in_path, lsd::default_e_target(cfg));
  } else {
    auto rule = lsd::make_rule(cfg);
    auto grid = lsd::make_grid(cfg);
    auto coeffs = lsd::compute_expansion(rule, cfg.alpha(), cfg.order_j, cfg.prime_cutoff);
    auto sums = lsd::streamed_partial_sums(rule, grid);
    std::vector<lsd::Complex> residuals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
      residuals[i] = sums.sums[i] - lsd::main_term_point(coeffs, double(grid[i]));
    res = lsd::make_residual_grid(grid, std::move(residuals), lsd::default_e_target(cfg));
  }
  auto fit = lsd::fit_error_exponent(res);

  nlohmann::json j{{"slope", fit.slope},
                   {"intercept", fit.intercept},
                   {"r_squared", fit.r_squared},
                   {"x_min", fit.x_min},
                   {"x_max", fit.x_max},
                   {"points_used", fit.points_used},
                   {"exact_vanishing", fit.exact_vanishing},
                   {"e_target", res.e_target},
                   {"config", config_json(cfg)}};
  OutputTarget target(cfg);
  target.stream() << j.dump(2) << "\n";
  drain_warnings();
  return 0;
}

int cmd_hankel(const CommonOpts& o, double z_re, double z_im, double x, double c,
               double tail_target, double big_t) {
  auto cfg = resolve(o);
  lsd::Complex z{z_re, z_im};
  double T = big_t > 0.0 ? big_t : lsd::hankel_truncation_for(z, x, c, tail_target);
  auto r = lsd::hankel_check(z, x, c, T);
  nlohmann::json j{{"z_re", z_re},
                   {"z_im", z_im},
                   {"x", x},
                   {"c", c},
                   {"T", T},
                   {"lhs_re", r.lhs.real()},
                   {"lhs_im", r.lhs.imag()},
                   {"rhs_re", r.rhs.real()},
                   {"rhs_im", r.rhs.imag()},
                   {"abs_diff", std::abs(r.lhs - r.rhs)},
                   {"tail_bound", r.tail_bound},
                   {"config", config_json(cfg)}};
  OutputTarget target(cfg);
  target.stream() << j.dump(2) << "\n";
  drain_warnings();
  return 0;
}

int cmd_probe(const CommonOpts& o) {
  auto cfg = resolve(o);
  auto rule = lsd::make_rule(cfg);
  auto grid = lsd::make_grid(cfg);
  double k = lsd::effective_k(cfg, rule);
  auto rep = lsd::averaged_condition_probes(rule, k, grid);

  // seeded multiplicativity spot check on a dense prefix of the table
  bool spot_ok;
  {
    auto table = lsd::sieve_multiplicative(rule, std::min<std::uint64_t>(grid.back(), 100'000));
    spot_ok = lsd::multiplicativity_spot_check(table, cfg.seed);
  }

  OutputTarget target(cfg);
  std::ostream& os = target.stream();
  lsd::write_config_echo(os, cfg, "probe");
  os << "# rf_growth_slope = " << lsd::format_double(rep.rf_growth.slope) << "\n";
  os << "# fitted_delta = " << lsd::format_double(rep.fitted_delta) << "\n";
  os << "# probe1_bounded = " << (rep.probe1_bounded ? 1 : 0) << "\n";
  os << "# multiplicativity_spot_check = " << (spot_ok ? "pass" : "FAIL") << "\n";
  lsd::CsvWriter w(os);
  w.header({"x", "prime_power_abs_minus_kloglog", "prime_logp_over_logx",
            "prime_power_sq_over_logx", "rf_log_ratio"});
  for (std::size_t i = 0; i < rep.grid.size(); ++i) {
    w.field(rep.grid[i])
        .field(rep.prime_power_abs[i])
        .field(rep.prime_log_ratio[i])
        .field(rep.prime_power_sq_ratio[i])
        .field(rep.rf_log_ratio[i]);
    w.end_row();
  }
  drain_warnings();
  return 0;
}

int cmd_hypothesis(const CommonOpts& o) {
  auto cfg = resolve(o);
  lsd::require(cfg.big_a > 0.0, lsd::errc::invalid_argument,
               "hypothesis check needs a declared big_a > 0");
  auto rule = lsd::make_rule(cfg);
  auto grid = lsd::make_grid(cfg);
  auto res = lsd::hypothesis_deviation(rule, cfg.alpha(), cfg.big_a, grid);

  OutputTarget target(cfg);
  std::ostream& os = target.stream();
  lsd::write_config_echo(os, cfg, "hypothesis");
  os << "# e_target = " << lsd::format_double(res.e_target) << "\n";
  lsd::CsvWriter w(os);
  w.header({"x", "re_deviation", "im_deviation", "normalized"});
  for (std::size_t i = 0; i < res.grid.size(); ++i) {
    w.field(res.grid[i]).field(res.residuals[i]).field(res.normalized[i]);
    w.end_row();
  }
  drain_warnings();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for partial sums of multiplicative functions"};
  app.require_subcommand(1);

  CommonOpts expand_o, compare_o, fit_o, hankel_o, probe_o, hypothesis_o;
  std::string fit_in;
  double hz_re = 2.0, hz_im = 0.0, hx = 3.0, hc = 1.25, htail = 1e-8, hT = 0.0;

  attach_common(app.add_subcommand("expand", "expansion coefficients c_j, c~_j"), expand_o);
  attach_common(app.add_subcommand("compare", "partial sums vs main terms, CSV"), compare_o);
  auto* fit_cmd = app.add_subcommand("fit", "error-exponent fit, JSON");
  attach_common(fit_cmd, fit_o);
  fit_cmd->add_option("--in", fit_in, "residual CSV produced by compare");
  auto* hankel_cmd = app.add_subcommand("hankel", "smoothed Hankel identity check");
  attach_common(hankel_cmd, hankel_o);
  hankel_cmd->add_option("--z-re", hz_re, "Re z");
  hankel_cmd->add_option("--z-im", hz_im, "Im z");
  hankel_cmd->add_option("--x", hx, "evaluation point x > 1");
  hankel_cmd->add_option("--c", hc, "contour abscissa c > 1");
  hankel_cmd->add_option("--tail-target", htail, "choose T so the tail bound meets this");
  hankel_cmd->add_option("--big-t", hT, "explicit truncation T (overrides --tail-target)");
  attach_common(app.add_subcommand("probe", "averaged growth-condition probes"), probe_o);
  attach_common(app.add_subcommand("hypothesis", "prime-sum hypothesis deviation"), hypothesis_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("expand")) return cmd_expand(expand_o);
    if (app.got_subcommand("compare")) return cmd_compare(compare_o);
    if (app.got_subcommand("fit")) return cmd_fit(fit_o, fit_in);
    if (app.got_subcommand("hankel")) return cmd_hankel(hankel_o, hz_re, hz_im, hx, hc, htail, hT);
    if (app.got_subcommand("probe")) return cmd_probe(probe_o);
    if (app.got_subcommand("hypothesis")) return cmd_hypothesis(hypothesis_o);
  } catch (const lsd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_budget() ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
