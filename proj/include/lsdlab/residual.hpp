// Residual records on a geometric grid and the log-log least-squares
// exponent fit. The regression runs on log|E/x| against log log x: the error
// terms under study are powers of log x.
#pragma once

#include <vector>

#include "lsdlab/core.hpp"

namespace lsd {

struct ResidualGrid {
  std::vector<std::uint64_t> grid;
  std::vector<Complex> residuals;
  std::vector<double> normalized;  // |E_i| (log x_i)^{-e_target} / x_i
  double e_target = 0.0;
  double spacing_ratio = 0.0;
};

inline ResidualGrid make_residual_grid(std::vector<std::uint64_t> grid, std::vector<Complex> residuals,
                                       double e_target) {
  require(grid.size() == residuals.size(), errc::length_mismatch,
          "residual grid and residual values differ in length");
  ResidualGrid r;
  r.grid = std::move(grid);
  r.residuals = std::move(residuals);
  r.e_target = e_target;
  r.normalized.reserve(r.grid.size());
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    double x = double(r.grid[i]);
    r.normalized.push_back(std::abs(r.residuals[i]) * std::pow(std::log(x), -e_target) / x);
  }
  if (r.grid.size() >= 2) r.spacing_ratio = double(r.grid[1]) / double(r.grid[0]);
  return r;
}

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;
  int points_used = 0;
  bool exact_vanishing = false;
};

namespace detail {

inline ExponentFit ols(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t n = t.size();
  double st = 0, sy = 0, stt = 0, sty = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    st += t[i];
    sy += y[i];
    stt += t[i] * t[i];
    sty += t[i] * y[i];
    syy += y[i] * y[i];
  }
  double den = double(n) * stt - st * st;
  require(std::abs(den) > 0.0, errc::degenerate_fit, "regression abscissae are degenerate");
  ExponentFit f;
  f.slope = (double(n) * sty - st * sy) / den;
  f.intercept = (sy - f.slope * st) / double(n);
  double ss_tot = syy - sy * sy / double(n);
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double e = y[i] - (f.intercept + f.slope * t[i]);
    ss_res += e * e;
  }
  f.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  f.points_used = static_cast<int>(n);
  return f;
}

}  // namespace detail

inline ExponentFit fit_error_exponent(const ResidualGrid& res) {
  std::vector<double> t, y;
  double x_min = 0.0, x_max = 0.0;
  for (std::size_t i = 0; i < res.grid.size(); ++i) {
    if (res.residuals[i] == Complex{0.0, 0.0}) continue;
    double x = double(res.grid[i]);
    t.push_back(std::log(std::log(x)));
    y.push_back(std::log(std::abs(res.residuals[i]) / x));
    if (x_min == 0.0) x_min = x;
    x_max = x;
  }
  if (t.empty() && !res.grid.empty()) {
    ExponentFit f;  // every residual vanished exactly; nothing to regress
    f.exact_vanishing = true;
    return f;
  }
  require(t.size() >= 5, errc::degenerate_fit,
          "exponent fit needs at least 5 nonzero residuals, got " + std::to_string(t.size()));
  ExponentFit f = detail::ols(t, y);
  f.x_min = x_min;
  f.x_max = x_max;
  return f;
}

// Fit restricted to grid points inside [x_lo, x_hi].
inline ExponentFit fit_error_exponent(const ResidualGrid& res, double x_lo, double x_hi) {
  ResidualGrid window;
  window.e_target = res.e_target;
  for (std::size_t i = 0; i < res.grid.size(); ++i) {
    double x = double(res.grid[i]);
    if (x < x_lo || x > x_hi) continue;
    window.grid.push_back(res.grid[i]);
    window.residuals.push_back(res.residuals[i]);
    window.normalized.push_back(res.normalized[i]);
  }
  return fit_error_exponent(window);
}

}  // namespace lsd
