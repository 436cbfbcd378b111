// Gauss-Kronrod 7-15 quadrature for complex integrands: an adaptive
// bisection driver for smooth integrands and a uniform composite driver for
// the oscillatory contour integrals.
#pragma once

#include <functional>

#include "lsdlab/core.hpp"

namespace lsd {

namespace detail {

// QUADPACK dqk15 nodes and weights.
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kGK15WeightsK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGK15WeightsG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
  Complex kronrod{0.0, 0.0};
  double err = 0.0;
};

template <typename F>
PanelResult gk15(const F& f, double a, double b) {
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  Complex fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kGK15Nodes[i]);
    fv[14 - i] = f(c + h * kGK15Nodes[i]);
  }
  fv[7] = f(c);
  Complex k{0.0, 0.0}, g{0.0, 0.0};
  for (int i = 0; i < 7; ++i) k += kGK15WeightsK[i] * (fv[i] + fv[14 - i]);
  k += kGK15WeightsK[7] * fv[7];
  for (int i = 0; i < 3; ++i) g += kGK15WeightsG[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  g += kGK15WeightsG[3] * fv[7];
  PanelResult r;
  r.kronrod = h * k;
  r.err = std::abs(h * (k - g));
  return r;
}

// Each subinterval gets an error budget proportional to its length, so
// refinement depth stays bounded: GK15 error falls like h^15 against a budget
// falling like h.
template <typename F>
Complex adaptive_rec(const F& f, double a, double b, double tol_per_unit, int depth) {
  auto r = gk15(f, a, b);
  if (r.err <= tol_per_unit * (b - a) || b - a < 1e-14 * (std::abs(a) + 1.0)) return r.kronrod;
  require(depth < 48, errc::quadrature_nonconvergence, "adaptive quadrature depth exceeded");
  double m = 0.5 * (a + b);
  return adaptive_rec(f, a, m, tol_per_unit, depth + 1) +
         adaptive_rec(f, m, b, tol_per_unit, depth + 1);
}

}  // namespace detail

// Smooth integrands; relative tolerance with an absolute floor.
template <typename F>
Complex integrate_adaptive(const F& f, double a, double b, double rel_tol, double abs_tol = 0.0) {
  if (a == b) return Complex{0.0, 0.0};
  auto first = detail::gk15(f, a, b);
  double tol = std::max(abs_tol, rel_tol * std::abs(first.kronrod));
  if (tol == 0.0) tol = abs_tol > 0.0 ? abs_tol : 1e-14;
  return checked(detail::adaptive_rec(f, a, b, tol / (b - a), 0), "integrate_adaptive");
}

// Oscillatory integrands with a known wavelength: uniform panels sized to the
// oscillation, retried at double resolution until the summed Kronrod-Gauss
// discrepancy meets the tolerance.
template <typename F>
Complex integrate_oscillatory(const F& f, double a, double b, double panel_width, double abs_tol) {
  require(b > a && panel_width > 0.0, errc::invalid_argument, "bad oscillatory integral bounds");
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::uint64_t n = static_cast<std::uint64_t>((b - a) / panel_width) + 1;
    const double h = (b - a) / double(n);
    // Panels are independent; sum in index order for determinism.
    const std::uint64_t chunk = 4096;
    const std::uint64_t nchunks = (n + chunk - 1) / chunk;
    std::vector<Complex> sums(nchunks, Complex{0.0, 0.0});
    std::vector<double> errs(nchunks, 0.0);
    parallel_for(nchunks, [&](std::size_t ci) {
      std::vector<Complex> vals;
      vals.reserve(chunk);
      double e = 0.0;
      std::uint64_t begin = ci * chunk, end = std::min(n, begin + chunk);
      for (std::uint64_t i = begin; i < end; ++i) {
        auto r = detail::gk15(f, a + double(i) * h, a + double(i + 1) * h);
        vals.push_back(r.kronrod);
        e += r.err;
      }
      sums[ci] = pairwise_sum(vals);
      errs[ci] = e;
    });
    Complex total = pairwise_sum(sums);
    double err = 0.0;
    for (double e : errs) err += e;
    if (err <= abs_tol) return checked(total, "integrate_oscillatory");
    panel_width *= 0.5;
  }
  fail(errc::quadrature_nonconvergence, "oscillatory quadrature did not reach tolerance");
}

}  // namespace lsd
