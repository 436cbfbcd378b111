// Entire reciprocal gamma. Lanczos (g = 7, n = 9) for Re z >= 1/2, the
// reflection sin(pi z) Gamma(1-z) / pi below, and exact zeros at the
// nonpositive integers: the expansion machinery relies on terms being killed
// exactly, not merely damped.
#pragma once

#include "lsdlab/core.hpp"

namespace lsd {

namespace detail {

inline Complex gamma_lanczos(Complex z) {
  // Right half plane only (Re z >= 0.5).
  static const double g = 7.0;
  static const double coef[9] = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
  };
  Complex a{coef[0], 0.0};
  for (int i = 1; i < 9; ++i) a += coef[i] / (z + double(i - 1));
  Complex t = z + g - 0.5;
  return std::sqrt(2.0 * 3.14159265358979323846) * std::pow(t, z - 0.5) * std::exp(-t) * a;
}

// sin(pi z) with the integer part folded out; keeps accuracy near the zeros.
inline Complex sin_pi(Complex z) {
  double m = std::round(z.real());
  Complex w = z - m;
  Complex s = std::sin(3.14159265358979323846 * w);
  return (std::fmod(m, 2.0) == 0.0) ? s : -s;
}

}  // namespace detail

inline Complex reciprocal_gamma(Complex z) {
  // Snap to the pole zeros: within 1e-13 of 0, -1, -2, ...
  double r = std::round(z.real());
  if (r <= 0.0 && std::abs(z.real() - r) <= 1e-13 && std::abs(z.imag()) <= 1e-13)
    return Complex{0.0, 0.0};
  if (z.real() >= 0.5) return checked(1.0 / detail::gamma_lanczos(z), "reciprocal_gamma");
  // 1/Gamma(z) = sin(pi z) Gamma(1-z) / pi
  Complex one_minus = 1.0 - z;
  return checked(detail::sin_pi(z) * detail::gamma_lanczos(one_minus) / 3.14159265358979323846,
                 "reciprocal_gamma");
}

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace lsd
