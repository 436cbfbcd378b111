// Truncated complex Taylor arithmetic in t = s-1. This is the coefficient
// engine: everything downstream extracts expansion coefficients from products
// of exp/log/pow of these series.
#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "lsdlab/core.hpp"

namespace lsd {

// Orders beyond this are never needed (J <= 10 downstream) and keep
// Cauchy-product rounding growth negligible.
inline constexpr int kMaxSeriesOrder = 12;

class TruncatedSeries {
 public:
  explicit TruncatedSeries(int order) : c_(check_order(order) + 1, Complex{0.0, 0.0}) {}

  TruncatedSeries(std::initializer_list<Complex> coeffs) : c_(coeffs) {
    require(!c_.empty(), errc::invalid_argument, "series needs a constant term");
    check_order(static_cast<int>(c_.size()) - 1);
  }

  static TruncatedSeries constant(Complex a, int order) {
    TruncatedSeries s(order);
    s.c_[0] = a;
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  std::span<const Complex> coeffs() const { return c_; }
  Complex operator[](int j) const { return c_[static_cast<std::size_t>(j)]; }
  Complex& at(int j) { return c_[static_cast<std::size_t>(j)]; }

  void check_finite(const char* where) const {
    for (Complex z : c_) checked(z, where);
  }

 private:
  static int check_order(int order) {
    require(order >= 0 && order <= kMaxSeriesOrder, errc::order_too_large,
            "series order must be in [0, " + std::to_string(kMaxSeriesOrder) + "]");
    return order;
  }

  std::vector<Complex> c_;
};

// Arithmetic is closed under the smaller operand order.
inline TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  int n = std::min(a.order(), b.order());
  TruncatedSeries r(n);
  for (int j = 0; j <= n; ++j) r.at(j) = a[j] + b[j];
  r.check_finite("series_add");
  return r;
}

inline TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  int n = std::min(a.order(), b.order());
  TruncatedSeries r(n);
  for (int j = 0; j <= n; ++j) {
    Complex s{0.0, 0.0};
    for (int i = 0; i <= j; ++i) s += a[i] * b[j - i];
    r.at(j) = s;
  }
  r.check_finite("series_mul");
  return r;
}

// Principal-branch log via the standard recurrence b' * a = a'.
inline TruncatedSeries series_log(const TruncatedSeries& a) {
  Complex a0 = a[0];
  require(std::abs(a0) > 0.0, errc::zero_constant_term, "series_log at zero constant term");
  if (a0.real() < 0.0 && a0.imag() == 0.0)
    diag::warn("series_log: constant term on the negative real axis, principal branch taken");
  int n = a.order();
  TruncatedSeries b(n);
  b.at(0) = std::log(a0);
  for (int i = 1; i <= n; ++i) {
    Complex s = double(i) * a[i];
    for (int j = 1; j < i; ++j) s -= double(j) * b[j] * a[i - j];
    b.at(i) = s / (double(i) * a0);
  }
  b.check_finite("series_log");
  return b;
}

inline TruncatedSeries series_exp(const TruncatedSeries& a) {
  int n = a.order();
  TruncatedSeries b(n);
  b.at(0) = std::exp(a[0]);
  for (int i = 1; i <= n; ++i) {
    Complex s{0.0, 0.0};
    for (int j = 1; j <= i; ++j) s += double(j) * a[j] * b[i - j];
    b.at(i) = s / double(i);
  }
  b.check_finite("series_exp");
  return b;
}

inline TruncatedSeries series_pow(const TruncatedSeries& a, Complex w) {
  TruncatedSeries lg = series_log(a);
  for (int j = 0; j <= lg.order(); ++j) lg.at(j) *= w;
  return series_exp(lg);
}

// Stieltjes constants gamma_0..gamma_9, fixed at build time; the test suite
// re-derives them with an Euler-Maclaurin oracle.
inline constexpr double kStieltjes[10] = {
    0.57721566490153286061,   -0.072815845483676724861,  -0.0096903631928723184845,
    0.0020538344203033458662, 0.0023253700654673000575,  0.00079332381730106270175,
    -0.00023876934543019960987, -0.00052728956705775104607, -0.00035212335380303950960,
    -0.000034394774418088048178,
};

// Taylor series of (s-1)zeta(s) about s = 1: the t^0 coefficient is 1 and the
// t^(n+1) coefficient is (-1)^n gamma_n / n!.
inline TruncatedSeries zeta_shifted_series(int order) {
  require(order <= 10, errc::order_too_large,
          "zeta_shifted_series stores Stieltjes constants up to gamma_9 (order <= 10)");
  TruncatedSeries s(order);
  s.at(0) = Complex{1.0, 0.0};
  double factorial = 1.0;
  for (int n = 0; n + 1 <= order; ++n) {
    if (n > 0) factorial *= n;
    double sign = (n % 2 == 0) ? 1.0 : -1.0;
    s.at(n + 1) = Complex{sign * kStieltjes[n] / factorial, 0.0};
  }
  return s;
}

// 1/s = 1 - t + t^2 - ...
inline TruncatedSeries inverse_s_series(int order) {
  TruncatedSeries s(order);
  for (int j = 0; j <= order; ++j) s.at(j) = Complex{(j % 2 == 0) ? 1.0 : -1.0, 0.0};
  return s;
}

}  // namespace lsd
