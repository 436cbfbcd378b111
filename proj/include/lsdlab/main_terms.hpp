// Main terms of the asymptotic expansion, in point form
//   x sum_j c~_j (log x)^{alpha-j-1} / Gamma(alpha-j)
// and integral form
//   int_2^x sum_j c_j (log y)^{alpha-j-1} / Gamma(alpha-j) dy,
// plus the comparison function g(y) and the checkpointed sums of d = f - g.
// Terms with alpha - j a nonpositive integer vanish through 1/Gamma.
#pragma once

#include "lsdlab/expansion.hpp"
#include "lsdlab/gamma.hpp"
#include "lsdlab/quadrature.hpp"
#include "lsdlab/sieve.hpp"

namespace lsd {

enum class MainTermForm { point, integral };

struct MainTermSpec {
  ExpansionCoefficients coeffs;
  MainTermForm form = MainTermForm::point;
};

// (log x)^w for log x > 0, principal branch through the real log log x.
inline Complex log_power(double logx, Complex w) {
  return std::exp(w * std::log(logx));
}

inline Complex main_term_point(const ExpansionCoefficients& coeffs, double x) {
  require(x > 2.718281828459045235, errc::domain_too_small,
          "main_term_point needs x > e so that log log x > 0");
  const double logx = std::log(x);
  Complex s{0.0, 0.0};
  for (int j = 0; j <= coeffs.J; ++j) {
    Complex rg = reciprocal_gamma(coeffs.alpha - double(j));
    if (rg == Complex{0.0, 0.0}) continue;
    s += coeffs.c_tilde[j] * log_power(logx, coeffs.alpha - double(j) - 1.0) * rg;
  }
  return checked(x * s, "main_term_point");
}

inline Complex main_term_integral(const ExpansionCoefficients& coeffs, double x) {
  require(x >= 2.0, errc::domain_too_small, "main_term_integral needs x >= 2");
  if (x == 2.0) return Complex{0.0, 0.0};
  // substitute u = log y: integrand sum_j c_j u^{alpha-j-1} e^u / Gamma(alpha-j)
  struct Term {
    Complex weight;
    Complex exponent;
  };
  std::vector<Term> terms;
  for (int j = 0; j <= coeffs.J; ++j) {
    Complex rg = reciprocal_gamma(coeffs.alpha - double(j));
    if (rg == Complex{0.0, 0.0}) continue;
    terms.push_back({coeffs.c[j] * rg, coeffs.alpha - double(j) - 1.0});
  }
  if (terms.empty()) return Complex{0.0, 0.0};
  auto integrand = [&](double u) {
    Complex s{0.0, 0.0};
    for (const auto& t : terms) s += t.weight * std::exp(t.exponent * std::log(u));
    return s * std::exp(u);
  };
  return integrate_adaptive(integrand, std::log(2.0), std::log(x), 1e-10);
}

inline Complex main_term(const MainTermSpec& spec, double x) {
  return spec.form == MainTermForm::point ? main_term_point(spec.coeffs, x)
                                          : main_term_integral(spec.coeffs, x);
}

// g(y) = 1_{y>1} sum_j c_j / Gamma(alpha-j) (log y)^{alpha-1-j}
inline Complex comparison_g(const ExpansionCoefficients& coeffs, double y) {
  require(y > 0.0, errc::invalid_argument, "comparison_g needs y > 0");
  if (y <= 1.0) return Complex{0.0, 0.0};
  const double logy = std::log(y);
  Complex s{0.0, 0.0};
  for (int j = 0; j <= coeffs.J; ++j) {
    Complex rg = reciprocal_gamma(coeffs.alpha - double(j));
    if (rg == Complex{0.0, 0.0}) continue;
    s += coeffs.c[j] * rg * log_power(logy, coeffs.alpha - 1.0 - double(j));
  }
  return checked(s, "comparison_g");
}

// Checkpointed sums of d(n) = f(n) - g(n); the error-exponent fitter runs on
// these.
inline PartialSumCheckpoints d_partial_sums(const PrimePowerRule& rule,
                                            const ExpansionCoefficients& coeffs,
                                            const std::vector<std::uint64_t>& grid) {
  return accumulate_checkpoints(rule, grid, [&coeffs](std::uint64_t n, Complex f, bool) {
    return f - comparison_g(coeffs, double(n));
  });
}

}  // namespace lsd
