// Expansion coefficients c_j, c~_j of (s-1)^alpha F(s) about s = 1, computed
// from the Euler product in the exact two-factor split
//
//   Q(s) = [ prod_p F_p(s) (1 - p^{-s})^alpha ] * [ (s-1) zeta(s) ]^alpha,
//
// so (s-1)^alpha is never formed on its own. The prime product is truncated
// at p <= P and the omitted mass is quantified in tail_estimate.
#pragma once

#include <limits>

#include "lsdlab/primes.hpp"
#include "lsdlab/rules.hpp"
#include "lsdlab/series.hpp"

namespace lsd {

struct ExpansionCoefficients {
  Complex alpha{0.0, 0.0};
  int J = 0;
  std::vector<Complex> c;        // Taylor coefficients of Q
  std::vector<Complex> c_tilde;  // Taylor coefficients of Q / s
  std::uint64_t prime_cutoff = 0;
  double tail_estimate = 0.0;
};

// Values of f at powers of p stop mattering below double resolution.
inline constexpr double kLocalNuFloor = 1e-17;

namespace detail {

// The nu cutoff has to keep every Taylor coefficient accurate, not just the
// constant term: the t^j coefficient of the nu term carries (nu log p)^j / j!,
// and |f(p^nu)| can grow polynomially. Truncate when the worst-case term over
// j <= order drops below 1e-18.
inline unsigned local_nu_cap(double p, double k_bound, int order) {
  const double logp = std::log(p);
  const double lfact = std::lgamma(double(order) + 1.0);
  for (unsigned nu = 1; nu < 120; ++nu) {
    double deriv = order > 0 ? double(order) * std::log(double(nu) * logp) - lfact : 0.0;
    double log_bound = -double(nu) * logp + std::max(0.0, deriv) +
                       (k_bound + 1.0) * std::log(double(nu) + 1.0);
    if (log_bound < std::log(1e-18)) return nu;
  }
  return 120;
}

}  // namespace detail

// Taylor series in t of log[ F_p(1+t) (1 - p^{-(1+t)})^alpha ], where
// F_p(s) = sum_nu f(p^nu) p^{-nu s}. The exponential p^{-nu(1+t)} is expanded
// exactly as p^{-nu} sum_j (-nu log p)^j t^j / j!.
inline TruncatedSeries local_factor_log_series(const PrimePowerRule& rule, std::uint64_t p,
                                               Complex alpha, int order) {
  const double logp = std::log(double(p));
  TruncatedSeries fp(order);
  fp.at(0) = Complex{1.0, 0.0};  // nu = 0 term
  double pnu = 1.0;
  Complex powers[128];
  unsigned nu_max = detail::local_nu_cap(double(p), rule.k_bound(), order);
  rule.prime_powers(p, nu_max, powers);
  for (unsigned nu = 1; nu <= nu_max; ++nu) {
    pnu /= double(p);
    Complex w = powers[nu] * pnu;
    if (w == Complex{0.0, 0.0}) continue;
    double cj = 1.0;  // (-nu log p)^j / j!
    fp.at(0) += w;
    for (int j = 1; j <= order; ++j) {
      cj *= -double(nu) * logp / double(j);
      fp.at(j) += w * cj;
    }
  }

  // (1 - p^{-(1+t)})^alpha
  TruncatedSeries euler(order);
  euler.at(0) = Complex{1.0 - 1.0 / double(p), 0.0};
  double cj = 1.0;
  for (int j = 1; j <= order; ++j) {
    cj *= -logp / double(j);
    euler.at(j) = Complex{-cj / double(p), 0.0};
  }

  TruncatedSeries prod = series_mul(fp, series_pow(euler, alpha));
  require(std::abs(prod[0] - Complex{1.0, 0.0}) < 1.0, errc::local_factor_out_of_range,
          "local factor at p = " + std::to_string(p) +
              " leaves the log-convergence disk; |f(p)| too large relative to p");
  return series_log(prod);
}

namespace detail {

// Analytic continuation of the prime sum past P for rules with an exact
// deviation law f(p) - alpha = amp (log p)^{-A}: by the prime number theorem
//   sum_{p>P} (log p)^{j-A} / p = (log P)^{j-A} / (A-j) + O((log P)^{j-A-2}),
// so the t^j coefficient of the omitted log-mass is amp (-1)^j/j! times that.
// Without this, the coefficients of the slow-deviation families converge like
// (log P)^{-A} and are unusable at any feasible cutoff.
inline TruncatedSeries deviation_tail_series(const DeviationModel& dev, std::uint64_t P, int order) {
  TruncatedSeries t(order);
  const double logP = std::log(double(P));
  double inv_fact = 1.0;
  for (int j = 0; j <= order; ++j) {
    if (j > 0) inv_fact /= double(j);
    if (double(j) < dev.big_a) {
      double sign = (j % 2 == 0) ? 1.0 : -1.0;
      t.at(j) = dev.amplitude * sign * inv_fact * std::pow(logP, double(j) - dev.big_a) /
                (dev.big_a - double(j));
    }
  }
  return t;
}

inline double tail_estimate_for(const PrimePowerRule& rule, int J, std::uint64_t P) {
  // A pure tau_alpha rule has identically-vanishing local factors: truncation
  // contributes rounding noise only.
  if (rule.kind() == RuleKind::tau_alpha) return 1e-12;
  const double logP = std::log(double(P));
  const double k = std::max(rule.k_bound(), 1.0);
  // nu >= 2 contributions past P, uncorrected for every model
  double second_order = (k + 1.0) * (k + 1.0) *
                        (J >= 1 ? std::pow(logP, double(J - 1)) : 1.0 / logP) / double(P);
  const auto& dev = rule.deviation();
  switch (dev.kind) {
    case DeviationModel::Kind::exact_zero:
      return second_order;
    case DeviationModel::Kind::power_log: {
      if (double(J) >= dev.big_a) return std::numeric_limits<double>::infinity();
      // residue of the PNT-corrected tail; the continuation above removes the
      // leading (log P)^{J-A} term
      double corrected = 3.0 * std::abs(dev.amplitude) * std::pow(logP, double(J) - dev.big_a - 2.0);
      return corrected + second_order;
    }
    case DeviationModel::Kind::unknown:
      return 2.0 * k / logP + second_order;
  }
  return second_order;
}

}  // namespace detail

inline ExpansionCoefficients compute_expansion(const PrimePowerRule& rule, Complex alpha, int J,
                                               std::uint64_t P) {
  require(J >= 0 && J <= 10, errc::order_too_large, "compute_expansion needs 0 <= J <= 10");
  require(P >= 100, errc::invalid_argument, "prime cutoff P must be >= 100");

  const auto primes = primes_up_to(P);
  const std::size_t block = 8192;
  const std::size_t nblocks = (primes.size() + block - 1) / block;
  std::vector<TruncatedSeries> partial(nblocks, TruncatedSeries(J));
  parallel_for(nblocks, [&](std::size_t b) {
    TruncatedSeries acc(J);
    std::size_t begin = b * block;
    std::size_t end = std::min(primes.size(), begin + block);
    for (std::size_t i = begin; i < end; ++i)
      acc = series_add(acc, local_factor_log_series(rule, primes[i], alpha, J));
    partial[b] = acc;
  });
  TruncatedSeries log_q(J);
  for (std::size_t b = 0; b < nblocks; ++b) log_q = series_add(log_q, partial[b]);

  if (rule.deviation().kind == DeviationModel::Kind::power_log &&
      double(J) < rule.deviation().big_a)
    log_q = series_add(log_q, detail::deviation_tail_series(rule.deviation(), P, J));

  TruncatedSeries q = series_mul(series_exp(log_q), series_pow(zeta_shifted_series(J), alpha));
  TruncatedSeries q_tilde = series_mul(q, inverse_s_series(J));

  ExpansionCoefficients out;
  out.alpha = alpha;
  out.J = J;
  out.prime_cutoff = P;
  out.c.assign(q.coeffs().begin(), q.coeffs().end());
  out.c_tilde.assign(q_tilde.coeffs().begin(), q_tilde.coeffs().end());
  out.tail_estimate = detail::tail_estimate_for(rule, J, P);
  return out;
}

// Independent route to c_0 = prod_p (1 + f(p)/p + f(p^2)/p^2 + ...)(1 - 1/p)^alpha,
// used as a cross-check on the series pipeline.
inline Complex c0_direct_product(const PrimePowerRule& rule, Complex alpha, std::uint64_t P) {
  require(P >= 100, errc::invalid_argument, "prime cutoff P must be >= 100");
  Complex prod{1.0, 0.0};
  Complex powers[72];
  for_each_prime(2, P, [&](std::uint64_t p) {
    unsigned nu_max = 0;
    double q = 1.0;
    while (q * (1.0 / double(p)) >= kLocalNuFloor && nu_max + 1 < 72) {
      q /= double(p);
      ++nu_max;
    }
    rule.prime_powers(p, nu_max, powers);
    Complex local{1.0, 0.0};
    double pnu = 1.0;
    for (unsigned nu = 1; nu <= nu_max; ++nu) {
      pnu /= double(p);
      local += powers[nu] * pnu;
    }
    prod *= local * std::pow(Complex{1.0 - 1.0 / double(p), 0.0}, alpha);
  });
  return checked(prod, "c0_direct_product");
}

}  // namespace lsd
