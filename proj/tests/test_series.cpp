#include <random>

#include "doctest.h"
#include "lsdlab/series.hpp"
#include "oracles.hpp"

using lsd::Complex;
using lsd::TruncatedSeries;

namespace {

double max_coeff_err(const TruncatedSeries& a, const TruncatedSeries& b) {
  double m = 0.0;
  int n = std::min(a.order(), b.order());
  for (int j = 0; j <= n; ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

TruncatedSeries random_series(std::mt19937_64& rng, int order, double c0_lo, double c0_hi) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> mag(c0_lo, c0_hi);
  TruncatedSeries s(order);
  double m = mag(rng);
  double ph = u(rng) * 3.0;
  s.at(0) = Complex{m * std::cos(ph), m * std::sin(ph)};
  for (int j = 1; j <= order; ++j) s.at(j) = Complex{u(rng), u(rng)};
  return s;
}

}  // namespace

TEST_CASE("series: add is componentwise with truncation to min order") {
  TruncatedSeries a{Complex{1, 0}, Complex{2, 0}};
  TruncatedSeries b{Complex{3, 0}, Complex{4, 0}};
  auto r = lsd::series_add(a, b);
  CHECK(r.order() == 1);
  CHECK(r[0] == Complex{4, 0});
  CHECK(r[1] == Complex{6, 0});

  TruncatedSeries s{Complex{1, 0}, Complex{1, 0}, Complex{1, 0}};
  auto id = lsd::series_add(s, TruncatedSeries(2));  // S + 0
  CHECK(max_coeff_err(id, s) == 0.0);

  TruncatedSeries t{Complex{1, 0}, Complex{-1, 0}};
  auto u = lsd::series_add(s, t);
  CHECK(u.order() == 1);
  CHECK(u[0] == Complex{2, 0});
  CHECK(u[1] == Complex{0, 0});
}

TEST_CASE("series: mul is the truncated Cauchy product") {
  TruncatedSeries one_plus{Complex{1, 0}, Complex{1, 0}, Complex{0, 0}};
  TruncatedSeries one_minus{Complex{1, 0}, Complex{-1, 0}, Complex{0, 0}};
  auto r = lsd::series_mul(one_plus, one_minus);
  CHECK(r[0] == Complex{1, 0});
  CHECK(r[1] == Complex{0, 0});
  CHECK(r[2] == Complex{-1, 0});

  TruncatedSeries t{Complex{0, 0}, Complex{1, 0}, Complex{0, 0}, Complex{0, 0}};
  auto t2 = lsd::series_mul(t, t);
  CHECK(t2[0] == Complex{0, 0});
  CHECK(t2[1] == Complex{0, 0});
  CHECK(t2[2] == Complex{1, 0});
  CHECK(t2[3] == Complex{0, 0});

  std::mt19937_64 rng(7);
  auto s = random_series(rng, 6, 0.5, 2.0);
  auto sid = lsd::series_mul(s, TruncatedSeries::constant(Complex{1, 0}, 6));
  CHECK(max_coeff_err(sid, s) == 0.0);
}

TEST_CASE("series: mul commutes and associates at fixed order") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_series(rng, 8, 0.5, 2.0);
    auto b = random_series(rng, 8, 0.5, 2.0);
    auto c = random_series(rng, 8, 0.5, 2.0);
    CHECK(max_coeff_err(lsd::series_mul(a, b), lsd::series_mul(b, a)) <= 1e-13);
    CHECK(max_coeff_err(lsd::series_mul(lsd::series_mul(a, b), c),
                        lsd::series_mul(a, lsd::series_mul(b, c))) <= 1e-13);
  }
}

TEST_CASE("series: log reproduces the Mercator series and the scale rule") {
  TruncatedSeries a{Complex{1, 0}, Complex{1, 0}, Complex{0, 0}, Complex{0, 0}};
  auto r = lsd::series_log(a);
  CHECK(std::abs(r[0]) <= 1e-15);
  CHECK(std::abs(r[1] - Complex{1, 0}) <= 1e-15);
  CHECK(std::abs(r[2] - Complex{-0.5, 0}) <= 1e-15);
  CHECK(std::abs(r[3] - Complex{1.0 / 3.0, 0}) <= 1e-15);

  // log(2(1+t)): constant shifts by log 2, higher terms via the termwise oracle
  TruncatedSeries b{Complex{2, 0}, Complex{2, 0}, Complex{0, 0}, Complex{0, 0}};
  auto rb = lsd::series_log(b);
  CHECK(std::abs(rb[0] - Complex{std::log(2.0), 0}) <= 1e-15);
  for (int j = 1; j <= 3; ++j) {
    double expect = (j % 2 == 1 ? 1.0 : -1.0) / j;  // Mercator, scale-invariant
    CHECK(std::abs(rb[j] - Complex{expect, 0}) <= 1e-14);
  }
}

TEST_CASE("series: exp matches the exponential series") {
  TruncatedSeries t{Complex{0, 0}, Complex{1, 0}, Complex{0, 0}, Complex{0, 0}};
  auto r = lsd::series_exp(t);
  CHECK(std::abs(r[0] - Complex{1, 0}) <= 1e-15);
  CHECK(std::abs(r[1] - Complex{1, 0}) <= 1e-15);
  CHECK(std::abs(r[2] - Complex{0.5, 0}) <= 1e-15);
  CHECK(std::abs(r[3] - Complex{1.0 / 6.0, 0}) <= 1e-15);

  auto z = lsd::series_exp(TruncatedSeries(5));
  CHECK(std::abs(z[0] - Complex{1, 0}) == 0.0);
  for (int j = 1; j <= 5; ++j) CHECK(std::abs(z[j]) == 0.0);
}

TEST_CASE("series: exp/log round trips to 1e-12 at order 12") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = random_series(rng, 12, 0.5, 2.0);
    CHECK(max_coeff_err(lsd::series_exp(lsd::series_log(s)), s) <= 1e-12);
    auto t = random_series(rng, 12, 0.0, 1.0);  // |S[0]| <= 1
    CHECK(max_coeff_err(lsd::series_log(lsd::series_exp(t)), t) <= 1e-12);
  }
}

TEST_CASE("series: pow against the binomial recurrence and integer powers") {
  TruncatedSeries a{Complex{1, 0}, Complex{1, 0}, Complex{0, 0}, Complex{0, 0}};
  auto half = lsd::series_pow(a, Complex{0.5, 0});
  CHECK(std::abs(half[0] - Complex{1, 0}) <= 1e-15);
  CHECK(std::abs(half[1] - Complex{0.5, 0}) <= 1e-15);
  CHECK(std::abs(half[2] - Complex{-0.125, 0}) <= 1e-15);
  CHECK(std::abs(half[3] - Complex{0.0625, 0}) <= 1e-15);

  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    Complex w{std::uniform_real_distribution<double>(-2, 2)(rng),
              std::uniform_real_distribution<double>(-2, 2)(rng)};
    TruncatedSeries s(8);
    s.at(0) = Complex{1, 0};
    s.at(1) = Complex{1, 0};
    auto p = lsd::series_pow(s, w);
    for (int j = 0; j <= 8; ++j) CHECK(std::abs(p[j] - oracle::binom_coef(w, j)) <= 1e-12);
  }

  // S^m equals repeated multiplication for m in [0, 4]
  for (int trial = 0; trial < 10; ++trial) {
    auto s = random_series(rng, 10, 0.5, 2.0);
    TruncatedSeries prod = TruncatedSeries::constant(Complex{1, 0}, 10);
    for (int m = 0; m <= 4; ++m) {
      auto p = lsd::series_pow(s, Complex{double(m), 0});
      CHECK(max_coeff_err(p, prod) <= 1e-12);
      prod = lsd::series_mul(prod, s);
    }
    CHECK(max_coeff_err(lsd::series_pow(s, Complex{1, 0}), s) <= 1e-14);
  }
}

TEST_CASE("series: log requires a nonzero constant term") {
  TruncatedSeries z(3);
  CHECK_THROWS_AS((void)lsd::series_log(z), lsd::Error);
  try {
    (void)lsd::series_log(z);
  } catch (const lsd::Error& e) {
    CHECK(e.code() == lsd::errc::zero_constant_term);
  }
  CHECK_THROWS_AS((void)lsd::series_pow(z, Complex{1, 0}), lsd::Error);
}

TEST_CASE("series: negative real constant terms take the principal branch and warn") {
  lsd::diag::clear();
  TruncatedSeries a{Complex{-2, 0}, Complex{1, 0}};
  auto r = lsd::series_log(a);
  CHECK(std::abs(r[0] - std::log(Complex{-2, 0})) <= 1e-15);
  CHECK(lsd::diag::count() >= 1);
  lsd::diag::clear();
}

TEST_CASE("series: stored Stieltjes constants match the Euler-Maclaurin oracle to 1e-12") {
  // oracle sanity: gamma_0 is Euler's constant
  CHECK(std::abs(double(oracle::em_stieltjes(0)) - 0.5772156649015329) <= 1e-14);
  for (int n = 0; n < 10; ++n)
    CHECK(std::abs(lsd::kStieltjes[n] - double(oracle::em_stieltjes(n))) <= 1e-12);
}

TEST_CASE("series: zeta_shifted_series layout and low-order values") {
  auto s = lsd::zeta_shifted_series(2);
  CHECK(s.order() == 2);
  CHECK(s[0] == Complex{1, 0});
  CHECK(std::abs(s[1] - Complex{0.5772156649015329, 0}) <= 1e-12);
  CHECK(std::abs(s[2] - Complex{0.0728158454836767, 0}) <= 1e-12);  // -gamma_1

  CHECK(lsd::zeta_shifted_series(0).order() == 0);
  CHECK(lsd::zeta_shifted_series(0)[0] == Complex{1, 0});
  CHECK_THROWS_AS((void)lsd::zeta_shifted_series(11), lsd::Error);
}

TEST_CASE("series: zeta_shifted_series against zeta by finite differences to 1e-8") {
  // Z(t) = (1 + t) * ... no: Z(t) = t * zeta(1 + t), evaluated by the
  // independent Euler-Maclaurin zeta oracle, differentiated numerically.
  auto Z = [](long double t) {
    return t == 0.0L ? 1.0L : t * oracle::em_zeta(1.0L + t);  // removable singularity at t = 0
  };
  // oracle sanity at a known point: zeta(2) = pi^2/6
  CHECK(std::abs(double(oracle::em_zeta(2.0L)) - 1.6449340668482264) <= 1e-14);

  auto s = lsd::zeta_shifted_series(4);
  auto fd_coeff = [&](int j, long double h) {
    // j-th central difference / (h^j j!)
    long double num = 0.0L;
    for (int i = 0; i <= j; ++i) {
      long double binom = 1.0L;
      for (int b = 0; b < i; ++b) binom = binom * (j - b) / (b + 1);
      long double sign = (i % 2 == 0) ? 1.0L : -1.0L;
      num += sign * binom * Z((j * 0.5L - i) * h);
    }
    long double fact = 1.0L;
    for (int i = 2; i <= j; ++i) fact *= i;
    return num / (std::pow(h, (long double)j) * fact);
  };
  for (int j = 1; j <= 3; ++j) {
    long double h = 0.02L;
    long double d1 = fd_coeff(j, h), d2 = fd_coeff(j, h / 2);
    long double richardson = (4.0L * d2 - d1) / 3.0L;
    CHECK(std::abs(s[j].real() - double(richardson)) <= 1e-8);
  }
}

TEST_CASE("series: inverse_s_series alternates and inverts s") {
  auto inv = lsd::inverse_s_series(3);
  CHECK(inv[0] == Complex{1, 0});
  CHECK(inv[1] == Complex{-1, 0});
  CHECK(inv[2] == Complex{1, 0});
  CHECK(inv[3] == Complex{-1, 0});
  CHECK(lsd::inverse_s_series(0).order() == 0);

  TruncatedSeries s{Complex{1, 0}, Complex{1, 0}, Complex{0, 0}, Complex{0, 0}};
  auto prod = lsd::series_mul(lsd::inverse_s_series(3), s);
  CHECK(std::abs(prod[0] - Complex{1, 0}) == 0.0);
  for (int j = 1; j <= 3; ++j) CHECK(std::abs(prod[j]) == 0.0);
}

TEST_CASE("series: order cap") {
  CHECK_THROWS_AS(TruncatedSeries(13), lsd::Error);
  CHECK_NOTHROW(TruncatedSeries(12));
}
