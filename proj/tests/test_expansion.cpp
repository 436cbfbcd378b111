#include "doctest.h"
#include "lsdlab/expansion.hpp"
#include "oracles.hpp"

using lsd::Complex;
using lsd::PrimePowerRule;

TEST_CASE("expansion: tau_alpha local factors cancel identically") {
  for (double a_re : {0.5, 1.0, 2.0, -1.0}) {
    auto rule = PrimePowerRule::tau_alpha(Complex{a_re, 0.3});
    for (std::uint64_t p : {2ull, 3ull, 97ull, 99991ull}) {
      auto s = lsd::local_factor_log_series(rule, p, Complex{a_re, 0.3}, 6);
      for (int j = 0; j <= 6; ++j) CHECK(std::abs(s[j]) <= 1e-14);
    }
  }
}

TEST_CASE("expansion: squarefree local factor at p = 2 has constant term log(3/4)") {
  auto s = lsd::local_factor_log_series(PrimePowerRule::squarefree(), 2, Complex{1, 0}, 0);
  CHECK(std::abs(s[0] - Complex{std::log(0.75), 0}) <= 1e-14);
}

TEST_CASE("expansion: order-0 coefficient is the log of the c0-product local term") {
  auto rule = PrimePowerRule::squarefree();
  for (std::uint64_t p : {2ull, 5ull, 31ull}) {
    auto s = lsd::local_factor_log_series(rule, p, Complex{1, 0}, 3);
    double pd = double(p);
    double local = (1.0 + 1.0 / pd) * (1.0 - 1.0 / pd);
    CHECK(std::abs(s[0] - Complex{std::log(local), 0}) <= 1e-13);
  }
}

TEST_CASE("expansion: tau_alpha coefficients reproduce powers of (s-1)zeta(s)") {
  // alpha = 1: Q = (s-1) zeta(s), so c = [1, gamma_0, -gamma_1, ...]
  auto one = lsd::compute_expansion(PrimePowerRule::tau_alpha(Complex{1, 0}), Complex{1, 0}, 3, 2000);
  CHECK(std::abs(one.c[0] - Complex{1, 0}) <= 1e-12);
  CHECK(std::abs(one.c[1] - Complex{lsd::kStieltjes[0], 0}) <= 1e-12);
  CHECK(std::abs(one.c[2] - Complex{-lsd::kStieltjes[1], 0}) <= 1e-12);

  // alpha = 2: c_0 = 1, c_1 = 2 gamma_0, c~_1 = 2 gamma_0 - 1
  auto two = lsd::compute_expansion(PrimePowerRule::tau_alpha(Complex{2, 0}), Complex{2, 0}, 2, 2000);
  CHECK(std::abs(two.c[0] - Complex{1, 0}) <= 1e-10);
  CHECK(std::abs(two.c[1] - Complex{2 * lsd::kStieltjes[0], 0}) <= 1e-10);
  CHECK(std::abs(two.c_tilde[0] - Complex{1, 0}) <= 1e-10);
  CHECK(std::abs(two.c_tilde[1] - Complex{2 * lsd::kStieltjes[0] - 1.0, 0}) <= 1e-10);
}

TEST_CASE("expansion: linkage identities between c and c~") {
  auto check_linkage = [](const lsd::ExpansionCoefficients& e) {
    CHECK(std::abs(e.c[0] - e.c_tilde[0]) <= 1e-12);
    for (int j = 0; j <= e.J; ++j) {
      Complex alt{0, 0};
      double sign = 1.0;
      for (int a = 0; a <= j; ++a) {
        alt += sign * e.c[j - a];
        sign = -sign;
      }
      CHECK(std::abs(e.c_tilde[j] - alt) <= 1e-12);
      Complex prev = j == 0 ? Complex{0, 0} : e.c_tilde[j - 1];
      CHECK(std::abs(e.c[j] - (e.c_tilde[j] + prev)) <= 1e-12);
    }
  };
  check_linkage(lsd::compute_expansion(PrimePowerRule::tau_alpha(Complex{0.5, 0}), Complex{0.5, 0}, 5, 10000));
  check_linkage(lsd::compute_expansion(PrimePowerRule::squarefree(), Complex{1, 0}, 4, 10000));
  check_linkage(lsd::compute_expansion(PrimePowerRule::tau_alpha(Complex{1, 1}), Complex{1, 1}, 6, 10000));
}

TEST_CASE("expansion: c0 direct product on the trivial cases") {
  for (Complex a : {Complex{0.5, 0}, Complex{2, 0}, Complex{1, 1}})
    CHECK(std::abs(lsd::c0_direct_product(PrimePowerRule::tau_alpha(a), a, 5000) - Complex{1, 0}) <=
          1e-12);
  auto zero = PrimePowerRule::explicit_table({}, Complex{0, 0}, Complex{0, 0}, 1.0);
  CHECK(std::abs(lsd::c0_direct_product(zero, Complex{0, 0}, 5000) - Complex{1, 0}) <= 1e-12);
}

TEST_CASE("expansion: squarefree density constant from both routes") {
  const double six_over_pi2 = 0.6079271018540267;
  auto direct = lsd::c0_direct_product(PrimePowerRule::squarefree(), Complex{1, 0}, 1'000'000);
  CHECK(std::abs(direct - Complex{six_over_pi2, 0}) <= 1e-6);

  auto e = lsd::compute_expansion(PrimePowerRule::squarefree(), Complex{1, 0}, 2, 1'000'000);
  CHECK(std::abs(e.c[0] - Complex{six_over_pi2, 0}) <= 1e-6);
}

TEST_CASE("expansion: pipeline c0 agrees with the direct product within the tail") {
  struct Case {
    PrimePowerRule rule;
    Complex alpha;
  };
  const std::uint64_t P = 100'000;
  std::vector<Case> cases{{PrimePowerRule::tau_alpha(Complex{0.5, 0}), Complex{0.5, 0}},
                          {PrimePowerRule::tau_alpha(Complex{2, 0}), Complex{2, 0}},
                          {PrimePowerRule::squarefree(), Complex{1, 0}}};
  for (const auto& c : cases) {
    auto e = lsd::compute_expansion(c.rule, c.alpha, 3, P);
    auto direct = lsd::c0_direct_product(c.rule, c.alpha, P);
    CHECK(std::abs(e.c[0] - direct) <= std::max(1e-8, e.tail_estimate));
  }
}

TEST_CASE("expansion: doubling the cutoff moves coefficients less than the reported tail") {
  auto sweep = [](const PrimePowerRule& rule, Complex alpha, int J) {
    auto lo = lsd::compute_expansion(rule, alpha, J, 100'000);
    auto hi = lsd::compute_expansion(rule, alpha, J, 1'000'000);
    for (int j = 0; j <= J; ++j) {
      CHECK(std::abs(lo.c[j] - hi.c[j]) <= lo.tail_estimate);
      CHECK(std::abs(lo.c_tilde[j] - hi.c_tilde[j]) <= lo.tail_estimate);
    }
  };
  sweep(PrimePowerRule::tau_alpha(Complex{0.5, 0}), Complex{0.5, 0}, 3);
  sweep(PrimePowerRule::squarefree(), Complex{1, 0}, 3);
}

TEST_CASE("expansion: slow-deviation rules stay within the tail across cutoffs") {
  // the continuation of the omitted prime sum keeps the coefficients stable
  auto f = [](double eps) {
    auto beta = [eps](std::uint64_t p) {
      if (p == 2) return Complex{eps, 0};
      return Complex{1.0 - std::pow(std::log(double(p)), -1.5) * std::pow(std::log(2.0), 1.5), 0};
    };
    return PrimePowerRule::binomial_local(
        beta, Complex{1, 0}, 1.0,
        lsd::DeviationModel::powerlog(1.5, Complex{-std::pow(std::log(2.0), 1.5), 0}));
  };
  auto lo = lsd::compute_expansion(f(0.5), Complex{1, 0}, 1, 100'000);
  auto hi = lsd::compute_expansion(f(0.5), Complex{1, 0}, 1, 1'000'000);
  for (int j = 0; j <= 1; ++j) {
    CHECK(std::abs(lo.c[j] - hi.c[j]) <= lo.tail_estimate);
    CHECK(std::abs(lo.c_tilde[j] - hi.c_tilde[j]) <= lo.tail_estimate);
  }
}

TEST_CASE("expansion: block-parallel prime loop is deterministic across thread counts") {
  unsigned saved = lsd::thread_setting().load();
  auto rule = PrimePowerRule::squarefree();
  lsd::set_threads(1);
  auto one = lsd::compute_expansion(rule, Complex{1, 0}, 4, 200'000);
  lsd::set_threads(4);
  auto four = lsd::compute_expansion(rule, Complex{1, 0}, 4, 200'000);
  lsd::set_threads(saved);
  for (int j = 0; j <= 4; ++j) {
    CHECK(one.c[j].real() == four.c[j].real());
    CHECK(one.c[j].imag() == four.c[j].imag());
  }
}

TEST_CASE("expansion: local factor out of range is rejected") {
  // f(2) = -4 puts the constant term of the local factor at distance >= 1 from 1
  auto bad = PrimePowerRule::explicit_table({{{2, 1}, Complex{-4, 0}}}, Complex{0, 0},
                                            Complex{0, 0}, 4.0);
  CHECK_THROWS_AS((void)lsd::local_factor_log_series(bad, 2, Complex{0, 0}, 3), lsd::Error);
  try {
    (void)lsd::local_factor_log_series(bad, 2, Complex{0, 0}, 3);
  } catch (const lsd::Error& e) {
    CHECK(e.code() == lsd::errc::local_factor_out_of_range);
  }
  CHECK_THROWS_AS((void)lsd::compute_expansion(bad, Complex{0, 0}, 2, 1000), lsd::Error);
}

TEST_CASE("expansion: parameter validation") {
  auto rule = PrimePowerRule::tau_alpha(Complex{1, 0});
  CHECK_THROWS_AS((void)lsd::compute_expansion(rule, Complex{1, 0}, 11, 1000), lsd::Error);
  CHECK_THROWS_AS((void)lsd::compute_expansion(rule, Complex{1, 0}, 2, 50), lsd::Error);
  CHECK_THROWS_AS((void)lsd::c0_direct_product(rule, Complex{1, 0}, 50), lsd::Error);
}
