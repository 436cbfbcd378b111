// Dense tables of f(n), segmented streaming sums, Dirichlet convolution and
// the Lambda_f / R_f extraction machinery.
//
// Determinism contract: streamed results are reproduced bit-for-bit for any
// worker count. Each segment is a pure function of its index (values in
// ascending n, pairwise-summed), and segments are reduced in index order.
#pragma once

#include <algorithm>
#include <random>

#include "lsdlab/core.hpp"
#include "lsdlab/primes.hpp"
#include "lsdlab/rules.hpp"

namespace lsd {

inline constexpr std::uint64_t kSegmentLength = std::uint64_t(1) << 22;

struct SievedTable {
  std::uint64_t x_max = 0;
  std::vector<Complex> values;  // values[n] for 1 <= n <= x_max; values[0] unused

  Complex operator[](std::uint64_t n) const { return values[n]; }
};

struct PartialSumCheckpoints {
  std::vector<std::uint64_t> grid;
  std::vector<Complex> sums;
};

namespace detail {

inline void check_grid(const std::vector<std::uint64_t>& grid) {
  require(!grid.empty(), errc::invalid_argument, "grid must be nonempty");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    require(grid[i] < grid[i + 1], errc::invalid_argument, "grid must be strictly ascending");
  require(grid.front() >= 1, errc::invalid_argument, "grid starts at 1");
}

// f(n) for n in [lo, lo+len), by trial extraction of base primes and a final
// large-prime cofactor. prime_flag[i] marks primality of lo+i.
inline void fill_segment(const PrimePowerRule& rule, std::uint64_t lo, std::uint64_t len,
                         const std::vector<std::uint32_t>& base_primes, Complex* val,
                         unsigned char* prime_flag, std::uint64_t* rem) {
  const std::uint64_t hi = lo + len;  // exclusive
  for (std::uint64_t i = 0; i < len; ++i) {
    val[i] = Complex{1.0, 0.0};
    prime_flag[i] = 0;
    rem[i] = lo + i;
  }
  Complex powers[64];
  for (std::uint32_t p : base_primes) {
    std::uint64_t p64 = p;
    if (p64 >= hi) break;
    unsigned nu_max = 0;
    std::uint64_t q = 1;
    while (q <= (hi - 1) / p64) {
      q *= p64;
      ++nu_max;
    }
    rule.prime_powers(p64, nu_max, powers);
    std::uint64_t first = ((lo + p64 - 1) / p64) * p64;
    for (std::uint64_t m = first; m < hi; m += p64) {
      std::uint64_t i = m - lo;
      unsigned nu = 0;
      while (rem[i] % p64 == 0) {
        rem[i] /= p64;
        ++nu;
      }
      val[i] *= powers[nu];
      if (m == p64) prime_flag[i] = 1;
    }
  }
  for (std::uint64_t i = 0; i < len; ++i) {
    if (rem[i] > 1) {
      if (rem[i] == lo + i) prime_flag[i] = 1;
      val[i] *= rule.value(rem[i], 1);
    }
  }
}

}  // namespace detail

// Summand applied pointwise before accumulation: (n, f(n), n is prime).
using Summand = std::function<Complex(std::uint64_t, Complex, bool)>;

// Checkpointed sums sum_{n <= x_i} summand(n) over a segmented sieve; full
// tables are never materialized.
inline PartialSumCheckpoints accumulate_checkpoints(const PrimePowerRule& rule,
                                                    const std::vector<std::uint64_t>& grid,
                                                    const Summand& summand) {
  detail::check_grid(grid);
  const std::uint64_t x_max = grid.back();
  require(x_max <= budget().max_stream, errc::time_budget_exceeded,
          "grid maximum " + std::to_string(x_max) + " exceeds the streaming budget");

  std::uint64_t root = 1;
  while ((root + 1) * (root + 1) <= x_max) ++root;
  const auto base_primes = primes_up_to(root);

  const std::uint64_t nseg = (x_max + kSegmentLength - 1) / kSegmentLength;
  struct SegmentResult {
    Complex total{0.0, 0.0};
    std::vector<std::pair<std::size_t, Complex>> prefixes;  // (grid index, sum over segment start..x)
  };
  std::vector<SegmentResult> results(nseg);

  parallel_for(nseg, [&](std::size_t s) {
    const std::uint64_t lo = 1 + s * kSegmentLength;
    const std::uint64_t len = std::min(kSegmentLength, x_max - lo + 1);
    std::vector<Complex> val(len);
    std::vector<unsigned char> prime(len);
    std::vector<std::uint64_t> rem(len);
    detail::fill_segment(rule, lo, len, base_primes, val.data(), prime.data(), rem.data());
    std::vector<Complex> w(len);
    for (std::uint64_t i = 0; i < len; ++i)
      w[i] = checked(summand(lo + i, val[i], prime[i] != 0), "accumulate_checkpoints summand");
    SegmentResult r;
    auto gb = std::lower_bound(grid.begin(), grid.end(), lo);
    for (auto it = gb; it != grid.end() && *it < lo + len; ++it)
      r.prefixes.emplace_back(std::size_t(it - grid.begin()), pairwise_sum(w.data(), *it - lo + 1));
    r.total = pairwise_sum(w.data(), len);
    results[s] = std::move(r);
  });

  PartialSumCheckpoints out;
  out.grid = grid;
  out.sums.assign(grid.size(), Complex{0.0, 0.0});
  Complex running{0.0, 0.0};
  for (std::uint64_t s = 0; s < nseg; ++s) {
    for (const auto& [gi, prefix] : results[s].prefixes) out.sums[gi] = running + prefix;
    running += results[s].total;
  }
  return out;
}

inline PartialSumCheckpoints streamed_partial_sums(const PrimePowerRule& rule,
                                                   const std::vector<std::uint64_t>& grid) {
  return accumulate_checkpoints(rule, grid, [](std::uint64_t, Complex f, bool) { return f; });
}

// Dense f(n) for n <= x_max via a smallest-prime-factor sieve; exact
// multiplicativity by construction.
inline SievedTable sieve_multiplicative(const PrimePowerRule& rule, std::uint64_t x_max) {
  require(x_max >= 1, errc::invalid_argument, "x_max must be >= 1");
  require(x_max <= budget().max_table, errc::memory_budget_exceeded,
          "dense table of size " + std::to_string(x_max) + " exceeds the memory budget");

  std::vector<std::uint32_t> spf(x_max + 1, 0);
  for (std::uint64_t i = 2; i <= x_max; ++i) {
    if (spf[i] != 0) continue;
    for (std::uint64_t j = i; j <= x_max; j += i)
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
  }

  SievedTable t;
  t.x_max = x_max;
  t.values.assign(x_max + 1, Complex{0.0, 0.0});
  t.values[1] = Complex{1.0, 0.0};
  for (std::uint64_t n = 2; n <= x_max; ++n) {
    std::uint64_t p = spf[n];
    std::uint64_t m = n / p;
    unsigned nu = 1;
    while (m % p == 0) {
      m /= p;
      ++nu;
    }
    t.values[n] = checked(t.values[m] * rule.value(p, nu), "sieve_multiplicative");
  }
  return t;
}

inline SievedTable dirichlet_convolve(const SievedTable& a, const SievedTable& b) {
  require(a.x_max == b.x_max, errc::length_mismatch, "dirichlet_convolve needs equal table sizes");
  const std::uint64_t x = a.x_max;
  SievedTable r;
  r.x_max = x;
  r.values.assign(x + 1, Complex{0.0, 0.0});
  for (std::uint64_t d = 1; d <= x; ++d) {
    const Complex ad = a.values[d];
    if (ad == Complex{0.0, 0.0}) continue;
    for (std::uint64_t m = d, q = 1; m <= x; m += d, ++q) r.values[m] += ad * b.values[q];
  }
  return r;
}

// Lambda_f from f log = f * Lambda_f, resolved in increasing n over proper
// divisors. O(x log x).
inline SievedTable extract_lambda_f(const SievedTable& a) {
  require(a.x_max >= 1 && a.values[1] == Complex{1.0, 0.0}, errc::not_normalized,
          "extract_lambda_f requires f(1) = 1");
  const std::uint64_t x = a.x_max;
  SievedTable lam;
  lam.x_max = x;
  lam.values.assign(x + 1, Complex{0.0, 0.0});
  std::vector<Complex> acc(x + 1, Complex{0.0, 0.0});
  for (std::uint64_t d = 2; d <= x; ++d) {
    lam.values[d] = checked(a.values[d] * std::log(double(d)) - acc[d], "extract_lambda_f");
    if (lam.values[d] == Complex{0.0, 0.0}) continue;
    for (std::uint64_t m = 2 * d, q = 2; m <= x; m += d, ++q) acc[m] += lam.values[d] * a.values[q];
  }
  return lam;
}

// R_f = f * tau_{-f}: supported on square-full integers.
inline SievedTable remainder_R_f(const PrimePowerRule& rule, std::uint64_t x_max) {
  SievedTable f = sieve_multiplicative(rule, x_max);
  PrimePowerRule neg = PrimePowerRule::binomial_local(
      [rule](std::uint64_t p) { return -rule.beta_at(p); }, -rule.alpha(), 2.0 * rule.k_bound(),
      DeviationModel::none());
  SievedTable tneg = sieve_multiplicative(neg, x_max);
  return dirichlet_convolve(f, tneg);
}

// Spot check values[m*n] = values[m]*values[n] on random coprime pairs.
inline bool multiplicativity_spot_check(const SievedTable& t, std::uint64_t seed,
                                        int trials = 200, double tol = 1e-12) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(2, std::max<std::uint64_t>(2, t.x_max / 2));
  auto gcd = [](std::uint64_t a, std::uint64_t b) {
    while (b) {
      a %= b;
      std::swap(a, b);
    }
    return a;
  };
  for (int i = 0; i < trials; ++i) {
    std::uint64_t m = dist(rng);
    std::uint64_t n = dist(rng);
    if (m * n > t.x_max || gcd(m, n) != 1) continue;
    Complex lhs = t.values[m * n];
    Complex rhs = t.values[m] * t.values[n];
    double scale = std::max(1.0, std::abs(rhs));
    if (std::abs(lhs - rhs) > tol * scale) return false;
  }
  return true;
}

}  // namespace lsd
