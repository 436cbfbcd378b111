// Prime enumeration: a plain Eratosthenes sieve for base primes and a
// segmented walker for large ranges.
#pragma once

#include <vector>

#include "lsdlab/core.hpp"

namespace lsd {

inline std::vector<std::uint32_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  require(n <= (std::uint64_t(1) << 32), errc::memory_budget_exceeded, "primes_up_to limit");
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i * i <= n; ++i)
    if (!composite[i])
      for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  for (std::uint64_t i = 2; i <= n; ++i)
    if (!composite[i]) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

// Calls fn(p) for every prime in [lo, hi], ascending.
template <typename F>
void for_each_prime(std::uint64_t lo, std::uint64_t hi, F&& fn) {
  if (hi < 2 || lo > hi) return;
  if (lo < 2) lo = 2;
  std::uint64_t root = 1;
  while ((root + 1) * (root + 1) <= hi) ++root;
  auto base = primes_up_to(root);
  const std::uint64_t seg = std::uint64_t(1) << 20;
  std::vector<bool> composite;
  for (std::uint64_t start = lo; start <= hi; start += seg) {
    std::uint64_t end = std::min(hi, start + seg - 1);
    composite.assign(end - start + 1, false);
    for (std::uint64_t p : base) {
      std::uint64_t first = std::max(p * p, ((start + p - 1) / p) * p);
      for (std::uint64_t m = first; m <= end; m += p) composite[m - start] = true;
    }
    for (std::uint64_t n = start; n <= end; ++n)
      if (n >= 2 && !composite[n - start]) fn(n);
  }
}

}  // namespace lsd
