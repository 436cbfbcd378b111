// Shared basics: complex alias, error codes, budgets, thread pool, pairwise
// summation, warning sink.
#pragma once

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace lsd {

using Complex = std::complex<double>;

enum class errc {
  zero_constant_term,
  order_too_large,
  length_mismatch,
  not_normalized,
  memory_budget_exceeded,
  time_budget_exceeded,
  local_factor_out_of_range,
  domain_too_small,
  quadrature_nonconvergence,
  degenerate_fit,
  hypothesis_violated,
  alpha_not_zero,
  nonfinite_value,
  invalid_argument,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::zero_constant_term: return "ZeroConstantTerm";
    case errc::order_too_large: return "OrderTooLarge";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::not_normalized: return "NotNormalized";
    case errc::memory_budget_exceeded: return "MemoryBudgetExceeded";
    case errc::time_budget_exceeded: return "TimeBudgetExceeded";
    case errc::local_factor_out_of_range: return "LocalFactorOutOfRange";
    case errc::domain_too_small: return "DomainTooSmall";
    case errc::quadrature_nonconvergence: return "QuadratureNonConvergence";
    case errc::degenerate_fit: return "DegenerateFit";
    case errc::hypothesis_violated: return "HypothesisViolated";
    case errc::alpha_not_zero: return "AlphaNotZero";
    case errc::nonfinite_value: return "NonFiniteValue";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

  // Budget overruns map to a distinct process exit code in the CLI.
  bool is_budget() const {
    return code_ == errc::memory_budget_exceeded || code_ == errc::time_budget_exceeded;
  }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

inline bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline Complex checked(Complex z, const char* where) {
  if (!finite(z)) fail(errc::nonfinite_value, where);
  return z;
}

// Resource ceilings for dense tables and streamed enumeration.
struct Budget {
  std::uint64_t max_table = std::uint64_t(1) << 26;
  std::uint64_t max_stream = 300'000'000;
};

inline Budget& budget() {
  static Budget b;
  return b;
}

// Worker count used by the parallel drivers; 0 means hardware concurrency.
inline std::atomic<unsigned>& thread_setting() {
  static std::atomic<unsigned> n{0};
  return n;
}

inline void set_threads(unsigned n) { thread_setting().store(n); }

inline unsigned thread_count() {
  unsigned n = thread_setting().load();
  if (n == 0) n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Runs fn(0..tasks-1) on the configured worker count. Callers own the
// determinism story: results must be collected per-task and reduced in task
// order afterwards.
inline void parallel_for(std::size_t tasks, const std::function<void(std::size_t)>& fn) {
  unsigned workers = thread_count();
  if (workers <= 1 || tasks <= 1) {
    for (std::size_t i = 0; i < tasks; ++i) fn(i);
    return;
  }
  if (workers > tasks) workers = static_cast<unsigned>(tasks);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= tasks) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

// Pairwise (cascade) summation: fixed association independent of the caller's
// thread count, and far better rounding than a left fold.
inline Complex pairwise_sum(const Complex* v, std::size_t n) {
  if (n <= 64) {
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

inline Complex pairwise_sum(const std::vector<Complex>& v) {
  return pairwise_sum(v.data(), v.size());
}

// Non-fatal diagnostics (branch-cut notes and the like). CLI drains these to
// stderr; tests can count them.
namespace diag {

inline std::mutex& mu() {
  static std::mutex m;
  return m;
}

inline std::vector<std::string>& sink() {
  static std::vector<std::string> v;
  return v;
}

inline void warn(std::string msg) {
  std::lock_guard<std::mutex> lk(mu());
  sink().push_back(std::move(msg));
}

inline std::vector<std::string> drain() {
  std::lock_guard<std::mutex> lk(mu());
  auto out = std::move(sink());
  sink().clear();
  return out;
}

inline std::size_t count() {
  std::lock_guard<std::mutex> lk(mu());
  return sink().size();
}

inline void clear() {
  std::lock_guard<std::mutex> lk(mu());
  sink().clear();
}

}  // namespace diag

}  // namespace lsd
