// Multiplicative functions are defined by their values on prime powers. All
// presets here are of binomial type f(p^nu) = binom(beta_p + nu - 1, nu),
// except the squarefree indicator and explicit tables.
#pragma once

#include <functional>
#include <map>
#include <utility>

#include "lsdlab/core.hpp"

namespace lsd {

enum class RuleKind { tau_alpha, binomial_local, explicit_table, squarefree };

// What is known about f(p) - alpha. Feeds the expansion's truncation-tail
// accounting: `exact_zero` means f(p) = alpha identically, `power_log` means
// f(p) - alpha = amplitude * (log p)^(-A) identically for p > 2.
struct DeviationModel {
  enum class Kind { exact_zero, power_log, unknown } kind = Kind::unknown;
  double big_a = 0.0;
  Complex amplitude{0.0, 0.0};

  static DeviationModel exact() { return {Kind::exact_zero, 0.0, {0.0, 0.0}}; }
  static DeviationModel powerlog(double a, Complex amp) { return {Kind::power_log, a, amp}; }
  static DeviationModel none() { return {}; }
};

// binom(beta + nu - 1, nu) by the product recurrence. Numerator and
// denominator are accumulated separately and divided once, so integer beta
// gives exact integer values as long as both products fit in a double.
inline Complex binomial_prime_power(Complex beta, unsigned nu) {
  Complex num{1.0, 0.0};
  double den = 1.0;
  for (unsigned i = 0; i < nu; ++i) {
    num *= beta + double(i);
    den *= double(i + 1);
  }
  return num / den;
}

class PrimePowerRule {
 public:
  static PrimePowerRule tau_alpha(Complex alpha) {
    PrimePowerRule r;
    r.kind_ = RuleKind::tau_alpha;
    r.alpha_ = alpha;
    r.k_bound_ = std::abs(alpha);
    r.deviation_ = DeviationModel::exact();
    return r;
  }

  static PrimePowerRule squarefree() {
    PrimePowerRule r;
    r.kind_ = RuleKind::squarefree;
    r.alpha_ = Complex{1.0, 0.0};
    r.k_bound_ = 1.0;
    r.deviation_ = DeviationModel::exact();
    return r;
  }

  static PrimePowerRule binomial_local(std::function<Complex(std::uint64_t)> beta, Complex alpha,
                                       double k_bound, DeviationModel dev) {
    PrimePowerRule r;
    r.kind_ = RuleKind::binomial_local;
    r.beta_ = std::move(beta);
    r.alpha_ = alpha;
    r.k_bound_ = k_bound;
    r.deviation_ = dev;
    return r;
  }

  static PrimePowerRule explicit_table(std::map<std::pair<std::uint64_t, unsigned>, Complex> table,
                                       Complex default_value, Complex alpha, double k_bound) {
    PrimePowerRule r;
    r.kind_ = RuleKind::explicit_table;
    r.table_ = std::move(table);
    r.default_ = default_value;
    r.alpha_ = alpha;
    r.k_bound_ = k_bound;
    return r;
  }

  RuleKind kind() const { return kind_; }
  Complex alpha() const { return alpha_; }
  double k_bound() const { return k_bound_; }
  const DeviationModel& deviation() const { return deviation_; }

  Complex beta_at(std::uint64_t p) const {
    switch (kind_) {
      case RuleKind::tau_alpha: return alpha_;
      case RuleKind::squarefree: return Complex{1.0, 0.0};
      case RuleKind::binomial_local: return beta_(p);
      case RuleKind::explicit_table: return value(p, 1);
    }
    return {};
  }

  Complex value(std::uint64_t p, unsigned nu) const {
    if (nu == 0) return Complex{1.0, 0.0};
    switch (kind_) {
      case RuleKind::tau_alpha: return binomial_prime_power(alpha_, nu);
      case RuleKind::squarefree: return nu == 1 ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
      case RuleKind::binomial_local: return binomial_prime_power(beta_(p), nu);
      case RuleKind::explicit_table: {
        auto it = table_.find({p, nu});
        return it == table_.end() ? default_ : it->second;
      }
    }
    return {};
  }

  // out[0..nu_max] = f(p^0), f(p^1), ..., f(p^nu_max). One lookup of beta_p per
  // call; the hot sieve loops use this instead of value().
  void prime_powers(std::uint64_t p, unsigned nu_max, Complex* out) const {
    out[0] = Complex{1.0, 0.0};
    switch (kind_) {
      case RuleKind::tau_alpha:
      case RuleKind::binomial_local: {
        Complex beta = (kind_ == RuleKind::tau_alpha) ? alpha_ : beta_(p);
        Complex num{1.0, 0.0};
        double den = 1.0;
        for (unsigned i = 0; i < nu_max; ++i) {
          num *= beta + double(i);
          den *= double(i + 1);
          out[i + 1] = num / den;
        }
        return;
      }
      case RuleKind::squarefree:
        for (unsigned nu = 1; nu <= nu_max; ++nu) out[nu] = nu == 1 ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
        return;
      case RuleKind::explicit_table:
        for (unsigned nu = 1; nu <= nu_max; ++nu) out[nu] = value(p, nu);
        return;
    }
  }

 private:
  PrimePowerRule() = default;

  RuleKind kind_ = RuleKind::tau_alpha;
  Complex alpha_{0.0, 0.0};
  double k_bound_ = 0.0;
  DeviationModel deviation_;
  std::function<Complex(std::uint64_t)> beta_;
  std::map<std::pair<std::uint64_t, unsigned>, Complex> table_;
  Complex default_{0.0, 0.0};
};

// tau_f: the binomial-type function sharing f's prime values. Its generalized
// von Mangoldt function is f(p) log p on all powers of p.
inline PrimePowerRule tau_f_rule(const PrimePowerRule& rule) {
  if (rule.kind() == RuleKind::tau_alpha || rule.kind() == RuleKind::binomial_local) return rule;
  return PrimePowerRule::binomial_local([rule](std::uint64_t p) { return rule.beta_at(p); },
                                        rule.alpha(), rule.k_bound(), rule.deviation());
}

}  // namespace lsd
