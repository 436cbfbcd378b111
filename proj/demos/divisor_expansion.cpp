// Minimal tour: expansion coefficients of the divisor function, both main
// term forms, and the scale of the residual.
#include <cstdio>

#include "lsdlab/experiments.hpp"

int main() {
  using namespace lsd;
  const Complex alpha{2.0, 0.0};
  auto rule = PrimePowerRule::tau_alpha(alpha);

  auto coeffs = compute_expansion(rule, alpha, 1, 100'000);
  std::printf("c~_0 = %.12f   c~_1 = %.12f   (2 gamma_0 - 1 = %.12f)\n",
              coeffs.c_tilde[0].real(), coeffs.c_tilde[1].real(), 2 * kStieltjes[0] - 1);

  std::vector<std::uint64_t> grid{1000, 10'000, 100'000, 1'000'000};
  auto sums = streamed_partial_sums(rule, grid);
  std::printf("%10s %16s %16s %16s %12s\n", "x", "sum tau(n)", "point form", "integral form",
              "resid/sqrt");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double x = double(grid[i]);
    double point = main_term_point(coeffs, x).real();
    double integral = main_term_integral(coeffs, x).real();
    std::printf("%10llu %16.1f %16.1f %16.1f %12.4f\n", (unsigned long long)grid[i],
                sums.sums[i].real(), point, integral,
                (sums.sums[i].real() - point) / std::sqrt(x));
  }
  return 0;
}
