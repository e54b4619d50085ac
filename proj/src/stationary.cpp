#include "sepsim/stationary.hpp"

#include <cmath>
#include <string>

#include "sepsim/errors.hpp"
#include "sepsim/mathutil.hpp"

namespace sepsim {

double StationarySolution::flux_current() const {
  return j * (1.0 - int_pow(alpha, k_boundary));
}

StationarySolution solve_stationary(double j, int k_boundary) {
  if (!(j >= 0.0) || !std::isfinite(j))
    throw ConfigError("boundary intensity j must be finite and >= 0, got " + std::to_string(j));
  if (k_boundary < 1)
    throw ConfigError("boundary window size must be >= 1, got " + std::to_string(k_boundary));

  StationarySolution out;
  out.j = j;
  out.k_boundary = k_boundary;
  if (j == 0.0) return out;  // alpha = 1/2, J = 0 exactly

  auto f = [&](double a) { return a + j * int_pow(a, k_boundary) - j - 0.5; };

  double lo = 0.5, hi = 1.0;
  // f(1/2) = j(2^-K - 1) < 0 and f(1) = 1/2 > 0; bisect until the bracket
  // collapses to adjacent doubles.
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  out.alpha = std::fabs(f(lo)) <= std::fabs(f(hi)) ? lo : hi;
  out.current = out.alpha - 0.5;
  out.residual = std::fabs(f(out.alpha));
  return out;
}

}  // namespace sepsim
