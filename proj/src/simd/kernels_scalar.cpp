#include <cmath>

#include "sepsim/simd/kernels.hpp"

namespace sepsim::simd::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void gauss_accumulate(double* out, const double* x, std::size_t n, double center,
                      double inv_two_t, double scale) {
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - center;
    out[i] += scale * std::exp(-(d * d) * inv_two_t);
  }
}

double sup_abs_diff(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    if (d > m) m = d;
  }
  return m;
}

}  // namespace sepsim::simd::scalar
