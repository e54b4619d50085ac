#pragma once

#include <cstddef>

namespace sepsim::simd {

// Data-parallel inner loops of the numerics: Gaussian row accumulation for
// heat-kernel evaluation, reduction dots for quadrature and convolution,
// sup-norm gaps for comparisons. Scalar variants are the reference; AVX2+FMA
// variants are selected at runtime when the CPU supports them and are
// equivalence-tested against the scalar ones.

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
/// out[i] += scale * exp(-(x[i] - center)^2 * inv_two_t)
void gauss_accumulate(double* out, const double* x, std::size_t n, double center,
                      double inv_two_t, double scale);
double sup_abs_diff(const double* a, const double* b, std::size_t n);
}  // namespace scalar

namespace avx2 {
// Call only when avx2_available(); on non-x86 builds these throw.
double dot(const double* a, const double* b, std::size_t n);
void gauss_accumulate(double* out, const double* x, std::size_t n, double center,
                      double inv_two_t, double scale);
double sup_abs_diff(const double* a, const double* b, std::size_t n);
}  // namespace avx2

bool avx2_available();

/// "avx2" or "scalar"
const char* active_backend();

/// Override dispatch: "scalar" pins the reference path, "auto" restores
/// runtime detection. Intended for tests and benchmarking.
void force_backend(const char* name);

// Dispatched entry points.
double dot(const double* a, const double* b, std::size_t n);
void gauss_accumulate(double* out, const double* x, std::size_t n, double center,
                      double inv_two_t, double scale);
double sup_abs_diff(const double* a, const double* b, std::size_t n);

}  // namespace sepsim::simd
