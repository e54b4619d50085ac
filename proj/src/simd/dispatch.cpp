#include <atomic>
#include <cstring>
#include <stdexcept>

#include "sepsim/simd/kernels.hpp"

namespace sepsim::simd {

namespace {

std::atomic<int> g_forced{0};  // 0 auto, 1 scalar, 2 avx2

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

bool use_avx2() {
  const int f = g_forced.load(std::memory_order_relaxed);
  if (f == 1) return false;
  if (f == 2) return true;
  static const bool has = cpu_has_avx2();
  return has;
}

}  // namespace

bool avx2_available() { return cpu_has_avx2(); }

const char* active_backend() { return use_avx2() ? "avx2" : "scalar"; }

void force_backend(const char* name) {
  if (std::strcmp(name, "scalar") == 0) {
    g_forced.store(1);
  } else if (std::strcmp(name, "avx2") == 0) {
    if (!cpu_has_avx2()) throw std::runtime_error("avx2 backend not available on this cpu");
    g_forced.store(2);
  } else if (std::strcmp(name, "auto") == 0) {
    g_forced.store(0);
  } else {
    throw std::invalid_argument("unknown simd backend");
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  return use_avx2() ? avx2::dot(a, b, n) : scalar::dot(a, b, n);
}

void gauss_accumulate(double* out, const double* x, std::size_t n, double center,
                      double inv_two_t, double scale) {
  if (use_avx2())
    avx2::gauss_accumulate(out, x, n, center, inv_two_t, scale);
  else
    scalar::gauss_accumulate(out, x, n, center, inv_two_t, scale);
}

double sup_abs_diff(const double* a, const double* b, std::size_t n) {
  return use_avx2() ? avx2::sup_abs_diff(a, b, n) : scalar::sup_abs_diff(a, b, n);
}

}  // namespace sepsim::simd
