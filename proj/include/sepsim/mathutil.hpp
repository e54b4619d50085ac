#pragma once

namespace sepsim {

/// x^k for integer k >= 0 by squaring; deterministic across platforms,
/// unlike std::pow on some libms.
inline double int_pow(double x, int k) {
  double r = 1.0, p = x;
  for (; k > 0; k >>= 1) {
    if (k & 1) r *= p;
    p *= p;
  }
  return r;
}

}  // namespace sepsim
