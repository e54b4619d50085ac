#pragma once

#include <cmath>

#include "sepsim/errors.hpp"

namespace sepsim {

/// Parameters of the exclusion process on {-n, ..., n} with a birth channel
/// acting on the rightmost empty site of I+ = [n-k+1, n] and a death channel
/// acting on the leftmost occupied site of I- = [-n, -n+k-1].
///
/// Rates are in macroscopic time units: each discrepant bond exchanges at
/// rate n^2/2, each boundary channel fires at rate n*j/2 (firing into a full
/// I+ / empty I- aborts but still consumes time).
struct ModelParams {
  int n = 0;           ///< lattice half-width, sites run over [-n, n]
  int k_boundary = 1;  ///< boundary interval length K
  double j = 1.0;      ///< reservoir strength

  void validate() const {
    if (n < 1) throw ConfigError("n must be >= 1");
    if (k_boundary < 1) throw ConfigError("k_boundary must be >= 1");
    if (k_boundary > n)
      throw ConfigError("k_boundary must be <= n so the boundary intervals are disjoint");
    if (!(j > 0.0) || !std::isfinite(j)) throw ConfigError("j must be positive and finite");
  }

  int sites() const { return 2 * n + 1; }
  int bonds() const { return 2 * n; }

  double exchange_rate_per_bond() const { return 0.5 * static_cast<double>(n) * n; }
  double channel_rate() const { return 0.5 * n * j; }  ///< each of birth, death

  // I+ = [n-k+1, n], I- = [-n, -n+k-1] in site coordinates.
  int iplus_lo() const { return n - k_boundary + 1; }
  int iminus_hi() const { return -n + k_boundary - 1; }
};

}  // namespace sepsim
