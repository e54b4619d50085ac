#pragma once

namespace sepsim {

/// Stationary linear profile of the boundary-driven diffusion together with
/// the boundary density alpha and the current J that sustain it.
///
/// alpha solves alpha + j*alpha^K = j + 1/2 on [1/2, 1]; the left boundary
/// density is 1 - alpha by particle-hole symmetry and the profile is
/// rho(r) = J*r + 1/2 with J = alpha - 1/2.
struct StationarySolution {
  double j = 0.0;
  int k_boundary = 1;
  double alpha = 0.5;
  double current = 0.0;    // J = alpha - 1/2
  double residual = 0.0;   // |alpha + j*alpha^K - j - 1/2| at the returned root

  double profile(double r) const { return current * r + 0.5; }

  /// The same current computed from the injection side, j*(1 - alpha^K).
  /// Agrees with `current` up to the bisection residual.
  double flux_current() const;
};

/// Bisection on [1/2, 1]; the bracket always contains exactly one root
/// because the left side is strictly increasing in alpha.
StationarySolution solve_stationary(double j, int k_boundary);

}  // namespace sepsim
