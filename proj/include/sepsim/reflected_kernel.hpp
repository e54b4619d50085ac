#pragma once

#include <optional>
#include <vector>

#include "sepsim/grid.hpp"

namespace sepsim {

/// Image-sum truncation policy for the reflected (Neumann) heat kernel.
/// Adaptive mode keeps every image within 8*sqrt(t)+2 of the evaluation
/// point and never fewer than min_image_k periods of both families;
/// fixed_image_k overrides with a hard symmetric count (used by the
/// truncation-honesty tests). tail_eps is the budget any admissible
/// truncation change may move a reported value by.
struct KernelConfig {
  double tail_eps = 1e-12;
  int min_image_k = 2;
  std::optional<int> fixed_image_k;
  int quadrature_m = 400;

  void validate() const {
    if (!(tail_eps > 0.0)) throw ConfigError("kernel tail_eps must be > 0");
    if (min_image_k < 1) throw ConfigError("kernel min_image_k must be >= 1");
    if (fixed_image_k && *fixed_image_k < 1) throw ConfigError("fixed_image_k must be >= 1");
    if (quadrature_m < 2) throw ConfigError("kernel quadrature_m must be >= 2");
  }

  double window(double t) const;
};

/// Fold x onto [-1, 1]: identity there, 2 - x on [1, 3], 4-periodic.
double reflect(double x);

/// Free-space Gaussian kernel e^{-(r-r')^2/(2t)} / sqrt(2 pi t); t > 0.
double gauss(double t, double r, double rp);

/// Reflected kernel P_t(r, r') on [-1,1]^2 by the method of images: the sum
/// of Gaussians over the preimages {r' + 4k} and {2 - r' + 4k}. At r' = ±1
/// the two families coincide and each kept image carries weight 2.
double kernel(double t, double r, double rp, const KernelConfig& cfg = {});

/// out[i] = P_t(r, x[i]) for nodes x[i] in [-1, 1]; vectorized over the row.
void kernel_row(double t, double r, const double* x, std::size_t n, double* out,
                const KernelConfig& cfg = {});

/// Trapezoidal application of P_t to a grid function; t = 0 is the identity.
GridFunction apply_semigroup(double t, const GridFunction& g, const KernelConfig& cfg = {});

}  // namespace sepsim
