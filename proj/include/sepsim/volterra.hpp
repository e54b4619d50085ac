#pragma once

#include <cstddef>
#include <vector>

#include "sepsim/grid.hpp"
#include "sepsim/reflected_kernel.hpp"

namespace sepsim {

/// Time integral of the free Gaussian at fixed offset d >= 0:
/// int_0^t exp(-d^2/(2s)) / sqrt(2 pi s) ds
///   = sqrt(2t/pi) exp(-d^2/(2t)) - d erfc(d / sqrt(2t)).
/// Closed form, so the singular s^{-1/2} factor never needs quadrature.
double gauss_time_integral(double d, double t);

/// int_{t0}^{t1} P_s(1, 1) ds and int_{t0}^{t1} P_s(1, -1) ds. By symmetry
/// these also serve the (-1, -1) and (-1, 1) corners.
double corner_weight_same(double t0, double t1);
double corner_weight_cross(double t0, double t1);

/// int_{t0}^{t1} P_s(r, sign) ds for sign = +1 or -1.
double boundary_weight(double r, int sign, double t0, double t1);

/// Boundary densities u(t, +1) and u(t, -1) sampled every h, entry l at
/// time l*h, starting from the initial profile's boundary values.
struct BoundaryTraces {
  double j = 0.0;
  int k_boundary = 1;
  double h = 0.0;
  std::vector<double> u_plus, u_minus;

  std::size_t steps() const { return u_plus.empty() ? 0 : u_plus.size() - 1; }
  double t_end() const { return h * static_cast<double>(steps()); }
};

/// Marches the closed pair of boundary integral equations
///   u(t, s1) = (P_t rho0)(s1)
///     + (j/2) int_0^t [ P_{t-s}(s1, 1) g+(s) - P_{t-s}(s1, -1) g-(s) ] ds
/// with g+ = 1 - u(., +1)^K, g- = 1 - (1 - u(., -1))^K, on a uniform time
/// grid of pitch h. The nonlinearities are treated as piecewise constant at
/// their midpoint values over each step; the kernel factor is integrated in
/// closed form, so the step error is O(h^2) despite the s^{-1/2} singularity.
///
/// Each step does one fixed-point sweep from a flat predictor plus one
/// corrector; if the corrector moves the iterate by more than 0.9x the
/// predictor correction (plus slack) the contraction assumption is violated
/// and NonConvergence is thrown. Trace values escaping [0 - 10h, 1 + 10h]
/// throw RangeViolation.
class VolterraSolver {
 public:
  VolterraSolver(GridFunction rho0, double j, int k_boundary, double h,
                 KernelConfig cfg = {});

  /// March forward until t_end (a multiple of h within rounding). No-op if
  /// already past it.
  void extend(double t_end);

  const BoundaryTraces& traces() const { return traces_; }
  double h() const { return h_; }
  double j() const { return j_; }
  int k_boundary() const { return k_; }
  const GridFunction& initial() const { return rho0_; }

  /// Bulk profile at time t (a multiple of h, auto-extending the march) on
  /// an out_m grid:
  ///   rho(t, r) = (P_t rho0)(r)
  ///     + (j/2) int_0^t [ P_{t-s}(r, 1) g+(s) - P_{t-s}(r, -1) g-(s) ] ds
  /// with the same midpoint rule as the march. Per-node time weights are
  /// cached, so repeated sampling on one grid only pays for new steps.
  GridFunction profile_at(double t, int out_m);

 private:
  std::size_t step_index(double t, const char* what) const;
  void march_one(std::size_t n);
  void reserve(std::size_t target_steps);
  double hom_value(double t, double r, std::vector<double>& row_scratch) const;

  double j_;
  int k_;
  double h_;
  KernelConfig cfg_;
  GridFunction rho0_;
  std::vector<double> rho0_nodes_, rho0_wv_;

  BoundaryTraces traces_;
  std::vector<double> gp_, gm_;  // nonlinearities at step times
  // Midpoint histories stored right-anchored and reversed: the value for
  // interval l sits at slot cap_ - 1 - l, so the convolution at step n is a
  // contiguous dot against the weight arrays.
  std::vector<double> revgp_, revgm_;
  std::size_t cap_ = 0;
  std::vector<double> wa_, wc_;  // corner weights per interval

  // profile_at cache: per-node boundary weights for the active output grid
  int cache_m_ = -1;
  std::vector<std::vector<double>> node_wp_, node_wm_;  // [node][interval]
};

/// One-call front end for the march.
BoundaryTraces solve_boundary_traces(const GridFunction& rho0, double j, int k_boundary,
                                     double t_end, double h, const KernelConfig& cfg = {});

/// Bulk profile at time t from previously computed traces (t <= t_end of the
/// traces). Rebuilds the time weights on every call; for repeated sampling
/// keep a VolterraSolver instead.
GridFunction reconstruct_profile(const GridFunction& rho0, const BoundaryTraces& traces,
                                 double t, int out_m, const KernelConfig& cfg = {});

}  // namespace sepsim
