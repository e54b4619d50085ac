#pragma once

#include <vector>

#include "sepsim/grid.hpp"

namespace sepsim {

/// Crank-Nicolson integrator for the boundary-driven diffusion
///   d rho/dt = (1/2) rho'' on (-1, 1),
///   (1/2) rho'(+1) = (j/2) (1 - rho(+1)^K)        [injection]
///   (1/2) rho'(-1) = (j/2) (1 - (1 - rho(-1))^K)  [extraction]
/// on the uniform grid of the initial profile. The fluxes enter through
/// ghost nodes, so with the trapezoidal mass functional the scheme conserves
/// mass up to the boundary flux exactly; the diffusion is integrated
/// implicitly (one prefactored tridiagonal solve per step) and the boundary
/// nonlinearity explicitly. The stationary linear profile is an exact fixed
/// point of the discrete update.
class FdSolver {
 public:
  /// dt must satisfy dt * m <= 2 (explicit boundary term accuracy envelope).
  FdSolver(GridFunction rho0, double j, int k_boundary, double dt);

  /// One step of size dt.
  void step();

  /// Integrate until t (a multiple of dt within rounding); no-op if past it.
  void advance(double t);

  double time() const { return static_cast<double>(steps_) * dt_; }
  double dt() const { return dt_; }
  const GridFunction& profile() const { return rho_; }
  double mass() const { return rho_.integrate(); }

  /// Instantaneous boundary rates (j/2) g+(rho(+1)) and (j/2) g-(rho(-1)).
  double inflow_right() const;
  double outflow_left() const;

 private:
  double j_;
  int k_;
  double dt_;
  GridFunction rho_;
  std::size_t steps_ = 0;

  // Prefactored Thomas data for (I - dt/2 A) and the explicit (I + dt/2 A).
  std::vector<double> lsub_, lcp_, ldenom_;
  std::vector<double> rsub_, rdiag_, rsup_;
  std::vector<double> rhs_, scratch_;
};

/// One-call front end.
GridFunction fd_solve(const GridFunction& rho0, double j, int k_boundary, double t_end,
                      double dt);

}  // namespace sepsim
