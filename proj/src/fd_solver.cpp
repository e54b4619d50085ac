#include "sepsim/fd_solver.hpp"

#include <cmath>
#include <string>

#include "sepsim/errors.hpp"
#include "sepsim/mathutil.hpp"

namespace sepsim {

FdSolver::FdSolver(GridFunction rho0, double j, int k_boundary, double dt)
    : j_(j), k_(k_boundary), dt_(dt), rho_(std::move(rho0)) {
  if (!(j_ >= 0.0) || !std::isfinite(j_))
    throw ConfigError("boundary intensity j must be finite and >= 0");
  if (k_ < 1) throw ConfigError("boundary window size must be >= 1");
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw ConfigError("dt must be > 0");
  if (dt_ * rho_.m > 2.0 + 1e-12)
    throw ConfigError("dt too large for this grid: need dt * m <= 2, got " +
                      std::to_string(dt_ * rho_.m));
  require_range(rho_, 0.0, 1.0, 1e-12, "initial profile");

  const std::size_t n = static_cast<std::size_t>(rho_.nodes());
  const double d2 = rho_.spacing() * rho_.spacing();
  const double beta = dt_ / (2.0 * d2);  // dt/2 * (1/delta^2)

  // A: interior rows (1, -2, 1)/(2 delta^2); reflecting end rows
  // (-1, 1)/delta^2 and (1, -1)/delta^2 from the ghost-node elimination.
  std::vector<double> ldiag(n), lsup(n);
  lsub_.assign(n, 0.0);
  rsub_.assign(n, 0.0);
  rdiag_.assign(n, 0.0);
  rsup_.assign(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    lsub_[i] = -0.5 * beta;
    ldiag[i] = 1.0 + beta;
    lsup[i] = -0.5 * beta;
    rsub_[i] = 0.5 * beta;
    rdiag_[i] = 1.0 - beta;
    rsup_[i] = 0.5 * beta;
  }
  ldiag[0] = 1.0 + beta;
  lsup[0] = -beta;
  rdiag_[0] = 1.0 - beta;
  rsup_[0] = beta;
  lsub_[n - 1] = -beta;
  ldiag[n - 1] = 1.0 + beta;
  rsub_[n - 1] = beta;
  rdiag_[n - 1] = 1.0 - beta;

  // Thomas prefactorization of the left matrix.
  lcp_.assign(n, 0.0);
  ldenom_.assign(n, 0.0);
  ldenom_[0] = 1.0 / ldiag[0];
  lcp_[0] = lsup[0] * ldenom_[0];
  for (std::size_t i = 1; i < n; ++i) {
    ldenom_[i] = 1.0 / (ldiag[i] - lsub_[i] * lcp_[i - 1]);
    lcp_[i] = lsup[i] * ldenom_[i];
  }
  rhs_.resize(n);
  scratch_.resize(n);
}

double FdSolver::inflow_right() const {
  return 0.5 * j_ * (1.0 - int_pow(rho_.values.back(), k_));
}

double FdSolver::outflow_left() const {
  return 0.5 * j_ * (1.0 - int_pow(1.0 - rho_.values.front(), k_));
}

void FdSolver::step() {
  const std::size_t n = rhs_.size();
  const std::vector<double>& v = rho_.values;
  const double inv_d = 1.0 / rho_.spacing();

  // rhs = (I + dt/2 A) rho + dt b(rho), boundary fluxes explicit.
  rhs_[0] = rdiag_[0] * v[0] + rsup_[0] * v[1] - dt_ * 2.0 * outflow_left() * inv_d;
  for (std::size_t i = 1; i + 1 < n; ++i)
    rhs_[i] = rsub_[i] * v[i - 1] + rdiag_[i] * v[i] + rsup_[i] * v[i + 1];
  rhs_[n - 1] =
      rsub_[n - 1] * v[n - 2] + rdiag_[n - 1] * v[n - 1] + dt_ * 2.0 * inflow_right() * inv_d;

  // Thomas solve of (I - dt/2 A) x = rhs.
  scratch_[0] = rhs_[0] * ldenom_[0];
  for (std::size_t i = 1; i < n; ++i)
    scratch_[i] = (rhs_[i] - lsub_[i] * scratch_[i - 1]) * ldenom_[i];
  std::vector<double>& x = rho_.values;
  x[n - 1] = scratch_[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = scratch_[i] - lcp_[i] * x[i + 1];

  ++steps_;
  require_range(rho_, 0.0, 1.0, 10.0 * dt_, "density profile");
}

void FdSolver::advance(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("advance time must be >= 0");
  const long long target = std::llround(t / dt_);
  if (std::fabs(static_cast<double>(target) * dt_ - t) > 1e-9 * std::max(1.0, t))
    throw ConfigError("advance time must be a multiple of dt");
  while (steps_ < static_cast<std::size_t>(std::max<long long>(target, 0))) step();
}

GridFunction fd_solve(const GridFunction& rho0, double j, int k_boundary, double t_end,
                      double dt) {
  FdSolver solver(rho0, j, k_boundary, dt);
  solver.advance(t_end);
  return solver.profile();
}

}  // namespace sepsim
