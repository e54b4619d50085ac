#include "sepsim/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sepsim/errors.hpp"
#include "sepsim/mathutil.hpp"
#include "sepsim/simd/kernels.hpp"

namespace sepsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Largest offset whose Gaussian time integral is still representable above
// the 1e-18 scale at horizon t.
double image_reach(double t) { return std::sqrt(90.0 * t) + 4.0; }

}  // namespace

double gauss_time_integral(double d, double t) {
  if (t <= 0.0) return 0.0;
  if (d == 0.0) return std::sqrt(2.0 * t / kPi);
  const double z = d / std::sqrt(2.0 * t);
  if (z > 26.0) return 0.0;  // both terms below 1e-290
  return std::sqrt(2.0 * t / kPi) * std::exp(-z * z) - d * std::erfc(z);
}

double corner_weight_same(double t0, double t1) {
  // P_s(1, 1): one image family at offsets 4k, weight 2.
  double s = gauss_time_integral(0.0, t1) - gauss_time_integral(0.0, t0);
  for (double d = 4.0, reach = image_reach(t1); d <= reach; d += 4.0)
    s += 2.0 * (gauss_time_integral(d, t1) - gauss_time_integral(d, t0));
  return 2.0 * s;
}

double corner_weight_cross(double t0, double t1) {
  // P_s(1, -1): images at offsets 2 + 4k paired with -2 - 4k.
  double s = 0.0;
  for (double d = 2.0, reach = image_reach(t1); d <= reach; d += 4.0)
    s += gauss_time_integral(d, t1) - gauss_time_integral(d, t0);
  return 4.0 * s;
}

double boundary_weight(double r, int sign, double t0, double t1) {
  const double sigma = sign >= 0 ? 1.0 : -1.0;
  const double reach = image_reach(t1);
  const long kmax = static_cast<long>(std::ceil((reach + 2.0) / 4.0)) + 1;
  double s = 0.0;
  for (long k = -kmax; k <= kmax; ++k) {
    const double d = std::fabs(r - sigma - 4.0 * k);
    s += gauss_time_integral(d, t1) - gauss_time_integral(d, t0);
  }
  return 2.0 * s;
}

VolterraSolver::VolterraSolver(GridFunction rho0, double j, int k_boundary, double h,
                               KernelConfig cfg)
    : j_(j), k_(k_boundary), h_(h), cfg_(cfg), rho0_(std::move(rho0)) {
  if (!(j_ >= 0.0) || !std::isfinite(j_))
    throw ConfigError("boundary intensity j must be finite and >= 0");
  if (k_ < 1) throw ConfigError("boundary window size must be >= 1");
  if (!(h_ > 0.0) || !std::isfinite(h_)) throw ConfigError("time step h must be > 0");
  cfg_.validate();
  require_range(rho0_, 0.0, 1.0, 1e-12, "initial profile");

  rho0_nodes_ = rho0_.node_coordinates();
  rho0_wv_.resize(rho0_nodes_.size());
  const double dr = rho0_.spacing();
  for (std::size_t i = 0; i < rho0_wv_.size(); ++i) rho0_wv_[i] = dr * rho0_.values[i];
  rho0_wv_.front() *= 0.5;
  rho0_wv_.back() *= 0.5;

  const double up0 = rho0_.values.back();
  const double um0 = rho0_.values.front();
  traces_.j = j_;
  traces_.k_boundary = k_;
  traces_.h = h_;
  traces_.u_plus.push_back(up0);
  traces_.u_minus.push_back(um0);
  gp_.push_back(1.0 - int_pow(up0, k_));
  gm_.push_back(1.0 - int_pow(1.0 - um0, k_));
}

std::size_t VolterraSolver::step_index(double t, const char* what) const {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw ConfigError(std::string(what) + " must be finite and >= 0");
  const double steps = t / h_;
  const long long n = std::llround(steps);
  if (n < 0 || std::fabs(static_cast<double>(n) * h_ - t) > 1e-9 * std::max(1.0, t))
    throw ConfigError(std::string(what) + " must be a multiple of the time step h");
  return static_cast<std::size_t>(n);
}

void VolterraSolver::reserve(std::size_t target_steps) {
  if (cap_ >= target_steps) return;
  const std::size_t done = traces_.steps();
  std::size_t new_cap = std::max<std::size_t>(1024, 2 * cap_);
  new_cap = std::max(new_cap, target_steps);
  std::vector<double> np(new_cap, 0.0), nm(new_cap, 0.0);
  // Finalized midpoints occupy the top `done` slots; keep them right-anchored.
  for (std::size_t i = 0; i < done; ++i) {
    np[new_cap - done + i] = revgp_[cap_ - done + i];
    nm[new_cap - done + i] = revgm_[cap_ - done + i];
  }
  revgp_ = std::move(np);
  revgm_ = std::move(nm);
  cap_ = new_cap;
  traces_.u_plus.reserve(target_steps + 1);
  traces_.u_minus.reserve(target_steps + 1);
  gp_.reserve(target_steps + 1);
  gm_.reserve(target_steps + 1);
  wa_.reserve(target_steps);
  wc_.reserve(target_steps);
}

double VolterraSolver::hom_value(double t, double r, std::vector<double>& row_scratch) const {
  row_scratch.resize(rho0_nodes_.size());
  kernel_row(t, r, rho0_nodes_.data(), rho0_nodes_.size(), row_scratch.data(), cfg_);
  return simd::dot(row_scratch.data(), rho0_wv_.data(), rho0_nodes_.size());
}

void VolterraSolver::march_one(std::size_t n) {
  const double tn = static_cast<double>(n) * h_;
  wa_.push_back(corner_weight_same(tn - h_, tn));
  wc_.push_back(corner_weight_cross(tn - h_, tn));

  std::vector<double> row;
  const double homp = hom_value(tn, 1.0, row);
  const double homm = hom_value(tn, -1.0, row);

  // Convolution over the n-1 finalized intervals; interval n-1 (the newest)
  // holds the unknown and is handled in the fixed point below.
  double ha_gp = 0.0, hc_gp = 0.0, ha_gm = 0.0, hc_gm = 0.0;
  if (n >= 2) {
    const double* rp = revgp_.data() + (cap_ - n) + 1;
    const double* rm = revgm_.data() + (cap_ - n) + 1;
    ha_gp = simd::dot(wa_.data() + 1, rp, n - 1);
    hc_gp = simd::dot(wc_.data() + 1, rp, n - 1);
    ha_gm = simd::dot(wa_.data() + 1, rm, n - 1);
    hc_gm = simd::dot(wc_.data() + 1, rm, n - 1);
  }
  const double wa0 = wa_[0], wc0 = wc_[0];
  const double half_j = 0.5 * j_;

  const double up_prev = traces_.u_plus.back();
  const double um_prev = traces_.u_minus.back();
  const double gp_prev = gp_.back();
  const double gm_prev = gm_.back();

  // Flat predictor, then one corrector sweep. The newest-interval weight is
  // O(sqrt(h)), so the map is strongly contracting for sane parameters.
  double up = up_prev, um = um_prev;
  double gpn = gp_prev, gmn = gm_prev;
  double delta0 = 0.0, delta1 = 0.0;
  for (int sweep = 0; sweep < 2; ++sweep) {
    const double ghp = 0.5 * (gp_prev + gpn);
    const double ghm = 0.5 * (gm_prev + gmn);
    const double new_up = homp + half_j * (ha_gp + wa0 * ghp - hc_gm - wc0 * ghm);
    const double new_um = homm + half_j * (hc_gp + wc0 * ghp - ha_gm - wa0 * ghm);
    const double delta =
        std::max(std::fabs(new_up - up), std::fabs(new_um - um));
    (sweep == 0 ? delta0 : delta1) = delta;
    up = new_up;
    um = new_um;
    gpn = 1.0 - int_pow(up, k_);
    gmn = 1.0 - int_pow(1.0 - um, k_);
  }
  if (delta1 > 0.9 * delta0 + 1e-12)
    throw NonConvergence("boundary fixed point not contracting at t = " + std::to_string(tn) +
                         " (h too large for this j, K)");
  const double slack = 10.0 * h_;
  if (!(up >= -slack && up <= 1.0 + slack) || !(um >= -slack && um <= 1.0 + slack))
    throw RangeViolation("boundary trace left [0, 1] at t = " + std::to_string(tn));

  traces_.u_plus.push_back(up);
  traces_.u_minus.push_back(um);
  gp_.push_back(gpn);
  gm_.push_back(gmn);
  revgp_[cap_ - n] = 0.5 * (gp_prev + gpn);
  revgm_[cap_ - n] = 0.5 * (gm_prev + gmn);
}

void VolterraSolver::extend(double t_end) {
  const std::size_t target = step_index(t_end, "t_end");
  if (target <= traces_.steps()) return;
  reserve(target);
  for (std::size_t n = traces_.steps() + 1; n <= target; ++n) march_one(n);
}

GridFunction VolterraSolver::profile_at(double t, int out_m) {
  const std::size_t nt = step_index(t, "profile time");
  if (nt == 0) return rho0_.resampled(out_m);
  extend(t);

  GridFunction out = GridFunction::constant(out_m, 0.0);
  const std::vector<double> r = out.node_coordinates();
  if (cache_m_ != out_m) {
    cache_m_ = out_m;
    node_wp_.assign(r.size(), {});
    node_wm_.assign(r.size(), {});
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t m = node_wp_[i].size(); m < nt; ++m) {
      const double t0 = static_cast<double>(m) * h_;
      node_wp_[i].push_back(boundary_weight(r[i], +1, t0, t0 + h_));
      node_wm_[i].push_back(boundary_weight(r[i], -1, t0, t0 + h_));
    }
  }

  const double half_j = 0.5 * j_;
  const double* rp = revgp_.data() + (cap_ - nt);
  const double* rm = revgm_.data() + (cap_ - nt);
  std::vector<double> row;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double conv = simd::dot(node_wp_[i].data(), rp, nt) -
                        simd::dot(node_wm_[i].data(), rm, nt);
    out.values[i] = hom_value(t, r[i], row) + half_j * conv;
  }
  return out;
}

BoundaryTraces solve_boundary_traces(const GridFunction& rho0, double j, int k_boundary,
                                     double t_end, double h, const KernelConfig& cfg) {
  VolterraSolver solver(rho0, j, k_boundary, h, cfg);
  solver.extend(t_end);
  return solver.traces();
}

GridFunction reconstruct_profile(const GridFunction& rho0, const BoundaryTraces& traces,
                                 double t, int out_m, const KernelConfig& cfg) {
  if (!(traces.h > 0.0)) throw ConfigError("traces have no time step");
  if (traces.u_plus.size() != traces.u_minus.size() || traces.u_plus.empty())
    throw ConfigError("boundary traces are malformed");
  const double steps = t / traces.h;
  const long long nt_ll = std::llround(steps);
  if (nt_ll < 0 || std::fabs(static_cast<double>(nt_ll) * traces.h - t) > 1e-9 * std::max(1.0, t))
    throw ConfigError("profile time must be a multiple of the trace step");
  const std::size_t nt = static_cast<std::size_t>(nt_ll);
  if (nt > traces.steps()) throw ConfigError("profile time exceeds the trace horizon");
  if (nt == 0) return rho0.resampled(out_m);

  // Reversed midpoint histories, as in the solver.
  std::vector<double> revgp(nt), revgm(nt);
  auto gplus = [&](double u) { return 1.0 - int_pow(u, traces.k_boundary); };
  auto gminus = [&](double u) { return 1.0 - int_pow(1.0 - u, traces.k_boundary); };
  for (std::size_t l = 0; l < nt; ++l) {
    revgp[nt - 1 - l] = 0.5 * (gplus(traces.u_plus[l]) + gplus(traces.u_plus[l + 1]));
    revgm[nt - 1 - l] = 0.5 * (gminus(traces.u_minus[l]) + gminus(traces.u_minus[l + 1]));
  }

  const std::vector<double> nodes = rho0.node_coordinates();
  std::vector<double> wv(nodes.size());
  const double dr = rho0.spacing();
  for (std::size_t i = 0; i < wv.size(); ++i) wv[i] = dr * rho0.values[i];
  wv.front() *= 0.5;
  wv.back() *= 0.5;

  GridFunction out = GridFunction::constant(out_m, 0.0);
  const std::vector<double> r = out.node_coordinates();
  const double half_j = 0.5 * traces.j;
  std::vector<double> row(nodes.size()), wp(nt), wm(nt);
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t m = 0; m < nt; ++m) {
      const double t0 = static_cast<double>(m) * traces.h;
      wp[m] = boundary_weight(r[i], +1, t0, t0 + traces.h);
      wm[m] = boundary_weight(r[i], -1, t0, t0 + traces.h);
    }
    kernel_row(t, r[i], nodes.data(), nodes.size(), row.data(), cfg);
    const double hom = simd::dot(row.data(), wv.data(), nodes.size());
    out.values[i] = hom + half_j * (simd::dot(wp.data(), revgp.data(), nt) -
                                    simd::dot(wm.data(), revgm.data(), nt));
  }
  return out;
}

}  // namespace sepsim
