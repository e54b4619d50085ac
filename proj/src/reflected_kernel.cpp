#include "sepsim/reflected_kernel.hpp"

#include <cmath>
#include <string>

#include "sepsim/errors.hpp"
#include "sepsim/simd/kernels.hpp"

namespace sepsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t))
    throw ConfigError("kernel time must be finite and > 0, got " + std::to_string(t));
}

void check_point(double x, const char* name) {
  if (!(x >= -1.0 && x <= 1.0))
    throw ConfigError(std::string(name) + " must lie in [-1, 1], got " + std::to_string(x));
}

// Sum of Gaussians centered at base + 4k over every k whose center lies
// within `reach` of r, never fewer than [-min_k, min_k]; with fixed_k the
// range is exactly [-fixed_k, fixed_k].
double image_family_sum(double t, double r, double base, double reach,
                        const KernelConfig& cfg) {
  long k_lo, k_hi;
  if (cfg.fixed_image_k) {
    k_lo = -*cfg.fixed_image_k;
    k_hi = *cfg.fixed_image_k;
  } else {
    k_lo = static_cast<long>(std::ceil((r - base - reach) / 4.0));
    k_hi = static_cast<long>(std::floor((r - base + reach) / 4.0));
    if (k_lo > -cfg.min_image_k) k_lo = -cfg.min_image_k;
    if (k_hi < cfg.min_image_k) k_hi = cfg.min_image_k;
  }
  const double inv2t = 0.5 / t;
  double s = 0.0;
  for (long k = k_lo; k <= k_hi; ++k) {
    const double d = r - (base + 4.0 * k);
    s += std::exp(-d * d * inv2t);
  }
  return s;
}

}  // namespace

double KernelConfig::window(double t) const { return 8.0 * std::sqrt(t) + 2.0; }

double reflect(double x) {
  double y = std::fmod(x + 1.0, 4.0);
  if (y < 0.0) y += 4.0;
  return y <= 2.0 ? y - 1.0 : 3.0 - y;
}

double gauss(double t, double r, double rp) {
  check_time(t);
  const double d = r - rp;
  return std::exp(-d * d * 0.5 / t) / std::sqrt(2.0 * kPi * t);
}

double kernel(double t, double r, double rp, const KernelConfig& cfg) {
  check_time(t);
  check_point(r, "r");
  check_point(rp, "r'");
  cfg.validate();
  const double reach = cfg.window(t);
  const double norm = 1.0 / std::sqrt(2.0 * kPi * t);
  if (rp == 1.0 || rp == -1.0) {
    // The direct and mirrored families coincide at the walls; keep one copy
    // of the images and double it.
    return 2.0 * norm * image_family_sum(t, r, rp, reach, cfg);
  }
  return norm * (image_family_sum(t, r, rp, reach, cfg) +
                 image_family_sum(t, r, 2.0 - rp, reach, cfg));
}

void kernel_row(double t, double r, const double* x, std::size_t n, double* out,
                const KernelConfig& cfg) {
  check_time(t);
  check_point(r, "r");
  cfg.validate();
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
  const double reach = cfg.window(t);
  const double norm = 1.0 / std::sqrt(2.0 * kPi * t);
  const double inv2t = 0.5 / t;

  // As a function of the column coordinate the row is a sum of Gaussians
  // centered at r - 4k (direct) and 2 - r + 4k (mirrored). A center matters
  // for some column in [-1, 1] iff it lies within reach + 1 of the origin.
  const auto span = [&](double center0, long& k_lo, long& k_hi) {
    if (cfg.fixed_image_k) {
      k_lo = -*cfg.fixed_image_k;
      k_hi = *cfg.fixed_image_k;
      return;
    }
    // centers center0 + 4k with |center| <= 1 + reach
    k_lo = static_cast<long>(std::ceil((-1.0 - reach - center0) / 4.0));
    k_hi = static_cast<long>(std::floor((1.0 + reach - center0) / 4.0));
    if (k_lo > -cfg.min_image_k) k_lo = -cfg.min_image_k;
    if (k_hi < cfg.min_image_k) k_hi = cfg.min_image_k;
  };

  long k_lo, k_hi;
  span(r, k_lo, k_hi);
  for (long k = k_lo; k <= k_hi; ++k)
    simd::gauss_accumulate(out, x, n, r - 4.0 * k, inv2t, norm);
  span(2.0 - r, k_lo, k_hi);
  for (long k = k_lo; k <= k_hi; ++k)
    simd::gauss_accumulate(out, x, n, 2.0 - r + 4.0 * k, inv2t, norm);
}

GridFunction apply_semigroup(double t, const GridFunction& g, const KernelConfig& cfg) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw ConfigError("semigroup time must be finite and >= 0");
  if (t == 0.0) return g;
  cfg.validate();

  const std::size_t n = static_cast<std::size_t>(g.nodes());
  const std::vector<double> x = g.node_coordinates();
  std::vector<double> wv(n);
  const double h = g.spacing();
  for (std::size_t i = 0; i < n; ++i) wv[i] = h * g.values[i];
  wv.front() *= 0.5;
  wv.back() *= 0.5;

  GridFunction out = GridFunction::constant(g.m, 0.0);
  std::vector<double> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    kernel_row(t, x[i], x.data(), n, row.data(), cfg);
    out.values[i] = simd::dot(row.data(), wv.data(), n);
  }
  return out;
}

}  // namespace sepsim
