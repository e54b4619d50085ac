#pragma once

#include <functional>
#include <vector>

#include "sepsim/errors.hpp"

namespace sepsim {

/// Scalar field sampled on the uniform grid r_i = (2i - m)/m, i = 0..m,
/// over [-1, 1]. Integrals are trapezoidal.
struct GridFunction {
  int m = 0;
  std::vector<double> values;

  GridFunction() = default;
  GridFunction(int m_, std::vector<double> v) : m(m_), values(std::move(v)) {
    if (m < 2) throw ConfigError("grid needs m >= 2");
    if (values.size() != static_cast<std::size_t>(m + 1))
      throw ConfigError("grid value count must be m+1");
  }

  static GridFunction constant(int m, double value) {
    return GridFunction(m, std::vector<double>(static_cast<std::size_t>(m + 1), value));
  }

  static GridFunction sample(int m, const std::function<double(double)>& f) {
    std::vector<double> v(static_cast<std::size_t>(m + 1));
    for (int i = 0; i <= m; ++i) v[static_cast<std::size_t>(i)] = f((2.0 * i - m) / m);
    return GridFunction(m, std::move(v));
  }

  double node(int i) const { return (2.0 * i - m) / m; }
  double spacing() const { return 2.0 / m; }
  int nodes() const { return m + 1; }

  std::vector<double> node_coordinates() const {
    std::vector<double> r(static_cast<std::size_t>(m + 1));
    for (int i = 0; i <= m; ++i) r[static_cast<std::size_t>(i)] = node(i);
    return r;
  }

  double integrate() const {
    double s = 0.5 * (values.front() + values.back());
    for (int i = 1; i < m; ++i) s += values[static_cast<std::size_t>(i)];
    return s * spacing();
  }

  /// Linear interpolation; r clamped to [-1, 1].
  double value_at(double r) const {
    if (r <= -1.0) return values.front();
    if (r >= 1.0) return values.back();
    const double p = (r + 1.0) / spacing();
    const int i = static_cast<int>(p);
    const double w = p - i;
    return values[static_cast<std::size_t>(i)] * (1.0 - w) +
           values[static_cast<std::size_t>(i + 1)] * w;
  }

  GridFunction resampled(int m2) const {
    if (m2 == m) return *this;
    GridFunction out = constant(m2, 0.0);
    for (int i = 0; i <= m2; ++i) out.values[static_cast<std::size_t>(i)] = value_at(out.node(i));
    return out;
  }

  double sup_abs_diff(const GridFunction& other) const;
};

/// Throws unless every value lies in [lo - slack, hi + slack].
void require_range(const GridFunction& g, double lo, double hi, double slack,
                   const char* what);

}  // namespace sepsim
