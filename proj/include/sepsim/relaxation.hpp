#pragma once

#include <functional>
#include <vector>

#include "sepsim/grid.hpp"

namespace sepsim {

/// Least-squares fit of log y = log_a - rate * t. Requires y > 0.
struct ExpFit {
  double rate = 0.0;
  double log_a = 0.0;
  double r2 = 0.0;
};

ExpFit fit_log_linear(const std::vector<double>& t, const std::vector<double>& y);

/// Sup-norm gap between two trajectories sampled at the given times.
struct GapSeries {
  std::vector<double> times;
  std::vector<double> gaps;

  /// Largest increase between consecutive samples (0 for a monotone series).
  double max_uptick() const;

  /// Fit over the samples with t in [t_lo, t_hi].
  ExpFit fit_window(double t_lo, double t_hi) const;
};

GapSeries sample_sup_gap(const std::function<GridFunction(double)>& a,
                         const std::function<GridFunction(double)>& b,
                         const std::vector<double>& times);

}  // namespace sepsim
