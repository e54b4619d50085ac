#include "sepsim/relaxation.hpp"

#include <cmath>

#include "sepsim/errors.hpp"

namespace sepsim {

ExpFit fit_log_linear(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size() || t.size() < 2)
    throw ConfigError("log-linear fit needs at least two samples");
  const std::size_t n = t.size();
  double st = 0.0, sl = 0.0;
  std::vector<double> logs(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(y[i] > 0.0)) throw ConfigError("log-linear fit needs positive values");
    logs[i] = std::log(y[i]);
    st += t[i];
    sl += logs[i];
  }
  const double tbar = st / n, lbar = sl / n;
  double stt = 0.0, stl = 0.0, sll = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dt = t[i] - tbar, dl = logs[i] - lbar;
    stt += dt * dt;
    stl += dt * dl;
    sll += dl * dl;
  }
  if (!(stt > 0.0)) throw ConfigError("log-linear fit needs distinct times");
  ExpFit out;
  const double slope = stl / stt;
  out.rate = -slope;
  out.log_a = lbar - slope * tbar;
  out.r2 = sll > 0.0 ? (stl * stl) / (stt * sll) : 1.0;
  return out;
}

double GapSeries::max_uptick() const {
  double up = 0.0;
  for (std::size_t i = 1; i < gaps.size(); ++i) up = std::max(up, gaps[i] - gaps[i - 1]);
  return up;
}

ExpFit GapSeries::fit_window(double t_lo, double t_hi) const {
  std::vector<double> t, y;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] >= t_lo && times[i] <= t_hi) {
      t.push_back(times[i]);
      y.push_back(gaps[i]);
    }
  }
  return fit_log_linear(t, y);
}

GapSeries sample_sup_gap(const std::function<GridFunction(double)>& a,
                         const std::function<GridFunction(double)>& b,
                         const std::vector<double>& times) {
  GapSeries out;
  out.times = times;
  out.gaps.reserve(times.size());
  for (double t : times) out.gaps.push_back(a(t).sup_abs_diff(b(t)));
  return out;
}

}  // namespace sepsim
