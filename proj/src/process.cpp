#include "sepsim/process.hpp"

#include <cmath>

#include "sepsim/errors.hpp"

namespace sepsim {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Exchange: return "exchange";
    case EventKind::Birth: return "birth";
    case EventKind::Death: return "death";
    case EventKind::BirthAborted: return "birth_aborted";
    case EventKind::DeathAborted: return "death_aborted";
    case EventKind::None: return "none";
  }
  return "?";
}

Event apply_birth(Configuration& config, const ModelParams& params) {
  for (int x = params.n; x >= params.iplus_lo(); --x) {
    if (!config.occupied(x)) {
      config.fill_site(x);
      return {EventKind::Birth, x, 0.0};
    }
  }
  return {EventKind::BirthAborted, kNoSite, 0.0};
}

Event apply_death(Configuration& config, const ModelParams& params) {
  for (int x = -params.n; x <= params.iminus_hi(); ++x) {
    if (config.occupied(x)) {
      config.empty_site(x);
      return {EventKind::Death, x, 0.0};
    }
  }
  return {EventKind::DeathAborted, kNoSite, 0.0};
}

Event apply_exchange(Configuration& config, int bond_x) {
  const int b = bond_x + config.half_width();
  if (b < 0 || b >= 2 * config.half_width()) throw ConfigError("exchange bond out of range");
  if (!config.bond_active(b)) throw ConfigError("exchange requested on a non-discrepant bond");
  config.exchange_bond(b);
  return {EventKind::Exchange, bond_x, 0.0};
}

namespace {

// Channel layout of the total rate R = nb*n^2/2 + n*j/2 + n*j/2. One uniform
// draw u in [0, R) picks the channel; within the exchange block, u/(n^2/2)
// recycles into a uniform bond index.
inline Event pick_and_apply(Configuration& config, const ModelParams& params, double u,
                            double per_bond, double exchange_total) {
  if (u < exchange_total) {
    int i = static_cast<int>(u / per_bond);
    const int nb = config.active_bond_count();
    if (i >= nb) i = nb - 1;  // guards the borderline rounding case
    const int b = config.active_bond(i);
    config.exchange_bond(b);
    return {EventKind::Exchange, b - config.half_width(), 0.0};
  }
  const double v = u - exchange_total;
  if (v < params.channel_rate()) return apply_birth(config, params);
  return apply_death(config, params);
}

}  // namespace

Event step(Configuration& config, const ModelParams& params, Rng& rng) {
  const double per_bond = params.exchange_rate_per_bond();
  const double exchange_total = per_bond * config.active_bond_count();
  const double total = exchange_total + 2.0 * params.channel_rate();
  const double dt = rng.exponential(total);
  Event ev = pick_and_apply(config, params, rng.uniform01() * total, per_bond, exchange_total);
  ev.time_increment = dt;
  return ev;
}

void simulate_until(Configuration& config, const ModelParams& params, double t_end, Rng& rng,
                    std::span<TrajectoryObserver* const> observers) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be >= 0");
  const double per_bond = params.exchange_rate_per_bond();
  const double channels = 2.0 * params.channel_rate();
  double t = 0.0;
  for (;;) {
    const double exchange_total = per_bond * config.active_bond_count();
    const double total = exchange_total + channels;
    const double dt = -std::log(rng.uniform01_open0()) / total;
    if (t + dt > t_end) break;  // overshooting event is discarded
    t += dt;
    Event ev = pick_and_apply(config, params, rng.uniform01() * total, per_bond, exchange_total);
    ev.time_increment = dt;
    for (auto* obs : observers) obs->on_event(t, ev, config);
  }
  for (auto* obs : observers) obs->on_finish(t_end, config);
}

}  // namespace sepsim
