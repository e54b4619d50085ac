#include "sepsim/coupling.hpp"

#include <cmath>
#include <string>

#include "sepsim/errors.hpp"

namespace sepsim {

namespace {
constexpr std::uint64_t kAuditInterval = 1u << 22;
}

CoupledPair::CoupledPair(Configuration lo, Configuration hi, const ModelParams& params)
    : params_(params), lo_(std::move(lo)), hi_(std::move(hi)) {
  params_.validate();
  if (lo_.half_width() != params_.n || hi_.half_width() != params_.n)
    throw ConfigError("coupled configurations must match params.n");
  if (!dominates(hi_, lo_))
    throw OrderViolation("coupling precondition lo <= hi does not hold");
  const int nb = params_.bonds();
  flags_.assign(static_cast<std::size_t>(nb), 0);
  union_slot_.assign(static_cast<std::size_t>(nb), -1);
  for (int b = 0; b < nb; ++b) {
    const std::uint8_t f = static_cast<std::uint8_t>((lo_.bond_active(b) ? 1 : 0) |
                                                     (hi_.bond_active(b) ? 2 : 0));
    flags_[static_cast<std::size_t>(b)] = f;
    if (f) {
      union_slot_[static_cast<std::size_t>(b)] = static_cast<std::int32_t>(union_active_.size());
      union_active_.push_back(b);
    }
  }
}

void CoupledPair::refresh_bond(int b) {
  if (b < 0 || b >= params_.bonds()) return;
  const std::uint8_t f = static_cast<std::uint8_t>((lo_.bond_active(b) ? 1 : 0) |
                                                   (hi_.bond_active(b) ? 2 : 0));
  std::uint8_t& old = flags_[static_cast<std::size_t>(b)];
  if ((old != 0) != (f != 0)) {
    auto& s = union_slot_[static_cast<std::size_t>(b)];
    if (s < 0) {
      s = static_cast<std::int32_t>(union_active_.size());
      union_active_.push_back(b);
    } else {
      const std::int32_t last = union_active_.back();
      union_active_[static_cast<std::size_t>(s)] = last;
      union_slot_[static_cast<std::size_t>(last)] = s;
      union_active_.pop_back();
      s = -1;
    }
  }
  old = f;
}

void CoupledPair::refresh_bonds_around_site(int x) {
  const int slot = x + params_.n;
  refresh_bond(slot - 1);
  refresh_bond(slot);
}

void CoupledPair::check_order_at(int x) const {
  if (lo_.occupied(x) && !hi_.occupied(x))
    throw OrderViolation("coupled order broken at site " + std::to_string(x));
}

std::pair<Event, Event> CoupledPair::apply(double u, double per_bond, double exchange_total) {
  if (u < exchange_total) {
    int i = static_cast<int>(u / per_bond);
    const int nb = static_cast<int>(union_active_.size());
    if (i >= nb) i = nb - 1;
    const int b = union_active_[static_cast<std::size_t>(i)];
    const int x = b - params_.n;
    Event lo_ev{EventKind::None, kNoSite, 0.0};
    Event hi_ev{EventKind::None, kNoSite, 0.0};
    if (lo_.bond_active(b)) {
      lo_.exchange_bond(b);
      lo_ev = {EventKind::Exchange, x, 0.0};
    }
    if (hi_.bond_active(b)) {
      hi_.exchange_bond(b);
      hi_ev = {EventKind::Exchange, x, 0.0};
    }
    refresh_bond(b - 1);
    refresh_bond(b);
    refresh_bond(b + 1);
    check_order_at(x);
    check_order_at(x + 1);
    return {lo_ev, hi_ev};
  }
  const double v = u - exchange_total;
  const bool birth = v < params_.channel_rate();
  Event lo_ev = birth ? apply_birth(lo_, params_) : apply_death(lo_, params_);
  Event hi_ev = birth ? apply_birth(hi_, params_) : apply_death(hi_, params_);
  if (lo_ev.site != kNoSite) {
    refresh_bonds_around_site(lo_ev.site);
    check_order_at(lo_ev.site);
  }
  if (hi_ev.site != kNoSite) {
    refresh_bonds_around_site(hi_ev.site);
    check_order_at(hi_ev.site);
  }
  return {lo_ev, hi_ev};
}

std::pair<Event, Event> CoupledPair::step(Rng& rng) {
  const double per_bond = params_.exchange_rate_per_bond();
  const double exchange_total = per_bond * static_cast<double>(union_active_.size());
  const double total = exchange_total + 2.0 * params_.channel_rate();
  const double dt = rng.exponential(total);
  auto evs = apply(rng.uniform01() * total, per_bond, exchange_total);
  evs.first.time_increment = dt;
  evs.second.time_increment = dt;
  if (++events_since_audit_ >= kAuditInterval) {
    events_since_audit_ = 0;
    audit();
  }
  return evs;
}

std::uint64_t CoupledPair::simulate_until(double t_end, Rng& rng) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be >= 0");
  const double per_bond = params_.exchange_rate_per_bond();
  const double channels = 2.0 * params_.channel_rate();
  double t = 0.0;
  std::uint64_t applied = 0;
  for (;;) {
    const double exchange_total = per_bond * static_cast<double>(union_active_.size());
    const double total = exchange_total + channels;
    const double dt = -std::log(rng.uniform01_open0()) / total;
    if (t + dt > t_end) break;
    t += dt;
    apply(rng.uniform01() * total, per_bond, exchange_total);
    ++applied;
    if (++events_since_audit_ >= kAuditInterval) {
      events_since_audit_ = 0;
      audit();
    }
  }
  audit();
  return applied;
}

void CoupledPair::audit() const {
  if (!dominates(hi_, lo_)) throw OrderViolation("coupled order broken (full sweep)");
  lo_.audit();
  hi_.audit();
  for (int b = 0; b < params_.bonds(); ++b) {
    const std::uint8_t want = static_cast<std::uint8_t>((lo_.bond_active(b) ? 1 : 0) |
                                                        (hi_.bond_active(b) ? 2 : 0));
    if (flags_[static_cast<std::size_t>(b)] != want)
      throw OrderViolation("coupling audit: union flags drifted");
    if ((want != 0) != (union_slot_[static_cast<std::size_t>(b)] >= 0))
      throw OrderViolation("coupling audit: union membership drifted");
  }
}

std::pair<Event, Event> coupled_step(Configuration& lo, Configuration& hi,
                                     const ModelParams& params, Rng& rng) {
  CoupledPair pair(std::move(lo), std::move(hi), params);
  auto evs = pair.step(rng);
  lo = pair.lo();
  hi = pair.hi();
  return evs;
}

std::uint64_t mirror_audit(const ModelParams& params, double t_end, Rng& rng) {
  Configuration eta = make_configuration(params, AllOnes{});
  Configuration zeta = make_configuration(params, AllZeros{});
  const auto check_site = [&](int x) {
    if (zeta.occupied(-x) != !eta.occupied(x))
      throw OrderViolation("mirror identity broken at site " + std::to_string(x));
  };
  const double per_bond = params.exchange_rate_per_bond();
  const double channels = 2.0 * params.channel_rate();
  double t = 0.0;
  std::uint64_t applied = 0;
  for (;;) {
    const double exchange_total = per_bond * eta.active_bond_count();
    const double total = exchange_total + channels;
    const double dt = -std::log(rng.uniform01_open0()) / total;
    if (t + dt > t_end) break;
    t += dt;
    const double u = rng.uniform01() * total;
    if (u < exchange_total) {
      int i = static_cast<int>(u / per_bond);
      if (i >= eta.active_bond_count()) i = eta.active_bond_count() - 1;
      const int x = eta.active_bond(i) - params.n;
      apply_exchange(eta, x);
      apply_exchange(zeta, -x - 1);  // throws if the mirrored bond is not discrepant
      check_site(x);
      check_site(x + 1);
    } else if (u - exchange_total < params.channel_rate()) {
      // eta birth clock == zeta death clock
      const Event e = apply_birth(eta, params);
      const Event z = apply_death(zeta, params);
      if (e.kind == EventKind::Birth) {
        if (z.kind != EventKind::Death || z.site != -e.site)
          throw OrderViolation("mirrored birth/death events disagree");
        check_site(e.site);
      } else if (z.kind != EventKind::DeathAborted) {
        throw OrderViolation("mirrored birth/death aborts disagree");
      }
    } else {
      const Event e = apply_death(eta, params);
      const Event z = apply_birth(zeta, params);
      if (e.kind == EventKind::Death) {
        if (z.kind != EventKind::Birth || z.site != -e.site)
          throw OrderViolation("mirrored death/birth events disagree");
        check_site(e.site);
      } else if (z.kind != EventKind::BirthAborted) {
        throw OrderViolation("mirrored death/birth aborts disagree");
      }
    }
    if ((++applied & 0xfffff) == 0) {
      for (int x = -params.n; x <= params.n; ++x) check_site(x);
    }
  }
  for (int x = -params.n; x <= params.n; ++x) check_site(x);
  return applied;
}

}  // namespace sepsim
