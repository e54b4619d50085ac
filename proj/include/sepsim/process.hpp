#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>

#include "sepsim/configuration.hpp"
#include "sepsim/params.hpp"
#include "sepsim/rng.hpp"

namespace sepsim {

enum class EventKind : std::uint8_t {
  Exchange,      ///< swap across a discrepant bond
  Birth,         ///< filled the rightmost empty site of I+
  Death,         ///< emptied the leftmost occupied site of I-
  BirthAborted,  ///< birth clock fired with I+ full
  DeathAborted,  ///< death clock fired with I- empty
  None,          ///< idle side of a coupled exchange
};

const char* to_string(EventKind kind);

/// No site attached (aborted channels, None).
inline constexpr std::int32_t kNoSite = std::numeric_limits<std::int32_t>::min();

struct Event {
  EventKind kind = EventKind::None;
  /// Exchange: left site x of the swapped bond (x, x+1). Birth/Death: the
  /// filled/emptied site. Otherwise kNoSite.
  std::int32_t site = kNoSite;
  double time_increment = 0.0;
};

/// Observer of an evolving trajectory. on_event fires after every applied
/// event (aborted channel firings included) with the post-event state;
/// on_finish fires once when the run clips at its horizon.
class TrajectoryObserver {
 public:
  virtual ~TrajectoryObserver() = default;
  virtual void on_event(double time, const Event& event, const Configuration& config) = 0;
  virtual void on_finish(double t_end, const Configuration& config) {
    (void)t_end;
    (void)config;
  }
};

/// Fire the birth channel: fill the rightmost empty site of I+, or abort if
/// I+ is full. time_increment is left 0.
Event apply_birth(Configuration& config, const ModelParams& params);

/// Fire the death channel: empty the leftmost occupied site of I-, or abort
/// if I- is empty. time_increment is left 0.
Event apply_death(Configuration& config, const ModelParams& params);

/// Swap across bond (x, x+1); throws ConfigError if the bond is not
/// discrepant (exchanges exist only on discrepant bonds).
Event apply_exchange(Configuration& config, int bond_x);

/// One exact jump of the continuous-time chain: exponential holding time at
/// the total rate, then an event chosen proportionally to the channel rates.
Event step(Configuration& config, const ModelParams& params, Rng& rng);

/// Evolve over [0, t_end], clipping at the horizon: the event that would
/// overshoot is discarded. Observers see every applied event, then on_finish.
void simulate_until(Configuration& config, const ModelParams& params, double t_end, Rng& rng,
                    std::span<TrajectoryObserver* const> observers = {});

}  // namespace sepsim
