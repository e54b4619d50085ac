#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "sepsim/params.hpp"
#include "sepsim/rng.hpp"

namespace sepsim {

/// Hard-core particle configuration on {-n, ..., n} with incremental
/// bookkeeping of the discrepant ("active") bonds.
///
/// Site x lives in array slot x+n. Bond b (0 <= b < 2n) connects slots b and
/// b+1, i.e. sites b-n and b-n+1. An exchange across a discrepant bond flips
/// both endpoints, so the bond itself stays discrepant and only its two
/// neighbours toggle; this keeps every update O(1).
class Configuration {
 public:
  Configuration() = default;
  Configuration(int n, std::vector<std::uint8_t> occupancy);

  int half_width() const { return n_; }
  int size() const { return static_cast<int>(occ_.size()); }

  bool occupied(int x) const { return occ_[static_cast<std::size_t>(x + n_)] != 0; }
  std::uint8_t occ_slot(int slot) const { return occ_[static_cast<std::size_t>(slot)]; }
  const std::vector<std::uint8_t>& occupancy() const { return occ_; }

  int particle_count() const { return particles_; }

  int active_bond_count() const { return static_cast<int>(active_.size()); }
  /// Bond id by position in the active list (sampling order is internal).
  int active_bond(int i) const { return active_[static_cast<std::size_t>(i)]; }
  bool bond_active(int b) const { return slot_[static_cast<std::size_t>(b)] >= 0; }

  /// Swap the endpoints of bond b. Precondition: the bond is discrepant.
  void exchange_bond(int b);
  /// 0 -> 1 at site x. Precondition: x empty.
  void fill_site(int x);
  /// 1 -> 0 at site x. Precondition: x occupied.
  void empty_site(int x);

  /// One line of '0'/'1', ordered x = -n..n.
  std::string to_string() const;
  static Configuration from_string(const std::string& line);

  /// Rebuild the active-bond set from scratch and compare against the
  /// incremental state; throws OrderViolation on any mismatch.
  void audit() const;

  bool operator==(const Configuration& other) const {
    return n_ == other.n_ && occ_ == other.occ_;
  }

 private:
  void toggle_bond(int b);
  void rebuild();

  int n_ = 0;
  int particles_ = 0;
  std::vector<std::uint8_t> occ_;
  std::vector<std::int32_t> active_;  // bond ids, order irrelevant
  std::vector<std::int32_t> slot_;    // bond id -> index in active_, or -1
};

/// True if hi dominates lo sitewise.
bool dominates(const Configuration& hi, const Configuration& lo);

/// Particle-hole mirror: result(x) = 1 - config(-x).
Configuration ph_mirror(const Configuration& config);

// -- initial conditions ------------------------------------------------------

struct AllOnes {};
struct AllZeros {};
struct Deterministic {
  std::vector<std::uint8_t> occupancy;  // size 2n+1, ordered x = -n..n
};
struct ProductMeasure {
  std::function<double(double)> density;  // r in [-1,1] -> [0,1]
};

using InitSpec = std::variant<AllOnes, AllZeros, Deterministic, ProductMeasure>;

/// Build an initial configuration. ProductMeasure draws one Bernoulli per
/// site with p = density(x/n) and requires an Rng.
Configuration make_configuration(const ModelParams& params, const InitSpec& init,
                                 Rng* rng = nullptr);

}  // namespace sepsim
