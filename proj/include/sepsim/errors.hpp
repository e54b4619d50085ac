#pragma once

#include <stdexcept>
#include <string>

namespace sepsim {

/// Bad user-facing parameters (lattice size, rates, grids, CLI input).
/// CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical scheme failed to converge (per-step fixed point stopped
/// contracting, instability detected). CLI maps this to exit code 2.
class NonConvergence : public std::runtime_error {
 public:
  explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

/// A solved field left its admissible range by more than the scheme's
/// tolerance. CLI maps this to exit code 2.
class RangeViolation : public std::runtime_error {
 public:
  explicit RangeViolation(const std::string& what) : std::runtime_error(what) {}
};

/// The sitewise order lo <= hi of a monotone coupling broke, or an internal
/// structural invariant failed an audit. Never expected on a correct build;
/// CLI maps this to exit code 3.
class OrderViolation : public std::runtime_error {
 public:
  explicit OrderViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sepsim
