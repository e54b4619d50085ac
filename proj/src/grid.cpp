#include "sepsim/grid.hpp"

#include <string>

#include "sepsim/simd/kernels.hpp"

namespace sepsim {

double GridFunction::sup_abs_diff(const GridFunction& other) const {
  if (other.m != m) throw ConfigError("grid mismatch in sup_abs_diff");
  return simd::sup_abs_diff(values.data(), other.values.data(), values.size());
}

void require_range(const GridFunction& g, double lo, double hi, double slack,
                   const char* what) {
  for (double v : g.values)
    if (!(v >= lo - slack && v <= hi + slack))
      throw RangeViolation(std::string(what) + ": value " + std::to_string(v) +
                           " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

}  // namespace sepsim
