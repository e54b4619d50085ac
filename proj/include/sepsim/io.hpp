#pragma once

#include <string>
#include <vector>

#include "sepsim/grid.hpp"
#include "sepsim/volterra.hpp"

namespace sepsim {

/// CSV r,<name> with full double precision.
void write_profile_csv(const std::string& path, const GridFunction& g,
                       const std::string& name = "rho");

/// CSV r,<names...> for several profiles sharing one grid.
void write_profiles_csv(const std::string& path, const std::vector<const GridFunction*>& gs,
                        const std::vector<std::string>& names);

/// CSV t,u_plus,u_minus.
void write_traces_csv(const std::string& path, const BoundaryTraces& traces);

}  // namespace sepsim
