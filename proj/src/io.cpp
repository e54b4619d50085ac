#include "sepsim/io.hpp"

#include <cstdio>
#include <fstream>

#include "sepsim/errors.hpp"

namespace sepsim {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path + " for writing");
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_profile_csv(const std::string& path, const GridFunction& g,
                       const std::string& name) {
  write_profiles_csv(path, {&g}, {name});
}

void write_profiles_csv(const std::string& path, const std::vector<const GridFunction*>& gs,
                        const std::vector<std::string>& names) {
  if (gs.empty() || gs.size() != names.size())
    throw ConfigError("profile CSV needs matching profiles and names");
  for (const GridFunction* g : gs)
    if (g->m != gs.front()->m) throw ConfigError("profile CSV needs a shared grid");
  std::ofstream out = open_out(path);
  out << "r";
  for (const std::string& n : names) out << "," << n;
  out << "\n";
  for (int i = 0; i <= gs.front()->m; ++i) {
    out << fmt(gs.front()->node(i));
    for (const GridFunction* g : gs) out << "," << fmt(g->values[static_cast<std::size_t>(i)]);
    out << "\n";
  }
}

void write_traces_csv(const std::string& path, const BoundaryTraces& traces) {
  std::ofstream out = open_out(path);
  out << "t,u_plus,u_minus\n";
  for (std::size_t l = 0; l < traces.u_plus.size(); ++l)
    out << fmt(traces.h * static_cast<double>(l)) << "," << fmt(traces.u_plus[l]) << ","
        << fmt(traces.u_minus[l]) << "\n";
}

}  // namespace sepsim
