#include "sepsim/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sepsim/configuration.hpp"
#include "sepsim/coupling.hpp"
#include "sepsim/errors.hpp"
#include "sepsim/fd_solver.hpp"
#include "sepsim/io.hpp"
#include "sepsim/params.hpp"
#include "sepsim/process.hpp"
#include "sepsim/relaxation.hpp"
#include "sepsim/replicas.hpp"
#include "sepsim/statistics.hpp"
#include "sepsim/stationary.hpp"
#include "sepsim/volterra.hpp"

namespace sepsim {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct OutDir {
  std::string path;

  bool enabled() const { return !path.empty(); }

  std::string file(const std::string& name) const {
    fs::create_directories(path);
    return (fs::path(path) / name).string();
  }

  void write_json(const std::string& name, const json& j) const {
    if (!enabled()) return;
    std::ofstream out(file(name));
    if (!out) throw ConfigError("cannot open " + file(name) + " for writing");
    out << j.dump(2) << "\n";
  }
};

json params_json(const ModelParams& p) {
  return {{"n", p.n}, {"k_boundary", p.k_boundary}, {"j", p.j}};
}

json stationary_json(const StationarySolution& s) {
  return {{"alpha", s.alpha},
          {"current", s.current},
          {"flux_current", s.flux_current()},
          {"residual", s.residual}};
}

/// Profile file: either one number per line or CSV with the value in the
/// second column; a non-numeric first line is treated as a header.
std::vector<double> read_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::vector<double> values;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    for (char& c : line)
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    std::istringstream row(line);
    std::vector<double> fields;
    double v;
    if (row >> v) {
      fields.push_back(v);
      while (row >> v) fields.push_back(v);
    } else if (first) {
      first = false;
      continue;  // header
    } else if (line.find_first_not_of(" \r\n") == std::string::npos) {
      continue;
    } else {
      throw ConfigError("unparseable line in " + path + ": " + line);
    }
    first = false;
    values.push_back(fields.size() >= 2 ? fields[1] : fields[0]);
  }
  if (values.size() < 3) throw ConfigError(path + " holds fewer than 3 values");
  return values;
}

GridFunction grid_init(const std::string& spec, int m, double j, int k_boundary) {
  if (spec == "ones") return GridFunction::constant(m, 1.0);
  if (spec == "zeros") return GridFunction::constant(m, 0.0);
  if (spec == "half") return GridFunction::constant(m, 0.5);
  if (spec == "stationary") {
    const StationarySolution s = solve_stationary(j, k_boundary);
    return GridFunction::sample(m, [&](double r) { return s.profile(r); });
  }
  if (spec.rfind("file:", 0) == 0) {
    std::vector<double> v = read_profile_file(spec.substr(5));
    GridFunction g(static_cast<int>(v.size()) - 1, std::move(v));
    return g.resampled(m);
  }
  throw ConfigError("unknown init '" + spec + "' (ones|zeros|half|stationary|file:PATH)");
}

InitSpec particle_init(const std::string& spec, const ModelParams& params) {
  if (spec == "ones") return AllOnes{};
  if (spec == "zeros") return AllZeros{};
  if (spec == "half") return ProductMeasure{[](double) { return 0.5; }};
  if (spec == "stationary") {
    const StationarySolution s = solve_stationary(params.j, params.k_boundary);
    return ProductMeasure{[s](double r) { return s.profile(r); }};
  }
  if (spec.rfind("file:", 0) == 0) {
    std::ifstream in(spec.substr(5));
    if (!in) throw ConfigError("cannot open " + spec.substr(5));
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty occupancy file");
    const Configuration c = Configuration::from_string(line);
    if (c.half_width() != params.n)
      throw ConfigError("occupancy file is for a different lattice size");
    return Deterministic{c.occupancy()};
  }
  throw ConfigError("unknown init '" + spec + "' (ones|zeros|half|stationary|file:PATH)");
}

// ---- subcommand handlers ----------------------------------------------------

struct StationaryArgs {
  double j = 1.0;
  int k_boundary = 1;
  int grid = 400;
  OutDir out;
};

int run_stationary(const StationaryArgs& a) {
  const StationarySolution s = solve_stationary(a.j, a.k_boundary);
  std::printf("alpha         %.15g\n", s.alpha);
  std::printf("current J     %.15g\n", s.current);
  std::printf("flux current  %.15g\n", s.flux_current());
  std::printf("residual      %.3g\n", s.residual);
  if (a.out.enabled()) {
    const GridFunction g = GridFunction::sample(a.grid, [&](double r) { return s.profile(r); });
    write_profile_csv(a.out.file("profile.csv"), g);
    json summary;
    summary["command"] = "stationary";
    summary["params"] = {{"j", a.j}, {"k_boundary", a.k_boundary}};
    summary["stationary"] = stationary_json(s);
    a.out.write_json("summary.json", summary);
  }
  return 0;
}

struct MacroArgs {
  double j = 1.0;
  int k_boundary = 1;
  std::string init = "half";
  std::string method = "volterra";
  double t_end = 1.0;
  double h = 1e-3;
  double dt = 0.0;  // 0: pick from the grid
  int grid = 400;
  OutDir out;
};

int run_macro(const MacroArgs& a) {
  if (!(a.t_end >= 0.0)) throw ConfigError("--t-end must be >= 0");
  const GridFunction rho0 = grid_init(a.init, a.grid, a.j, a.k_boundary);
  const StationarySolution s = solve_stationary(a.j, a.k_boundary);
  const GridFunction target =
      GridFunction::sample(a.grid, [&](double r) { return s.profile(r); });

  json summary;
  summary["command"] = "macro";
  summary["params"] = {{"j", a.j},     {"k_boundary", a.k_boundary}, {"init", a.init},
                       {"t_end", a.t_end}, {"grid", a.grid},         {"method", a.method}};
  summary["stationary"] = stationary_json(s);

  GridFunction vol_profile, fd_profile;
  const bool want_volterra = a.method == "volterra" || a.method == "both";
  const bool want_fd = a.method == "fd" || a.method == "both";
  if (!want_volterra && !want_fd)
    throw ConfigError("unknown method '" + a.method + "' (volterra|fd|both)");

  if (want_volterra) {
    VolterraSolver solver(rho0, a.j, a.k_boundary, a.h);
    solver.extend(a.t_end);
    vol_profile = solver.profile_at(a.t_end, a.grid);
    const BoundaryTraces& tr = solver.traces();
    std::printf("volterra  u+(t_end) %.12g  u-(t_end) %.12g  sup|rho-rho*| %.6g\n",
                tr.u_plus.back(), tr.u_minus.back(), vol_profile.sup_abs_diff(target));
    summary["volterra"] = {{"h", a.h},
                           {"u_plus_end", tr.u_plus.back()},
                           {"u_minus_end", tr.u_minus.back()},
                           {"sup_gap_to_stationary", vol_profile.sup_abs_diff(target)},
                           {"mass", vol_profile.integrate()}};
    if (a.out.enabled()) write_traces_csv(a.out.file("traces.csv"), tr);
  }
  if (want_fd) {
    const double dt = a.dt > 0.0 ? a.dt : std::min(1.0 / a.grid, a.t_end > 0 ? a.t_end : 1.0);
    FdSolver solver(rho0, a.j, a.k_boundary, dt);
    solver.advance(a.t_end);
    fd_profile = solver.profile();
    std::printf("fd        rho(+1) %.12g  rho(-1) %.12g  sup|rho-rho*| %.6g\n",
                fd_profile.values.back(), fd_profile.values.front(),
                fd_profile.sup_abs_diff(target));
    summary["fd"] = {{"dt", dt},
                     {"sup_gap_to_stationary", fd_profile.sup_abs_diff(target)},
                     {"mass", fd_profile.integrate()}};
  }
  if (want_volterra && want_fd) {
    const double gap = vol_profile.sup_abs_diff(fd_profile);
    std::printf("cross     sup|volterra-fd| %.6g\n", gap);
    summary["cross_gap"] = gap;
  }
  if (a.out.enabled()) {
    std::vector<const GridFunction*> gs;
    std::vector<std::string> names;
    if (want_volterra) {
      gs.push_back(&vol_profile);
      names.push_back("rho_volterra");
    }
    if (want_fd) {
      gs.push_back(&fd_profile);
      names.push_back("rho_fd");
    }
    gs.push_back(&target);
    names.push_back("rho_stationary");
    write_profiles_csv(a.out.file("profile.csv"), gs, names);
    a.out.write_json("summary.json", summary);
  }
  return 0;
}

struct SimulateArgs {
  int n = 100;
  int k_boundary = 1;
  double j = 1.0;
  std::string init = "stationary";
  double t_burn = 2.0;
  double t_avg = 10.0;
  int replicas = 1;
  int threads = 1;
  int batches = 20;
  int block = 0;  // 0: floor(n^0.6)
  std::uint64_t seed = 1;
  OutDir out;
};

struct SimReplicaResult {
  std::vector<double> site_mean;
  std::vector<std::vector<double>> site_batch;
  double bond_current = 0.0;
  double birth_rate = 0.0;
  double death_rate = 0.0;
  std::uint64_t events = 0;
};

int run_simulate(const SimulateArgs& a) {
  const ModelParams params{a.n, a.k_boundary, a.j};
  params.validate();
  const InitSpec init = particle_init(a.init, params);
  const StationarySolution s = solve_stationary(a.j, a.k_boundary);

  auto one = [&](int, Rng& rng) -> SimReplicaResult {
    Configuration config = make_configuration(params, init, &rng);
    if (a.t_burn > 0.0) simulate_until(config, params, a.t_burn, rng);
    OccupationIntegrator obs(params, a.t_avg, a.batches);
    obs.watch_bond(0);
    obs.begin(config);
    TrajectoryObserver* list[] = {&obs};
    simulate_until(config, params, a.t_avg, rng, list);
    SimReplicaResult r;
    r.site_mean = obs.site_mean();
    r.site_batch = obs.site_batch();
    r.bond_current = obs.bond_current();
    r.birth_rate = obs.birth_rate();
    r.death_rate = obs.death_rate();
    r.events = obs.flow().events;
    return r;
  };
  const std::vector<SimReplicaResult> results =
      run_replicas<SimReplicaResult>(a.replicas, a.seed, a.threads, one);

  // Equal windows, so pooling means over replicas is the pooled time average.
  const std::size_t sites = results.front().site_mean.size();
  std::vector<double> mean(sites, 0.0);
  double current = 0.0, birth = 0.0, death = 0.0;
  std::uint64_t events = 0;
  for (const SimReplicaResult& r : results) {
    for (std::size_t i = 0; i < sites; ++i) mean[i] += r.site_mean[i];
    current += r.bond_current;
    birth += r.birth_rate;
    death += r.death_rate;
    events += r.events;
  }
  for (double& v : mean) v /= a.replicas;
  current /= a.replicas;
  birth /= a.replicas;
  death /= a.replicas;

  double sup_gap = 0.0;
  for (std::size_t i = 0; i < sites; ++i) {
    const double r = (static_cast<double>(i) - a.n) / a.n;
    sup_gap = std::max(sup_gap, std::fabs(mean[i] - s.profile(r)));
  }
  const int block = a.block > 0 ? a.block : std::max(1, static_cast<int>(std::pow(a.n, 0.6)));
  const double l1 =
      block_average_l1(mean, a.n, block, [&](double r) { return s.profile(r); });

  std::printf("events             %llu\n", static_cast<unsigned long long>(events));
  std::printf("sup|mean-rho*|     %.6g\n", sup_gap);
  std::printf("block L1 (l=%d)    %.6g\n", block, l1);
  std::printf("bond current       %.6g  (expect %.6g)\n", current, -0.5 * s.current);
  std::printf("birth rate         %.6g  (expect %.6g)\n", birth, 0.5 * s.current);
  std::printf("death rate         %.6g  (expect %.6g)\n", death, 0.5 * s.current);

  if (a.out.enabled()) {
    GridFunction prof(2 * a.n, mean);
    const GridFunction target =
        GridFunction::sample(2 * a.n, [&](double r) { return s.profile(r); });
    write_profiles_csv(a.out.file("profile.csv"), {&prof, &target},
                       {"occupation", "rho_stationary"});
    json summary;
    summary["command"] = "simulate";
    summary["params"] = params_json(params);
    summary["run"] = {{"init", a.init},   {"t_burn", a.t_burn},   {"t_avg", a.t_avg},
                      {"replicas", a.replicas}, {"batches", a.batches}, {"seed", a.seed}};
    summary["stationary"] = stationary_json(s);
    summary["results"] = {{"events", events},
                          {"sup_gap", sup_gap},
                          {"block", block},
                          {"block_l1", l1},
                          {"bond_current", current},
                          {"birth_rate", birth},
                          {"death_rate", death}};
    a.out.write_json("summary.json", summary);
  }
  return 0;
}

struct RelaxArgs {
  double j = 1.0;
  int k_boundary = 1;
  double t_end = 6.0;
  double h = 2e-3;
  double sample_every = 0.25;
  int grid = 200;
  OutDir out;
};

int run_relax(const RelaxArgs& a) {
  if (!(a.t_end > 0.0) || !(a.sample_every > 0.0))
    throw ConfigError("--t-end and --sample-every must be > 0");
  const GridFunction ones = GridFunction::constant(a.grid, 1.0);
  const StationarySolution s = solve_stationary(a.j, a.k_boundary);
  VolterraSolver solver(ones, a.j, a.k_boundary, a.h);
  const GridFunction target =
      GridFunction::sample(a.grid, [&](double r) { return s.profile(r); });

  std::vector<double> times;
  for (double t = a.sample_every; t <= a.t_end + 1e-9; t += a.sample_every)
    times.push_back(t);
  GapSeries series = sample_sup_gap(
      [&](double t) { return solver.profile_at(t, a.grid); }, [&](double) { return target; },
      times);
  const ExpFit fit = series.fit_window(0.5 * a.t_end, a.t_end);

  std::printf("samples        %zu\n", series.times.size());
  std::printf("max uptick     %.3g\n", series.max_uptick());
  std::printf("decay rate     %.6g  (pi^2/8 = %.6g)\n", fit.rate,
              3.14159265358979323846 * 3.14159265358979323846 / 8.0);
  std::printf("fit R^2        %.6g\n", fit.r2);

  if (a.out.enabled()) {
    std::ofstream gaps(a.out.file("gaps.csv"));
    gaps << "t,sup_gap\n";
    for (std::size_t i = 0; i < series.times.size(); ++i)
      gaps << series.times[i] << "," << series.gaps[i] << "\n";
    json summary;
    summary["command"] = "relax";
    summary["params"] = {{"j", a.j}, {"k_boundary", a.k_boundary}, {"t_end", a.t_end},
                         {"h", a.h}, {"grid", a.grid}};
    summary["fit"] = {{"rate", fit.rate}, {"log_a", fit.log_a}, {"r2", fit.r2}};
    summary["max_uptick"] = series.max_uptick();
    a.out.write_json("summary.json", summary);
  }
  return 0;
}

struct CoupleArgs {
  int n = 50;
  int k_boundary = 1;
  double j = 1.0;
  double t_end = 50.0;
  std::uint64_t seed = 1;
  OutDir out;
};

int run_couple(const CoupleArgs& a) {
  const ModelParams params{a.n, a.k_boundary, a.j};
  params.validate();
  Rng rng = Rng::for_replica(a.seed, 0);
  CoupledPair pair(make_configuration(params, AllZeros{}),
                   make_configuration(params, AllOnes{}), params);

  double t = 0.0, coalesced_at = -1.0;
  std::uint64_t events = 0;
  while (t < a.t_end) {
    const auto [lo_ev, hi_ev] = pair.step(rng);
    t += lo_ev.time_increment;
    if (t > a.t_end) break;  // horizon clip
    ++events;
    if (coalesced_at < 0.0 && pair.lo() == pair.hi()) coalesced_at = t;
  }
  pair.audit();

  Rng mirror_rng = Rng::for_replica(a.seed, 1);
  const double t_mirror = std::min(a.t_end, 5.0);
  const std::uint64_t mirror_events = mirror_audit(params, t_mirror, mirror_rng);

  std::printf("events            %llu\n", static_cast<unsigned long long>(events));
  std::printf("order audit       ok\n");
  if (coalesced_at >= 0.0)
    std::printf("coalesced at      %.6g\n", coalesced_at);
  else
    std::printf("coalesced at      never (within t_end)\n");
  std::printf("mirror audit      ok (%llu events to t=%g)\n",
              static_cast<unsigned long long>(mirror_events), t_mirror);

  if (a.out.enabled()) {
    json summary;
    summary["command"] = "couple";
    summary["params"] = params_json(params);
    summary["run"] = {{"t_end", a.t_end}, {"seed", a.seed}};
    summary["results"] = {{"events", events},
                          {"coalesced", coalesced_at >= 0.0},
                          {"coalesced_at", coalesced_at},
                          {"mirror_events", mirror_events},
                          {"mirror_t_end", t_mirror}};
    a.out.write_json("summary.json", summary);
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"boundary-driven exclusion process: simulator and macroscopic solvers"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI config file (command line wins)");
  // --h is a numeric option below, so keep help on --help alone.
  app.set_help_flag("--help", "print help");
  const auto add_sub = [&](const char* name, const char* desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->set_help_flag("--help", "print help");
    return sub;
  };

  StationaryArgs st;
  CLI::App* c_st = add_sub("stationary", "stationary profile and current");
  c_st->add_option("--j", st.j, "reservoir strength")->capture_default_str();
  c_st->add_option("--k-boundary", st.k_boundary, "boundary interval length")
      ->capture_default_str();
  c_st->add_option("--grid", st.grid, "output grid intervals")->capture_default_str();
  c_st->add_option("--out", st.out.path, "output directory");

  MacroArgs ma;
  CLI::App* c_ma = add_sub("macro", "deterministic evolution of the density");
  c_ma->add_option("--j", ma.j, "reservoir strength")->capture_default_str();
  c_ma->add_option("--k-boundary", ma.k_boundary, "boundary interval length")
      ->capture_default_str();
  c_ma->add_option("--init", ma.init, "ones|zeros|half|stationary|file:PATH")
      ->capture_default_str();
  c_ma->add_option("--method", ma.method, "volterra|fd|both")->capture_default_str();
  c_ma->add_option("--t-end", ma.t_end, "horizon")->capture_default_str();
  c_ma->add_option("--h", ma.h, "trace time step")->capture_default_str();
  c_ma->add_option("--dt", ma.dt, "fd time step (default 1/grid)");
  c_ma->add_option("--grid", ma.grid, "grid intervals")->capture_default_str();
  c_ma->add_option("--out", ma.out.path, "output directory");

  SimulateArgs si;
  CLI::App* c_si = add_sub("simulate", "stochastic runs and occupation statistics");
  c_si->add_option("--n", si.n, "lattice half-width")->capture_default_str();
  c_si->add_option("--k-boundary", si.k_boundary, "boundary interval length")
      ->capture_default_str();
  c_si->add_option("--j", si.j, "reservoir strength")->capture_default_str();
  c_si->add_option("--init", si.init, "ones|zeros|half|stationary|file:PATH")
      ->capture_default_str();
  c_si->add_option("--t-burn", si.t_burn, "burn-in time")->capture_default_str();
  c_si->add_option("--t-avg", si.t_avg, "averaging window")->capture_default_str();
  c_si->add_option("--replicas", si.replicas, "independent replicas")->capture_default_str();
  c_si->add_option("--threads", si.threads, "worker threads")->capture_default_str();
  c_si->add_option("--batches", si.batches, "batches per replica")->capture_default_str();
  c_si->add_option("--block", si.block, "block half-width (default n^0.6)");
  c_si->add_option("--seed", si.seed, "master seed")->capture_default_str();
  c_si->add_option("--out", si.out.path, "output directory");

  RelaxArgs re;
  CLI::App* c_re = add_sub("relax", "relaxation of the density toward stationarity");
  c_re->add_option("--j", re.j, "reservoir strength")->capture_default_str();
  c_re->add_option("--k-boundary", re.k_boundary, "boundary interval length")
      ->capture_default_str();
  c_re->add_option("--t-end", re.t_end, "horizon")->capture_default_str();
  c_re->add_option("--h", re.h, "trace time step")->capture_default_str();
  c_re->add_option("--sample-every", re.sample_every, "gap sampling period")
      ->capture_default_str();
  c_re->add_option("--grid", re.grid, "grid intervals")->capture_default_str();
  c_re->add_option("--out", re.out.path, "output directory");

  CoupleArgs co;
  CLI::App* c_co = add_sub("couple", "ordered pair coupling and mirror audits");
  c_co->add_option("--n", co.n, "lattice half-width")->capture_default_str();
  c_co->add_option("--k-boundary", co.k_boundary, "boundary interval length")
      ->capture_default_str();
  c_co->add_option("--j", co.j, "reservoir strength")->capture_default_str();
  c_co->add_option("--t-end", co.t_end, "horizon")->capture_default_str();
  c_co->add_option("--seed", co.seed, "master seed")->capture_default_str();
  c_co->add_option("--out", co.out.path, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (c_st->parsed()) return run_stationary(st);
    if (c_ma->parsed()) return run_macro(ma);
    if (c_si->parsed()) return run_simulate(si);
    if (c_re->parsed()) return run_relax(re);
    if (c_co->parsed()) return run_couple(co);
    throw ConfigError("no subcommand given");
  } catch (const NonConvergence& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const RangeViolation& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const OrderViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace sepsim
