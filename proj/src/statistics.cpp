#include "sepsim/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sepsim/errors.hpp"

namespace sepsim {

OccupationIntegrator::OccupationIntegrator(const ModelParams& params, double t_end, int batches)
    : params_(params), t_end_(t_end), batches_(batches) {
  params_.validate();
  if (!(t_end_ > 0.0) || !std::isfinite(t_end_))
    throw ConfigError("averaging window must be > 0");
  if (batches_ < 1) throw ConfigError("need at least one batch");
}

void OccupationIntegrator::require_not_begun(const char* what) const {
  if (begun_) throw ConfigError(std::string(what) + " must be called before begin()");
}

void OccupationIntegrator::add_tuple(std::vector<int> sites) {
  require_not_begun("add_tuple");
  if (sites.empty()) throw ConfigError("tuple needs at least one site");
  for (int x : sites)
    if (x < -params_.n || x > params_.n) throw ConfigError("tuple site outside the lattice");
  tuple_sites_.push_back(std::move(sites));
}

void OccupationIntegrator::watch_bond(int x) {
  require_not_begun("watch_bond");
  if (x < -params_.n || x >= params_.n) throw ConfigError("watched bond outside the lattice");
  watch_x_ = x;
  watching_ = true;
}

void OccupationIntegrator::begin(const Configuration& config) {
  require_not_begun("begin");
  const std::size_t sites = static_cast<std::size_t>(params_.sites());
  if (config.size() != params_.sites()) throw ConfigError("configuration size mismatch");
  occ_.resize(sites);
  for (int x = -params_.n; x <= params_.n; ++x) occ_[slot(x)] = config.occupied(x) ? 1 : 0;
  last_.assign(sites, 0.0);
  acc_.assign(sites, 0.0);
  total_.assign(sites, 0.0);
  site_batch_.clear();
  site_batch_.reserve(static_cast<std::size_t>(batches_));

  const std::size_t nt = tuple_sites_.size();
  tuple_slots_.resize(nt);
  slot_tuples_.assign(sites, {});
  tuple_occupied_.assign(nt, 0);
  tuple_last_.assign(nt, 0.0);
  tuple_acc_.assign(nt, 0.0);
  tuple_total_.assign(nt, 0.0);
  tuple_batch_.clear();
  for (std::size_t id = 0; id < nt; ++id) {
    for (int x : tuple_sites_[id]) {
      const std::size_t s = slot(x);
      tuple_slots_[id].push_back(s);
      slot_tuples_[s].push_back(id);
      tuple_occupied_[id] += occ_[s];
    }
  }

  cur_batch_ = 0;
  batch_start_ = 0.0;
  next_edge_ = t_end_ / batches_;
  begun_ = true;
}

void OccupationIntegrator::settle_slot(std::size_t s, double t) {
  if (occ_[s]) acc_[s] += t - last_[s];
  last_[s] = t;
}

void OccupationIntegrator::settle_tuple(std::size_t id, double t) {
  if (tuple_occupied_[id] == static_cast<int>(tuple_slots_[id].size()))
    tuple_acc_[id] += t - tuple_last_[id];
  tuple_last_[id] = t;
}

void OccupationIntegrator::settle_all(double t) {
  for (std::size_t s = 0; s < occ_.size(); ++s) settle_slot(s, t);
  for (std::size_t id = 0; id < tuple_slots_.size(); ++id) settle_tuple(id, t);
}

void OccupationIntegrator::close_batch() {
  settle_all(next_edge_);
  const double len = next_edge_ - batch_start_;
  std::vector<double> row(occ_.size());
  for (std::size_t s = 0; s < occ_.size(); ++s) {
    row[s] = acc_[s] / len;
    total_[s] += acc_[s];
    acc_[s] = 0.0;
  }
  site_batch_.push_back(std::move(row));
  std::vector<double> trow(tuple_slots_.size());
  for (std::size_t id = 0; id < tuple_slots_.size(); ++id) {
    trow[id] = tuple_acc_[id] / len;
    tuple_total_[id] += tuple_acc_[id];
    tuple_acc_[id] = 0.0;
  }
  tuple_batch_.push_back(std::move(trow));
  ++cur_batch_;
  batch_start_ = next_edge_;
  next_edge_ = t_end_ * (cur_batch_ + 1) / batches_;
}

void OccupationIntegrator::on_event(double t, const Event& ev, const Configuration& config) {
  (void)config;
  if (!begun_) throw ConfigError("OccupationIntegrator saw an event before begin()");
  while (cur_batch_ + 1 < batches_ && t > next_edge_) close_batch();
  ++flow_.events;

  auto flip = [&](std::size_t s) {
    settle_slot(s, t);
    occ_[s] ^= 1;
    const int d = occ_[s] ? 1 : -1;
    for (std::size_t id : slot_tuples_[s]) {
      settle_tuple(id, t);
      tuple_occupied_[id] += d;
    }
  };

  switch (ev.kind) {
    case EventKind::Exchange: {
      const std::size_t s = slot(ev.site);
      flip(s);
      flip(s + 1);
      if (watching_ && ev.site == watch_x_) {
        // after the swap, an empty left endpoint means the particle moved right
        if (occ_[s] == 0)
          ++flow_.right;
        else
          ++flow_.left;
      }
      break;
    }
    case EventKind::Birth:
      flip(slot(ev.site));
      ++flow_.births;
      break;
    case EventKind::Death:
      flip(slot(ev.site));
      ++flow_.deaths;
      break;
    case EventKind::BirthAborted:
      ++flow_.birth_aborts;
      break;
    case EventKind::DeathAborted:
      ++flow_.death_aborts;
      break;
    case EventKind::None:
      break;
  }
}

void OccupationIntegrator::on_finish(double t_end, const Configuration& config) {
  (void)config;
  if (!begun_) throw ConfigError("OccupationIntegrator finished before begin()");
  if (std::fabs(t_end - t_end_) > 1e-9 * std::max(1.0, t_end_))
    throw ConfigError("trajectory horizon does not match the averaging window");
  while (cur_batch_ < batches_) close_batch();
  site_mean_.resize(occ_.size());
  for (std::size_t s = 0; s < occ_.size(); ++s) site_mean_[s] = total_[s] / t_end_;
  tuple_mean_.resize(tuple_slots_.size());
  for (std::size_t id = 0; id < tuple_slots_.size(); ++id)
    tuple_mean_[id] = tuple_total_[id] / t_end_;
  finished_ = true;
}

const std::vector<double>& OccupationIntegrator::site_mean() const {
  if (!finished_) throw ConfigError("run not finished");
  return site_mean_;
}

const std::vector<std::vector<double>>& OccupationIntegrator::site_batch() const {
  if (!finished_) throw ConfigError("run not finished");
  return site_batch_;
}

const std::vector<double>& OccupationIntegrator::tuple_mean() const {
  if (!finished_) throw ConfigError("run not finished");
  return tuple_mean_;
}

const std::vector<std::vector<double>>& OccupationIntegrator::tuple_batch() const {
  if (!finished_) throw ConfigError("run not finished");
  return tuple_batch_;
}

double OccupationIntegrator::bond_current() const {
  if (!finished_) throw ConfigError("run not finished");
  if (!watching_) throw ConfigError("no bond was watched");
  return (static_cast<double>(flow_.right) - static_cast<double>(flow_.left)) /
         (params_.n * t_end_);
}

double OccupationIntegrator::birth_rate() const {
  if (!finished_) throw ConfigError("run not finished");
  return static_cast<double>(flow_.births) / (params_.n * t_end_);
}

double OccupationIntegrator::death_rate() const {
  if (!finished_) throw ConfigError("run not finished");
  return static_cast<double>(flow_.deaths) / (params_.n * t_end_);
}

GridFunction OccupationIntegrator::profile() const {
  return GridFunction(2 * params_.n, site_mean());
}

EnsembleMoments::EnsembleMoments(const ModelParams& params) : params_(params) {
  params_.validate();
  site_sum_.assign(static_cast<std::size_t>(params_.sites()), 0);
}

void EnsembleMoments::add_tuple(std::vector<int> sites) {
  if (samples_ > 0) throw ConfigError("register tuples before adding snapshots");
  if (sites.empty() || sites.size() > 31) throw ConfigError("tuple size must be in [1, 31]");
  for (int x : sites)
    if (x < -params_.n || x > params_.n) throw ConfigError("tuple site outside the lattice");
  tuples_.push_back(std::move(sites));
  rows_.emplace_back();
}

void EnsembleMoments::add(const Configuration& config) {
  if (config.size() != params_.sites()) throw ConfigError("configuration size mismatch");
  for (int x = -params_.n; x <= params_.n; ++x)
    site_sum_[static_cast<std::size_t>(x + params_.n)] += config.occupied(x) ? 1 : 0;
  for (std::size_t id = 0; id < tuples_.size(); ++id) {
    std::uint32_t bits = 0;
    for (std::size_t k = 0; k < tuples_[id].size(); ++k)
      if (config.occupied(tuples_[id][k])) bits |= (1u << k);
    rows_[id].push_back(bits);
  }
  ++samples_;
}

double EnsembleMoments::site_mean(int site) const {
  if (samples_ == 0) throw ConfigError("no snapshots");
  if (site < -params_.n || site > params_.n) throw ConfigError("site outside the lattice");
  return static_cast<double>(site_sum_[static_cast<std::size_t>(site + params_.n)]) /
         static_cast<double>(samples_);
}

double EnsembleMoments::defect_of_rows(std::size_t tuple,
                                       const std::vector<std::uint32_t>& rows) const {
  const std::size_t k = tuples_[tuple].size();
  const std::uint32_t full = (1u << k) - 1;
  std::vector<double> singles(k, 0.0);
  double prod = 0.0;
  for (std::uint32_t bits : rows) {
    if (bits == full) prod += 1.0;
    for (std::size_t i = 0; i < k; ++i)
      if (bits & (1u << i)) singles[i] += 1.0;
  }
  const double inv = 1.0 / static_cast<double>(rows.size());
  double factorized = 1.0;
  for (double s : singles) factorized *= s * inv;
  return std::fabs(prod * inv - factorized);
}

double EnsembleMoments::tuple_product_mean(std::size_t tuple) const {
  if (tuple >= tuples_.size()) throw ConfigError("tuple index out of range");
  if (samples_ == 0) throw ConfigError("no snapshots");
  const std::uint32_t full = (1u << tuples_[tuple].size()) - 1;
  std::uint64_t c = 0;
  for (std::uint32_t bits : rows_[tuple])
    if (bits == full) ++c;
  return static_cast<double>(c) / static_cast<double>(samples_);
}

double EnsembleMoments::chaos_defect(std::size_t tuple) const {
  if (tuple >= tuples_.size()) throw ConfigError("tuple index out of range");
  if (samples_ == 0) throw ConfigError("no snapshots");
  return defect_of_rows(tuple, rows_[tuple]);
}

double EnsembleMoments::chaos_defect_stderr(std::size_t tuple, int resamples, Rng& rng) const {
  if (tuple >= tuples_.size()) throw ConfigError("tuple index out of range");
  if (samples_ < 2) throw ConfigError("need at least two snapshots");
  if (resamples < 2) throw ConfigError("need at least two resamples");
  const std::vector<std::uint32_t>& rows = rows_[tuple];
  std::vector<std::uint32_t> resampled(rows.size());
  double sum = 0.0, sum2 = 0.0;
  for (int b = 0; b < resamples; ++b) {
    for (std::size_t i = 0; i < rows.size(); ++i)
      resampled[i] = rows[rng.below(static_cast<std::uint32_t>(rows.size()))];
    const double d = defect_of_rows(tuple, resampled);
    sum += d;
    sum2 += d * d;
  }
  const double mean = sum / resamples;
  const double var = std::max(0.0, sum2 / resamples - mean * mean);
  return std::sqrt(var * resamples / (resamples - 1));
}

double block_average_l1(const std::vector<double>& site_means, int n, int block,
                        const std::function<double(double)>& reference) {
  if (site_means.size() != static_cast<std::size_t>(2 * n + 1))
    throw ConfigError("site mean count must be 2n+1");
  if (block < 0 || block > 2 * n) throw ConfigError("block half-width out of range");
  double num = 0.0, den = 0.0;
  for (int x = -n; x <= n; ++x) {
    const int lo = std::max(-n, x - block), hi = std::min(n, x + block);
    double s = 0.0;
    for (int y = lo; y <= hi; ++y) s += site_means[static_cast<std::size_t>(y + n)];
    const double avg = s / (hi - lo + 1);
    const double w = (x == -n || x == n) ? 0.5 : 1.0;
    num += w * std::fabs(avg - reference(static_cast<double>(x) / n));
    den += w;
  }
  return num / den;
}

double batch_stderr(const std::vector<double>& batch_values) {
  const std::size_t b = batch_values.size();
  if (b < 2) throw ConfigError("need at least two batches");
  double mean = 0.0;
  for (double v : batch_values) mean += v;
  mean /= static_cast<double>(b);
  double var = 0.0;
  for (double v : batch_values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(b - 1);
  return std::sqrt(var / static_cast<double>(b));
}

double bootstrap_stderr(const std::vector<std::vector<double>>& rows,
                        const std::function<double(const std::vector<double>&)>& stat,
                        int resamples, Rng& rng) {
  if (rows.empty()) throw ConfigError("no batch rows");
  const std::size_t b = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != b) throw ConfigError("batch rows must have equal length");
  if (b < 2) throw ConfigError("need at least two batches");
  if (resamples < 2) throw ConfigError("need at least two resamples");

  std::vector<double> pooled(rows.size());
  double sum = 0.0, sum2 = 0.0;
  for (int s = 0; s < resamples; ++s) {
    std::fill(pooled.begin(), pooled.end(), 0.0);
    for (std::size_t i = 0; i < b; ++i) {
      const std::size_t pick = rng.below(static_cast<std::uint32_t>(b));
      for (std::size_t q = 0; q < rows.size(); ++q) pooled[q] += rows[q][pick];
    }
    for (double& p : pooled) p /= static_cast<double>(b);
    const double v = stat(pooled);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / resamples;
  const double var = std::max(0.0, sum2 / resamples - mean * mean);
  return std::sqrt(var * resamples / (resamples - 1));
}

}  // namespace sepsim
