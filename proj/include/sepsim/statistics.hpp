#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sepsim/configuration.hpp"
#include "sepsim/grid.hpp"
#include "sepsim/params.hpp"
#include "sepsim/process.hpp"
#include "sepsim/rng.hpp"

namespace sepsim {

/// Time-weighted occupation averages over one trajectory window [0, t_end],
/// split into equal batches for error bars. Accumulation is lazy: a site's
/// clock settles only when the site flips, a batch edge passes, or the run
/// finishes, so the per-event cost is O(sites touched).
///
/// Intended use: burn in with a bare simulate_until, call begin() with the
/// resulting configuration, then stream a fresh simulate_until(t_end)
/// through this observer (the chain is Markov, so restarting the clock at
/// the window start is exact).
class OccupationIntegrator final : public TrajectoryObserver {
 public:
  OccupationIntegrator(const ModelParams& params, double t_end, int batches = 20);

  /// Track the product of occupations over these sites. Before begin() only.
  void add_tuple(std::vector<int> sites);

  /// Tally signed particle crossings of bond (x, x+1). Before begin() only;
  /// several bonds may be watched.
  void watch_bond(int x);

  /// Snapshot the state at the start of the averaging window.
  void begin(const Configuration& config);

  void on_event(double t, const Event& ev, const Configuration& config) override;
  void on_finish(double t_end, const Configuration& config) override;

  bool finished() const { return finished_; }
  double elapsed() const { return t_end_; }
  int batch_count() const { return batches_; }

  const std::vector<double>& site_mean() const;
  const std::vector<std::vector<double>>& site_batch() const;  // [batch][site slot]
  const std::vector<double>& tuple_mean() const;
  const std::vector<std::vector<double>>& tuple_batch() const;  // [batch][tuple]
  const std::vector<std::vector<int>>& tuples() const { return tuple_sites_; }

  struct Flow {
    std::uint64_t right = 0, left = 0;  // crossings of the watched bond
    std::uint64_t births = 0, deaths = 0;
    std::uint64_t birth_aborts = 0, death_aborts = 0;
    std::uint64_t events = 0;
  };
  const Flow& flow() const { return flow_; }

  /// (right - left) / (n * t_end): net rightward transport at the watched
  /// bond on the macroscopic flux scale. Stationary expectation is -J/2.
  double bond_current() const;
  /// births / (n * t_end) and deaths / (n * t_end); both approach J/2 at
  /// stationarity.
  double birth_rate() const;
  double death_rate() const;

  /// Site means as a grid function on m = 2n nodes (node i <-> site i - n).
  GridFunction profile() const;

 private:
  std::size_t slot(int site) const { return static_cast<std::size_t>(site + params_.n); }
  void settle_slot(std::size_t s, double t);
  void settle_tuple(std::size_t id, double t);
  void settle_all(double t);
  void close_batch();
  void require_not_begun(const char* what) const;

  ModelParams params_;
  double t_end_;
  int batches_;
  bool begun_ = false;
  bool finished_ = false;

  std::vector<std::uint8_t> occ_;
  std::vector<double> last_, acc_, total_;
  std::vector<std::vector<double>> site_batch_;
  std::vector<double> site_mean_;

  std::vector<std::vector<int>> tuple_sites_;       // as given, site coordinates
  std::vector<std::vector<std::size_t>> tuple_slots_;
  std::vector<std::vector<std::size_t>> slot_tuples_;  // slot -> tuple ids
  std::vector<int> tuple_occupied_;
  std::vector<double> tuple_last_, tuple_acc_, tuple_total_;
  std::vector<std::vector<double>> tuple_batch_;
  std::vector<double> tuple_mean_;

  int watch_x_ = 0;
  bool watching_ = false;
  Flow flow_;

  int cur_batch_ = 0;
  double batch_start_ = 0.0;
  double next_edge_ = 0.0;
};

/// Across-replica moments of site occupations at one fixed time: site means
/// plus product means over registered tuples, with per-snapshot bits kept so
/// factorization defects can be bootstrapped.
class EnsembleMoments {
 public:
  explicit EnsembleMoments(const ModelParams& params);

  /// Register before adding snapshots; at most 31 sites per tuple.
  void add_tuple(std::vector<int> sites);

  void add(const Configuration& config);

  std::size_t samples() const { return samples_; }
  double site_mean(int site) const;
  double tuple_product_mean(std::size_t tuple) const;

  /// |E[prod] - prod of E[site]| for the tuple, the two-and-more-point
  /// factorization defect.
  double chaos_defect(std::size_t tuple) const;

  /// Bootstrap standard error of that defect over snapshots.
  double chaos_defect_stderr(std::size_t tuple, int resamples, Rng& rng) const;

 private:
  double defect_of_rows(std::size_t tuple, const std::vector<std::uint32_t>& rows) const;

  ModelParams params_;
  std::vector<std::vector<int>> tuples_;
  std::vector<std::uint64_t> site_sum_;
  std::vector<std::vector<std::uint32_t>> rows_;  // [tuple][sample] occupancy bits
  std::size_t samples_ = 0;
};

/// Mean absolute deviation between block-averaged site means and a reference
/// profile: sites are averaged over windows [x - block, x + block] clipped to
/// the lattice, then |avg - reference(x/n)| is trapezoid-weighted over the
/// lattice (half weight at x = +-n) and normalized by the total weight.
double block_average_l1(const std::vector<double>& site_means, int n, int block,
                        const std::function<double(double)>& reference);

/// Standard error of the mean of a batch series (sd / sqrt(B)).
double batch_stderr(const std::vector<double>& batch_values);

/// Bootstrap standard error of a statistic of pooled batch means: rows[q][b]
/// holds batch b's mean of quantity q (all rows the same length); stat maps
/// a vector of pooled means, one per quantity, to the statistic.
double bootstrap_stderr(const std::vector<std::vector<double>>& rows,
                        const std::function<double(const std::vector<double>&)>& stat,
                        int resamples, Rng& rng);

}  // namespace sepsim
