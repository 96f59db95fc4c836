#pragma once

// Seeded Monte Carlo. Sample s of a run with seed k is the configuration
// sample(region, p, k, s); workers take contiguous index ranges and their
// counts are summed, so results never depend on the worker count.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "perclab/event.hpp"

namespace perclab {

inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double lo = 0.0, hi = 1.0;
};

/// Wilson score interval; well behaved at 0 and n successes.
Interval wilson(std::uint64_t successes, std::uint64_t samples, double z = kZ95);

struct Estimate {
  std::string region;
  std::string event;
  double p = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t successes = 0;
  double p_hat = 0.0;
  double ci_lo = 0.0, ci_hi = 1.0;
  std::uint64_t seed = 0;

  static Estimate from_counts(std::string region, std::string event, double p, std::uint64_t samples,
                              std::uint64_t successes, std::uint64_t seed);
  /// Binomial standard error sqrt(p_hat (1 - p_hat) / samples).
  double std_error() const;
  bool contains(double value) const { return ci_lo <= value && value <= ci_hi; }
};

/// 0 means std::thread::hardware_concurrency().
unsigned resolve_workers(unsigned requested);

/// Per-sample work: called with a sample index and the worker's tally.
using TallyBody = std::function<void(std::uint64_t, std::span<std::uint64_t>)>;

/// Runs body(i, tally) for i in [first, first + count); each worker builds
/// its own body (and scratch state) through make_body. Tallies are summed.
std::vector<std::uint64_t> parallel_tally(std::uint64_t first, std::uint64_t count, std::size_t counters,
                                          unsigned workers, const std::function<TallyBody()>& make_body);

Estimate mc_probability(const Region& region, const Event& event, double p, std::uint64_t samples,
                        std::uint64_t seed, unsigned workers = 1);

/// Successes over sample indices [first, first + count).
std::uint64_t count_successes(const Region& region, const Event& event, double p, std::uint64_t first,
                              std::uint64_t count, std::uint64_t seed, unsigned workers = 1);

/// One estimate per grid point (grid must be sorted). Coupled sweeps
/// threshold one table of draws per sample at every p, so each point equals
/// mc_probability with the same seed and an increasing event gives a
/// nondecreasing p_hat. Uncoupled sweeps give point k the sample indices
/// [k * samples, (k + 1) * samples).
std::vector<Estimate> sweep(const Region& region, const Event& event, const std::vector<double>& grid,
                            std::uint64_t samples, std::uint64_t seed, bool coupled = true, unsigned workers = 1);

struct ThresholdOptions {
  double target = 0.5;
  double tolerance = 0.01;
  double epsilon = 0.25;  // window levels epsilon and 1 - epsilon
  bool window = true;
  std::uint64_t initial_samples = 1000;
  std::uint64_t max_samples_per_point = 200000;
  std::uint64_t budget = 10000000;  // region-samples per level search
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct LevelSearch {
  double level = 0.5;
  double p = 0.5;                    // located point
  double bracket_lo = 0.0, bracket_hi = 1.0;
  bool conclusive = true;
  std::uint64_t samples_used = 0;
  std::vector<Estimate> points;      // every probe, in order
};

struct ThresholdReport {
  std::string region, event;
  double tolerance = 0.0;
  LevelSearch threshold;
  bool has_window = false;
  double epsilon = 0.25;
  LevelSearch lower, upper;          // levels epsilon and 1 - epsilon
  double window() const { return upper.p - lower.p; }
  /// Range of window widths consistent with both brackets.
  Interval window_range() const;
  bool conclusive() const;
};

/// Bisection for the p at which Pr_p(event) crosses `level`: at each probe
/// the sample size doubles while the Wilson interval straddles the level.
LevelSearch locate_level(const Region& region, const Event& event, double level, const ThresholdOptions& opt);

ThresholdReport find_threshold(const Region& region, const Event& event, const ThresholdOptions& opt);

struct ClusterStats {
  int box = 0;  // L, for the box [-L, L]^2
  double p = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t boundary_hits = 0;
  Interval boundary_ci;
  double mean_size = 0.0;  // cluster size truncated to the box
  double boundary_fraction() const { return samples ? static_cast<double>(boundary_hits) / samples : 0.0; }
};

/// Explores the cluster of the origin in [-L, L]^2 with free boundary. Edge
/// states are drawn lazily but agree with sample(rect:-L,-L,L,L, p, seed, s).
ClusterStats origin_cluster(int box, double p, std::uint64_t samples, std::uint64_t seed, unsigned workers = 1);

/// Size of the origin cluster and whether it meets the boundary, for one sample.
std::pair<std::uint64_t, bool> origin_cluster_sample(int box, double p, std::uint64_t seed, std::uint64_t index);

}  // namespace perclab
