#pragma once

// Renormalization: iteration maps for crossing probabilities of doubling
// rectangles, the series bound for 1-dependent percolation, and the
// coarse lattice whose edges are G events of 3n by n blocks.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "perclab/estimate.hpp"
#include "perclab/oracle.hpp"

namespace perclab {

/// x -> 1 - (1 - x^5)^2 (quintic) or x -> 1 - (1 - x^4)^2 (quartic).
struct IterationMap {
  enum class Kind : std::uint8_t { Quintic, Quartic };
  Kind kind = Kind::Quintic;

  double operator()(double x) const;
  std::string name() const;
  static IterationMap parse(std::string_view name);
};

class NoSignChange : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest root of f(x) = x in (0, 1), to within `tolerance`.
double fixed_point(const IterationMap& map, double tolerance = 1e-6);

/// x0, f(x0), ..., f^k(x0).
std::vector<double> iterate(const IterationMap& map, double x0, int k);

/// Steps k at which 1 - x_k exceeds 2^-k (1 - x_0). Empty for every quintic
/// sequence started within 1/50 of 1.
std::vector<int> decay_violations(const std::vector<double>& sequence);

/// Sum over l >= 4 of l q^l with q = 3 (1 - p0)^(1/4), in closed form.
/// Throws std::domain_error for p0 <= 80/81, where the series diverges.
double one_dep_series(double p0);
/// The same sum truncated at l = terms.
double one_dep_partial_sum(double p0, int terms = 400);
/// The p0 at which the series equals 1.
double series_threshold(double tolerance = 1e-6);

/// Density from which 1-dependent percolation is known to percolate.
inline constexpr double kCitedP0 = 0.8639;

/// Crossing probability i_n with i_n^(3/2) >= p0 suffices.
struct CrossingRequirement {
  double p0 = kCitedP0;
  double required = 0.0;  // p0^(2/3)
  bool met_by(double crossing) const;
};
CrossingRequirement crossing_requirement(double p0 = kCitedP0);

/// Coarse W by H lattice over the fine region [0, 2nW + n] x [0, 2nH + n].
/// Coarse edge (x, y)-(x + 1, y) is open iff G holds for the 3n by n block
/// [2nx, 2nx + 3n] x [2ny, 2ny + n]; vertical edges use the transposed block.
class CoarseLattice {
 public:
  CoarseLattice(int n, int width, int height);

  int n() const { return n_; }
  int width() const { return width_; }
  int height() const { return height_; }
  const Configuration& config() const { return config_; }
  Configuration& config() { return config_; }

  /// Fine block of a coarse edge.
  Rect block(const Edge& coarse) const;
  /// Fine n by n square of a coarse vertex.
  Rect anchor_square(Vertex coarse) const;
  /// Smallest fine region the lattice reads.
  Rect fine_region() const;

  /// "coarse:<n>:" followed by the configuration's text form.
  std::string to_string() const;
  static CoarseLattice parse(std::string_view text);

  bool operator==(const CoarseLattice& o) const { return n_ == o.n_ && config_ == o.config_; }

 private:
  int n_, width_, height_;
  Configuration config_;
};

/// Throws std::invalid_argument if the fine region misses a block.
CoarseLattice coarse_grain(const Configuration& fine, int n, int width, int height);

struct EmbeddingReport {
  std::size_t clusters_checked = 0;  // coarse clusters with at least one edge
  std::size_t violations = 0;
  std::optional<Vertex> first_violation;  // a coarse vertex of the failing cluster
  bool ok() const { return violations == 0; }
};

/// Every coarse open cluster must have one fine open cluster meeting all of
/// its anchor squares.
EmbeddingReport verify_embedding(const Configuration& fine, const CoarseLattice& coarse);

struct EmbeddingAudit {
  int n = 0, width = 0, height = 0;
  double p = 0.0;
  std::uint64_t samples = 0, seed = 0;
  std::uint64_t violations = 0;           // samples with a violation
  std::uint64_t coarse_open_edges = 0;    // summed over samples
  std::optional<std::uint64_t> first_bad_sample;
};

EmbeddingAudit audit_embedding(int n, int width, int height, double p, std::uint64_t samples, std::uint64_t seed,
                               unsigned workers = 1);

/// Two coarse edges (0,0)-(1,0) and (2,0)-(3,0), whose blocks are disjoint.
struct ProductLawReport {
  int n = 1;
  Rect region{0, 0, 7, 1};
  Polynomial first, second, joint;
  bool holds() const { return joint == first * second; }
};

ProductLawReport product_law_exact(int n = 1, std::size_t cap = kDefaultEdgeCap);

struct IndependenceReport {
  int n = 0;
  double p = 0.0;
  std::uint64_t samples = 0, seed = 0;
  std::uint64_t first = 0, second = 0, joint = 0;  // success counts
  double correlation = 0.0;
  Interval correlation_ci{-1.0, 1.0};  // Fisher z, 95%
  bool holds() const { return correlation_ci.lo <= 0.0 && 0.0 <= correlation_ci.hi; }
};

IndependenceReport independence_mc(int n, double p, std::uint64_t samples, std::uint64_t seed, unsigned workers = 1);

/// R_k shares its lower-left corner with the origin; for even k it is
/// 2^k n wide and 2^(k+1) n tall and must be crossed vertically, for odd k
/// the transpose, crossed horizontally.
Rect doubling_rect(int n, int k);

struct DoublingReport {
  int n = 0, levels = 0;
  double p = 0.0;
  std::vector<Estimate> per_level;  // E_0 .. E_K
  Estimate all;
  double union_bound = 0.0;  // 1 - sum of per-level failure frequencies
  double slack = 0.0;        // 3 sigma, propagated
  std::uint64_t intersection_failures = 0;  // consecutive witnesses disjoint
  bool holds() const { return intersection_failures == 0 && all.p_hat + slack >= union_bound; }
};

DoublingReport doubling_construction(int n, double p, int levels, std::uint64_t samples, std::uint64_t seed,
                                     unsigned workers = 1);

}  // namespace perclab
