#pragma once

// Edge-state configurations and reproducible sampling.
//
// Packing: edge i of the region's canonical enumeration is bit (i % 64) of
// word (i / 64), least significant bit first. A configuration built from the
// integer m therefore has edge i open iff bit i of m is set, so counting
// m = 0, 1, 2, ... enumerates configurations in integer order.
//
// Randomness: edge i of sample s under seed k is open at density p iff
// draw(k, s, i) < ceil(p * 2^32), where draw is word i % 4 of the Philox
// block (counter = (i / 4, s), key = k). Thresholding one table of draws at
// two densities p <= q yields edgewise-ordered configurations.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "perclab/lattice.hpp"

namespace perclab {

class Configuration {
 public:
  /// All edges closed.
  explicit Configuration(Region region);
  static Configuration from_mask(Region region, std::uint64_t mask);

  const Region& region() const { return region_; }
  std::size_t size() const { return edges_; }

  bool open(std::size_t idx) const { return (words_[idx >> 6] >> (idx & 63)) & 1U; }
  void set(std::size_t idx, bool state) {
    const std::uint64_t bit = std::uint64_t{1} << (idx & 63);
    if (state) {
      words_[idx >> 6] |= bit;
    } else {
      words_[idx >> 6] &= ~bit;
    }
  }
  void flip(std::size_t idx) { words_[idx >> 6] ^= std::uint64_t{1} << (idx & 63); }
  /// State of a geometric edge; edges outside the region read as closed.
  bool is_open(const Edge& e) const;

  void fill(bool state);
  void assign_mask(std::uint64_t mask);
  std::size_t count_open() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  /// "<descriptor>@<hex>", hex being the packed integer, most significant
  /// digit first, ceil(E / 4) digits.
  std::string to_string() const;
  static Configuration parse(std::string_view text);

  bool operator==(const Configuration& o) const {
    return descriptor(region_) == descriptor(o.region_) && words_ == o.words_;
  }

 private:
  Region region_;
  std::size_t edges_;
  std::vector<std::uint64_t> words_;
};

struct SampleSpec {
  double p = 0.5;
  std::uint64_t seed = 0;
  std::uint64_t count = 1;

  /// Throws std::invalid_argument unless 0 <= p <= 1 and count >= 1.
  void validate() const;
};

/// Integer acceptance bound ceil(p * 2^32); draws below it are open.
std::uint64_t open_threshold(double p);

/// The raw 32-bit draw of one edge.
std::uint32_t edge_draw(std::uint64_t seed, std::uint64_t sample_index, std::size_t edge);

Configuration sample(const Region& region, double p, std::uint64_t seed, std::uint64_t sample_index);
/// Same as sample(), reusing the storage of `out` (whose region is kept).
void sample_into(Configuration& out, double p, std::uint64_t seed, std::uint64_t sample_index);

/// One uniform draw per edge, shared by every density.
class ThresholdTable {
 public:
  ThresholdTable(Region region, std::vector<std::uint32_t> draws);

  const Region& region() const { return region_; }
  std::size_t size() const { return draws_.size(); }
  /// The draw of edge `idx` as a uniform value in [0, 1).
  double uniform(std::size_t idx) const { return draws_[idx] * 0x1p-32; }
  std::uint32_t raw(std::size_t idx) const { return draws_[idx]; }

  Configuration at(double p) const;
  void at_into(Configuration& out, double p) const;

 private:
  Region region_;
  std::vector<std::uint32_t> draws_;
};

ThresholdTable sample_coupled(const Region& region, std::uint64_t seed, std::uint64_t sample_index);

/// Rect config -> config on its horizontal dual R^h (dualrect); dualrect
/// config -> config on its horizontal dual (a primal rect, width >= 2
/// needed). An edge is open iff the edge it crosses is closed; edges that
/// cross nothing in the source (the top and bottom rows) are closed.
Configuration dualize(const Configuration& config);

}  // namespace perclab
