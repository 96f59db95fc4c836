#include "perclab/config.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "perclab/philox.hpp"

namespace perclab {

namespace {

constexpr char kHex[] = "0123456789abcdef";

std::size_t word_count(std::size_t edges) { return (edges + 63) / 64; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Configuration::Configuration(Region region)
    : region_(std::move(region)), edges_(edge_count(region_)), words_(word_count(edges_), 0) {}

Configuration Configuration::from_mask(Region region, std::uint64_t mask) {
  Configuration c(std::move(region));
  c.assign_mask(mask);
  return c;
}

bool Configuration::is_open(const Edge& e) const {
  const auto idx = index_of(region_, e);
  return idx && open(*idx);
}

void Configuration::fill(bool state) {
  for (auto& w : words_) w = state ? ~std::uint64_t{0} : 0;
  if (state && (edges_ & 63) != 0) words_.back() &= (std::uint64_t{1} << (edges_ & 63)) - 1;
}

void Configuration::assign_mask(std::uint64_t mask) {
  if (edges_ > 64) throw std::invalid_argument("mask assignment needs at most 64 edges");
  if (edges_ < 64 && (mask >> edges_) != 0) throw std::invalid_argument("mask has bits beyond the edge count");
  if (!words_.empty()) words_[0] = mask;
}

std::size_t Configuration::count_open() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::string Configuration::to_string() const {
  const std::size_t digits = (edges_ + 3) / 4;
  std::string hex(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    const std::size_t bit = 4 * d;
    const unsigned nibble = static_cast<unsigned>((words_[bit >> 6] >> (bit & 63)) & 0xF);
    hex[digits - 1 - d] = kHex[nibble];
  }
  return descriptor(region_) + "@" + hex;
}

Configuration Configuration::parse(std::string_view text) {
  const auto at = text.rfind('@');
  if (at == std::string_view::npos) throw std::invalid_argument("configuration needs '@'");
  Configuration c(parse_region(text.substr(0, at)));
  const auto hex = text.substr(at + 1);
  if (hex.size() != (c.edges_ + 3) / 4) throw std::invalid_argument("configuration hex has wrong length");
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const int v = hex_value(hex[hex.size() - 1 - d]);
    if (v < 0) throw std::invalid_argument("configuration hex has a bad digit");
    for (int b = 0; b < 4; ++b) {
      const std::size_t idx = 4 * d + b;
      if ((v >> b) & 1) {
        if (idx >= c.edges_) throw std::invalid_argument("configuration hex sets a bit beyond the edge count");
        c.set(idx, true);
      }
    }
  }
  return c;
}

void SampleSpec::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (count < 1) throw std::invalid_argument("sample count must be >= 1");
}

std::uint64_t open_threshold(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  return static_cast<std::uint64_t>(std::ceil(std::ldexp(p, 32)));
}

std::uint32_t edge_draw(std::uint64_t seed, std::uint64_t sample_index, std::size_t edge) {
  return philox_block(seed, sample_index, edge / 4)[edge % 4];
}

Configuration sample(const Region& region, double p, std::uint64_t seed, std::uint64_t sample_index) {
  Configuration c(region);
  sample_into(c, p, seed, sample_index);
  return c;
}

void sample_into(Configuration& out, double p, std::uint64_t seed, std::uint64_t sample_index) {
  const std::uint64_t thr = open_threshold(p);
  auto words = out.words();
  for (auto& w : words) w = 0;
  if (thr == 0) return;
  if (thr > 0xFFFFFFFFULL) {
    out.fill(true);
    return;
  }
  const std::size_t n = out.size();
  for (std::size_t block = 0; 4 * block < n; ++block) {
    const auto r = philox_block(seed, sample_index, block);
    for (std::size_t k = 0; k < 4; ++k) {
      const std::size_t idx = 4 * block + k;
      if (idx >= n) break;
      if (r[k] < thr) words[idx >> 6] |= std::uint64_t{1} << (idx & 63);
    }
  }
}

ThresholdTable::ThresholdTable(Region region, std::vector<std::uint32_t> draws)
    : region_(std::move(region)), draws_(std::move(draws)) {
  if (draws_.size() != edge_count(region_)) throw std::invalid_argument("one draw per edge required");
}

Configuration ThresholdTable::at(double p) const {
  Configuration c(region_);
  at_into(c, p);
  return c;
}

void ThresholdTable::at_into(Configuration& out, double p) const {
  const std::uint64_t thr = open_threshold(p);
  for (std::size_t i = 0; i < draws_.size(); ++i) out.set(i, draws_[i] < thr);
}

ThresholdTable sample_coupled(const Region& region, std::uint64_t seed, std::uint64_t sample_index) {
  const std::size_t n = edge_count(region);
  std::vector<std::uint32_t> draws(n);
  for (std::size_t block = 0; 4 * block < n; ++block) {
    const auto r = philox_block(seed, sample_index, block);
    for (std::size_t k = 0; k < 4 && 4 * block + k < n; ++k) draws[4 * block + k] = r[k];
  }
  return {region, std::move(draws)};
}

Configuration dualize(const Configuration& config) {
  if (const auto* r = std::get_if<Rect>(&config.region())) {
    const DualRectMap map = dual_rect(*r);
    Configuration out(map.rect);
    for (std::size_t i = 0; i < map.primal_partner.size(); ++i) {
      if (map.primal_partner[i]) out.set(i, !config.open(*map.primal_partner[i]));
    }
    return out;
  }
  if (const auto* d = std::get_if<DualRect>(&config.region())) {
    if (d->width() < 2) throw std::invalid_argument("dual of a dual rectangle needs width >= 2");
    const Rect target = dual_rect(*d);
    Configuration out(target);
    const Region src = *d;
    for (std::size_t i = 0; i < target.edge_count(); ++i) {
      const Edge pe = edge_at(Region{target}, i);
      const DualEdge de = dual_of(pe);
      const auto src_idx = index_of(src, Edge{de.orientation, {de.anchor.i, de.anchor.j}});
      if (src_idx) out.set(i, !config.open(*src_idx));
    }
    return out;
  }
  throw std::invalid_argument("dualize needs a rect or dualrect configuration");
}

}  // namespace perclab
