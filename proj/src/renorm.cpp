#include "perclab/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>

#include "perclab/union_find.hpp"

namespace perclab {

namespace {

constexpr double kDivergenceEdge = 80.0 / 81.0;

// 1 - x^m, accurate for x near 1.
double one_minus_power(double x, int m) {
  if (x <= 0.0) return 1.0;
  return -std::expm1(m * std::log(x));
}

double series_ratio(double p0) {
  if (!(p0 <= 1.0)) throw std::domain_error("p0 must be at most 1");
  if (p0 <= kDivergenceEdge) throw std::domain_error("series diverges for p0 <= 80/81 (ratio >= 1)");
  return 3.0 * std::pow(1.0 - p0, 0.25);
}

}  // namespace

double IterationMap::operator()(double x) const {
  const double gap = one_minus_power(x, kind == Kind::Quintic ? 5 : 4);
  return 1.0 - gap * gap;
}

std::string IterationMap::name() const { return kind == Kind::Quintic ? "quintic" : "quartic"; }

IterationMap IterationMap::parse(std::string_view name) {
  if (name == "quintic") return {Kind::Quintic};
  if (name == "quartic") return {Kind::Quartic};
  throw std::invalid_argument("unknown map: " + std::string(name));
}

double fixed_point(const IterationMap& map, double tolerance) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const auto g = [&](double x) { return map(x) - x; };
  // Just below 1 the map pulls upward (g > 0); scan down to the first sign change.
  constexpr double step = 1e-3;
  double hi = 1.0 - step;
  if (!(g(hi) > 0.0)) throw NoSignChange("map does not exceed x just below 1");
  double lo = hi - step;
  while (g(lo) > 0.0) {
    hi = lo;
    lo -= step;
    if (lo <= 0.0) throw NoSignChange("no fixed point found in (0, 1)");
  }
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> iterate(const IterationMap& map, double x0, int k) {
  if (!(x0 >= 0.0 && x0 <= 1.0)) throw std::invalid_argument("x0 must lie in [0, 1]");
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  std::vector<double> out{x0};
  for (int i = 0; i < k; ++i) out.push_back(map(out.back()));
  return out;
}

std::vector<int> decay_violations(const std::vector<double>& sequence) {
  std::vector<int> out;
  if (sequence.empty()) return out;
  const double eps = 1.0 - sequence.front();
  for (std::size_t k = 1; k < sequence.size(); ++k) {
    if (1.0 - sequence[k] > std::ldexp(eps, -static_cast<int>(k))) out.push_back(static_cast<int>(k));
  }
  return out;
}

double one_dep_series(double p0) {
  const double q = series_ratio(p0);
  return q / ((1.0 - q) * (1.0 - q)) - q - 2.0 * q * q - 3.0 * q * q * q;
}

double one_dep_partial_sum(double p0, int terms) {
  const double q = series_ratio(p0);
  double sum = 0.0;
  double power = q * q * q * q;
  for (int l = 4; l <= terms; ++l) {
    sum += l * power;
    power *= q;
  }
  return sum;
}

double series_threshold(double tolerance) {
  // The series decreases in p0, from +inf at 80/81 to 0 at 1.
  double lo = kDivergenceEdge, hi = 1.0;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    (one_dep_series(mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

bool CrossingRequirement::met_by(double crossing) const { return std::pow(crossing, 1.5) >= p0; }

CrossingRequirement crossing_requirement(double p0) { return {p0, std::pow(p0, 2.0 / 3.0)}; }

CoarseLattice::CoarseLattice(int n, int width, int height)
    : n_(n), width_(width), height_(height), config_(Rect(0, 0, width, height)) {
  if (n < 1) throw std::invalid_argument("block parameter n must be >= 1");
}

Rect CoarseLattice::block(const Edge& coarse) const {
  const int x = 2 * n_ * coarse.anchor.x;
  const int y = 2 * n_ * coarse.anchor.y;
  return coarse.orientation == Orientation::Horizontal ? Rect(x, y, x + 3 * n_, y + n_)
                                                       : Rect(x, y, x + n_, y + 3 * n_);
}

Rect CoarseLattice::anchor_square(Vertex coarse) const {
  const int x = 2 * n_ * coarse.x;
  const int y = 2 * n_ * coarse.y;
  return {x, y, x + n_, y + n_};
}

Rect CoarseLattice::fine_region() const { return {0, 0, 2 * n_ * width_ + n_, 2 * n_ * height_ + n_}; }

std::string CoarseLattice::to_string() const { return "coarse:" + std::to_string(n_) + ":" + config_.to_string(); }

CoarseLattice CoarseLattice::parse(std::string_view text) {
  constexpr std::string_view prefix = "coarse:";
  if (text.substr(0, prefix.size()) != prefix) throw std::invalid_argument("coarse lattice needs 'coarse:' prefix");
  text.remove_prefix(prefix.size());
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("coarse lattice needs 'coarse:<n>:'");
  const int n = std::stoi(std::string(text.substr(0, colon)));
  Configuration c = Configuration::parse(text.substr(colon + 1));
  const auto* r = std::get_if<Rect>(&c.region());
  if (!r || r->x0() != 0 || r->y0() != 0) throw std::invalid_argument("coarse lattice must be rect:0,0,W,H");
  CoarseLattice out(n, r->x1(), r->y1());
  out.config_ = std::move(c);
  return out;
}

CoarseLattice coarse_grain(const Configuration& fine, int n, int width, int height) {
  CoarseLattice out(n, width, height);
  const auto* region = std::get_if<Rect>(&fine.region());
  if (!region || !region->contains(out.fine_region())) {
    throw std::invalid_argument("fine region must contain " + descriptor(out.fine_region()));
  }
  Configuration& c = out.config();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Edge e = edge_at(c.region(), i);
    const Direction d = e.orientation == Orientation::Horizontal ? Direction::Horizontal : Direction::Vertical;
    c.set(i, detect_g(fine, out.block(e), d));
  }
  return out;
}

EmbeddingReport verify_embedding(const Configuration& fine, const CoarseLattice& coarse) {
  const auto* region = std::get_if<Rect>(&fine.region());
  if (!region) throw std::invalid_argument("fine configuration must live on a rect");
  const int w = region->width() + 1;
  const auto id = [&](Vertex v) { return static_cast<std::uint32_t>((v.y - region->y0()) * w + (v.x - region->x0())); };
  UnionFind uf(static_cast<std::size_t>(w) * (region->height() + 1));
  for (std::size_t i = 0; i < fine.size(); ++i) {
    if (!fine.open(i)) continue;
    const Edge e = edge_at(fine.region(), i);
    uf.unite(id(e.tail()), id(e.head()));
  }
  const auto roots_in = [&](const Rect& sq) {
    std::set<std::uint32_t> roots;
    for (int y = sq.y0(); y <= sq.y1(); ++y) {
      for (int x = sq.x0(); x <= sq.x1(); ++x) roots.insert(uf.find(id({x, y})));
    }
    return roots;
  };

  EmbeddingReport out;
  for (const auto& group : clusters(coarse.config()).groups()) {
    if (group.size() < 2) continue;
    ++out.clusters_checked;
    std::set<std::uint32_t> common = roots_in(coarse.anchor_square(group.front()));
    for (std::size_t k = 1; k < group.size() && !common.empty(); ++k) {
      const auto here = roots_in(coarse.anchor_square(group[k]));
      std::set<std::uint32_t> kept;
      std::set_intersection(common.begin(), common.end(), here.begin(), here.end(),
                            std::inserter(kept, kept.begin()));
      common = std::move(kept);
    }
    if (common.empty()) {
      ++out.violations;
      if (!out.first_violation) out.first_violation = group.front();
    }
  }
  return out;
}

EmbeddingAudit audit_embedding(int n, int width, int height, double p, std::uint64_t samples, std::uint64_t seed,
                               unsigned workers) {
  EmbeddingAudit out{n, width, height, p, samples, seed, 0, 0, std::nullopt};
  const Rect fine = CoarseLattice(n, width, height).fine_region();
  const auto tally = parallel_tally(0, samples, 2, workers, [&]() -> TallyBody {
    auto c = std::make_shared<Configuration>(fine);
    return [c, n, width, height, p, seed](std::uint64_t i, std::span<std::uint64_t> t) {
      sample_into(*c, p, seed, i);
      const CoarseLattice coarse = coarse_grain(*c, n, width, height);
      t[1] += coarse.config().count_open();
      t[0] += !verify_embedding(*c, coarse).ok();
    };
  });
  out.violations = tally[0];
  out.coarse_open_edges = tally[1];
  if (tally[0] > 0) {
    for (std::uint64_t i = 0; i < samples; ++i) {
      const Configuration c = sample(fine, p, seed, i);
      if (!verify_embedding(c, coarse_grain(c, n, width, height)).ok()) {
        out.first_bad_sample = i;
        break;
      }
    }
  }
  return out;
}

ProductLawReport product_law_exact(int n, std::size_t cap) {
  ProductLawReport out;
  out.n = n;
  out.region = Rect(0, 0, 7 * n, n);
  const CoarseLattice lattice(n, 3, 1);
  const Event first = g_event(lattice.block({Orientation::Horizontal, {0, 0}}), Direction::Horizontal);
  const Event second = g_event(lattice.block({Orientation::Horizontal, {2, 0}}), Direction::Horizontal);
  out.first = exact_count(out.region, first, cap).polynomial();
  out.second = exact_count(out.region, second, cap).polynomial();
  out.joint = exact_count(out.region, both(first, second), cap).polynomial();
  return out;
}

IndependenceReport independence_mc(int n, double p, std::uint64_t samples, std::uint64_t seed, unsigned workers) {
  if (samples < 4) throw std::invalid_argument("independence test needs at least 4 samples");
  IndependenceReport out;
  out.n = n;
  out.p = p;
  out.samples = samples;
  out.seed = seed;
  const Rect region(0, 0, 7 * n, n);
  const CoarseLattice lattice(n, 3, 1);
  const Rect a = lattice.block({Orientation::Horizontal, {0, 0}});
  const Rect b = lattice.block({Orientation::Horizontal, {2, 0}});
  const auto tally = parallel_tally(0, samples, 3, workers, [&]() -> TallyBody {
    auto c = std::make_shared<Configuration>(region);
    return [c, a, b, p, seed](std::uint64_t i, std::span<std::uint64_t> t) {
      sample_into(*c, p, seed, i);
      const bool ga = detect_g(*c, a, Direction::Horizontal);
      const bool gb = detect_g(*c, b, Direction::Horizontal);
      t[0] += ga;
      t[1] += gb;
      t[2] += ga && gb;
    };
  });
  out.first = tally[0];
  out.second = tally[1];
  out.joint = tally[2];
  const double m = static_cast<double>(samples);
  const double pa = out.first / m, pb = out.second / m, pab = out.joint / m;
  const double va = pa * (1.0 - pa), vb = pb * (1.0 - pb);
  if (va <= 0.0 || vb <= 0.0) {
    // A constant indicator is uncorrelated with anything.
    out.correlation = 0.0;
    out.correlation_ci = {0.0, 0.0};
    return out;
  }
  out.correlation = (pab - pa * pb) / std::sqrt(va * vb);
  const double z = std::atanh(std::clamp(out.correlation, -0.999999, 0.999999));
  const double half = kZ95 / std::sqrt(m - 3.0);
  out.correlation_ci = {std::tanh(z - half), std::tanh(z + half)};
  return out;
}

Rect doubling_rect(int n, int k) {
  if (n < 1 || k < 0 || k > 20) throw std::invalid_argument("doubling rectangle needs n >= 1 and 0 <= k <= 20");
  const int small = n << k;
  const int large = n << (k + 1);
  return k % 2 == 0 ? Rect(0, 0, small, large) : Rect(0, 0, large, small);
}

DoublingReport doubling_construction(int n, double p, int levels, std::uint64_t samples, std::uint64_t seed,
                                     unsigned workers) {
  if (levels < 0) throw std::invalid_argument("K must be >= 0");
  std::vector<Rect> rects;
  int w = 0, h = 0;
  for (int k = 0; k <= levels; ++k) {
    rects.push_back(doubling_rect(n, k));
    w = std::max(w, rects.back().x1());
    h = std::max(h, rects.back().y1());
  }
  const Rect host(0, 0, w, h);
  const std::size_t count = rects.size();
  // Counters: per level successes, all-hold, intersection failures.
  const auto tally = parallel_tally(0, samples, count + 2, workers, [&]() -> TallyBody {
    auto c = std::make_shared<Configuration>(host);
    return [c, &rects, count, p, seed](std::uint64_t i, std::span<std::uint64_t> t) {
      sample_into(*c, p, seed, i);
      std::vector<std::optional<PathWitness>> found(count);
      bool all = true;
      for (std::size_t k = 0; k < count; ++k) {
        found[k] = k % 2 == 0 ? find_v_crossing(*c, rects[k]) : find_h_crossing(*c, rects[k]);
        t[k] += found[k].has_value();
        all = all && found[k].has_value();
      }
      if (!all) return;
      ++t[count];
      for (std::size_t k = 0; k + 1 < count; ++k) {
        const auto& a = found[k]->vertices;
        std::set<Vertex> seen(a.begin(), a.end());
        const auto& b = found[k + 1]->vertices;
        if (std::none_of(b.begin(), b.end(), [&](const Vertex& v) { return seen.count(v) > 0; })) {
          ++t[count + 1];
          return;
        }
      }
    };
  });
  DoublingReport out;
  out.n = n;
  out.levels = levels;
  out.p = p;
  const std::string region = descriptor(host);
  double failures = 0.0, variance = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const std::string name = (k % 2 == 0 ? "V(" : "H(") + descriptor(rects[k]) + ")";
    out.per_level.push_back(Estimate::from_counts(region, name, p, samples, tally[k], seed));
    failures += 1.0 - out.per_level.back().p_hat;
    variance += std::pow(out.per_level.back().std_error(), 2);
  }
  out.all = Estimate::from_counts(region, "all", p, samples, tally[count], seed);
  out.union_bound = 1.0 - failures;
  out.slack = 3.0 * std::sqrt(variance + std::pow(out.all.std_error(), 2));
  out.intersection_failures = tally[count + 1];
  return out;
}

}  // namespace perclab
