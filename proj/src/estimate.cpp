#include "perclab/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace perclab {

Interval wilson(std::uint64_t successes, std::uint64_t samples, double z) {
  if (samples == 0) return {0.0, 1.0};
  if (successes > samples) throw std::invalid_argument("more successes than samples");
  const double n = static_cast<double>(samples);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  Interval out{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  if (successes == 0) out.lo = 0.0;
  if (successes == samples) out.hi = 1.0;
  out.lo = std::min(out.lo, phat);
  out.hi = std::max(out.hi, phat);
  return out;
}

Estimate Estimate::from_counts(std::string region, std::string event, double p, std::uint64_t samples,
                               std::uint64_t successes, std::uint64_t seed) {
  Estimate e;
  e.region = std::move(region);
  e.event = std::move(event);
  e.p = p;
  e.samples = samples;
  e.successes = successes;
  e.p_hat = samples ? static_cast<double>(successes) / static_cast<double>(samples) : 0.0;
  const Interval ci = wilson(successes, samples);
  e.ci_lo = ci.lo;
  e.ci_hi = ci.hi;
  e.seed = seed;
  return e;
}

double Estimate::std_error() const {
  if (samples == 0) return 0.0;
  return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(samples));
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

std::vector<std::uint64_t> parallel_tally(std::uint64_t first, std::uint64_t count, std::size_t counters,
                                          unsigned workers, const std::function<TallyBody()>& make_body) {
  std::vector<std::uint64_t> total(counters, 0);
  if (count == 0) return total;
  const std::uint64_t n = std::min<std::uint64_t>(resolve_workers(workers), count);
  std::vector<std::vector<std::uint64_t>> partial(n, std::vector<std::uint64_t>(counters, 0));
  const auto run = [&](std::uint64_t t) {
    const TallyBody body = make_body();
    const std::uint64_t begin = first + count * t / n;
    const std::uint64_t end = first + count * (t + 1) / n;
    for (std::uint64_t i = begin; i < end; ++i) body(i, partial[t]);
  };
  if (n == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::uint64_t t = 0; t < n; ++t) pool.emplace_back(run, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& part : partial) {
    for (std::size_t k = 0; k < counters; ++k) total[k] += part[k];
  }
  return total;
}

std::uint64_t count_successes(const Region& region, const Event& event, double p, std::uint64_t first,
                              std::uint64_t count, std::uint64_t seed, unsigned workers) {
  SampleSpec{p, seed, std::max<std::uint64_t>(count, 1)}.validate();
  const auto tally = parallel_tally(first, count, 1, workers, [&]() -> TallyBody {
    auto c = std::make_shared<Configuration>(region);
    return [c, &event, p, seed](std::uint64_t i, std::span<std::uint64_t> t) {
      sample_into(*c, p, seed, i);
      if (event.test(*c)) ++t[0];
    };
  });
  return tally[0];
}

Estimate mc_probability(const Region& region, const Event& event, double p, std::uint64_t samples,
                        std::uint64_t seed, unsigned workers) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const std::uint64_t hits = count_successes(region, event, p, 0, samples, seed, workers);
  return Estimate::from_counts(descriptor(region), event.name, p, samples, hits, seed);
}

std::vector<Estimate> sweep(const Region& region, const Event& event, const std::vector<double>& grid,
                            std::uint64_t samples, std::uint64_t seed, bool coupled, unsigned workers) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (!std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("p grid must be sorted");
  for (double p : grid) SampleSpec{p, seed, samples}.validate();
  std::vector<Estimate> out;
  if (coupled) {
    const auto tally = parallel_tally(0, samples, grid.size(), workers, [&]() -> TallyBody {
      auto c = std::make_shared<Configuration>(region);
      return [c, &region, &event, &grid, seed](std::uint64_t i, std::span<std::uint64_t> t) {
        const ThresholdTable table = sample_coupled(region, seed, i);
        for (std::size_t k = 0; k < grid.size(); ++k) {
          table.at_into(*c, grid[k]);
          if (event.test(*c)) ++t[k];
        }
      };
    });
    for (std::size_t k = 0; k < grid.size(); ++k) {
      out.push_back(Estimate::from_counts(descriptor(region), event.name, grid[k], samples, tally[k], seed));
    }
    return out;
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const std::uint64_t hits = count_successes(region, event, grid[k], k * samples, samples, seed, workers);
    out.push_back(Estimate::from_counts(descriptor(region), event.name, grid[k], samples, hits, seed));
  }
  return out;
}

LevelSearch locate_level(const Region& region, const Event& event, double level, const ThresholdOptions& opt) {
  if (!(opt.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (opt.initial_samples < 1 || opt.max_samples_per_point < opt.initial_samples) {
    throw std::invalid_argument("need 1 <= initial samples <= max samples per point");
  }
  LevelSearch out;
  out.level = level;
  if (level <= 0.0) {
    out.p = out.bracket_lo = out.bracket_hi = 0.0;
    return out;
  }
  if (level >= 1.0) {
    out.p = out.bracket_lo = out.bracket_hi = 1.0;
    return out;
  }
  const std::string name = descriptor(region);
  const auto estimate_at = [&](double p, std::uint64_t n, std::uint64_t hits) {
    return Estimate::from_counts(name, event.name, p, n, hits, opt.seed);
  };
  const auto affordable = [&](std::uint64_t n) { return out.samples_used + n <= opt.budget; };

  double lo = 0.0;
  double hi = 1.0;
  bool settled = false;
  while (hi - lo > opt.tolerance && !settled) {
    const double mid = 0.5 * (lo + hi);
    std::uint64_t n = opt.initial_samples;
    if (!affordable(n)) {
      out.conclusive = false;
      break;
    }
    std::uint64_t hits = count_successes(region, event, mid, 0, n, opt.seed, opt.workers);
    out.samples_used += n;
    for (;;) {
      const Estimate e = estimate_at(mid, n, hits);
      if (e.ci_hi < level || e.ci_lo > level) {
        out.points.push_back(e);
        (e.ci_hi < level ? lo : hi) = mid;
        break;
      }
      if (2 * n <= opt.max_samples_per_point && affordable(n)) {
        hits += count_successes(region, event, mid, n, n, opt.seed, opt.workers);
        out.samples_used += n;
        n *= 2;
        continue;
      }
      out.points.push_back(e);
      settled = true;
      out.p = mid;
      // The interval still straddles the level: accept mid if the two points
      // tolerance/2 away fall clearly on either side.
      if (!affordable(2 * n)) {
        out.conclusive = false;
        break;
      }
      const double below = std::max(0.0, mid - 0.5 * opt.tolerance);
      const double above = std::min(1.0, mid + 0.5 * opt.tolerance);
      const Estimate eb = estimate_at(below, n, count_successes(region, event, below, 0, n, opt.seed, opt.workers));
      const Estimate ea = estimate_at(above, n, count_successes(region, event, above, 0, n, opt.seed, opt.workers));
      out.samples_used += 2 * n;
      out.points.push_back(eb);
      out.points.push_back(ea);
      if (eb.ci_hi < level && ea.ci_lo > level) {
        lo = below;
        hi = above;
      } else {
        out.conclusive = false;
      }
      break;
    }
  }
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  if (!settled) out.p = 0.5 * (lo + hi);
  return out;
}

ThresholdReport find_threshold(const Region& region, const Event& event, const ThresholdOptions& opt) {
  ThresholdReport out;
  out.region = descriptor(region);
  out.event = event.name;
  out.tolerance = opt.tolerance;
  out.threshold = locate_level(region, event, opt.target, opt);
  if (opt.window) {
    if (!(opt.epsilon > 0.0 && opt.epsilon < 0.5)) throw std::invalid_argument("epsilon must lie in (0, 1/2)");
    out.has_window = true;
    out.epsilon = opt.epsilon;
    out.lower = locate_level(region, event, opt.epsilon, opt);
    out.upper = locate_level(region, event, 1.0 - opt.epsilon, opt);
  }
  return out;
}

Interval ThresholdReport::window_range() const {
  return {upper.bracket_lo - lower.bracket_hi, upper.bracket_hi - lower.bracket_lo};
}

bool ThresholdReport::conclusive() const {
  return threshold.conclusive && (!has_window || (lower.conclusive && upper.conclusive));
}

std::pair<std::uint64_t, bool> origin_cluster_sample(int box, double p, std::uint64_t seed, std::uint64_t index) {
  if (box < 1) throw std::invalid_argument("box size L must be >= 1");
  const int side = 2 * box;  // width and height of [-L, L]^2
  const std::uint64_t thr = open_threshold(p);
  const std::size_t horizontal = static_cast<std::size_t>(side) * (side + 1);
  const auto open_h = [&](int x, int y) {
    const std::size_t idx = static_cast<std::size_t>(y + box) * side + (x + box);
    return edge_draw(seed, index, idx) < thr;
  };
  const auto open_v = [&](int x, int y) {
    const std::size_t idx = horizontal + static_cast<std::size_t>(x + box) * side + (y + box);
    return edge_draw(seed, index, idx) < thr;
  };

  thread_local std::vector<std::uint32_t> stamp;
  thread_local std::uint32_t epoch = 0;
  thread_local std::vector<std::pair<int, int>> stack;
  const std::size_t cells = static_cast<std::size_t>(side + 1) * (side + 1);
  if (stamp.size() < cells || ++epoch == 0) {
    stamp.assign(std::max(stamp.size(), cells), 0);
    epoch = 1;
  }
  const auto cell = [&](int x, int y) { return static_cast<std::size_t>(y + box) * (side + 1) + (x + box); };

  std::uint64_t size = 0;
  bool boundary = false;
  stack.clear();
  stack.emplace_back(0, 0);
  stamp[cell(0, 0)] = epoch;
  while (!stack.empty()) {
    const auto [x, y] = stack.back();
    stack.pop_back();
    ++size;
    if (x == -box || x == box || y == -box || y == box) boundary = true;
    const auto visit = [&](int nx, int ny, bool open) {
      if (!open) return;
      auto& s = stamp[cell(nx, ny)];
      if (s == epoch) return;
      s = epoch;
      stack.emplace_back(nx, ny);
    };
    if (x < box) visit(x + 1, y, open_h(x, y));
    if (x > -box) visit(x - 1, y, open_h(x - 1, y));
    if (y < box) visit(x, y + 1, open_v(x, y));
    if (y > -box) visit(x, y - 1, open_v(x, y - 1));
  }
  return {size, boundary};
}

ClusterStats origin_cluster(int box, double p, std::uint64_t samples, std::uint64_t seed, unsigned workers) {
  if (box < 1) throw std::invalid_argument("box size L must be >= 1");
  SampleSpec{p, seed, samples}.validate();
  const auto tally = parallel_tally(0, samples, 2, workers, [&]() -> TallyBody {
    return [box, p, seed](std::uint64_t i, std::span<std::uint64_t> t) {
      const auto [size, hit] = origin_cluster_sample(box, p, seed, i);
      t[0] += hit;
      t[1] += size;
    };
  });
  ClusterStats out;
  out.box = box;
  out.p = p;
  out.samples = samples;
  out.seed = seed;
  out.boundary_hits = tally[0];
  out.boundary_ci = wilson(tally[0], samples);
  out.mean_size = static_cast<double>(tally[1]) / static_cast<double>(samples);
  return out;
}

}  // namespace perclab
