#include "perclab/rsw.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace perclab {

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

double ChainBound::bound() const { return std::ldexp(1.0, -exponent); }

std::vector<ChainBound> chain_bounds(int rho) {
  if (rho < 2) throw std::invalid_argument("rho must be an integer > 1");
  std::vector<std::pair<int, int>> chain{{2, 1}};  // (multiple, exponent)
  while (chain.back().first < 2 * rho) {
    const auto [m, e] = chain.back();
    chain.emplace_back(2 * m - 1, 2 * e + 5);
  }
  std::vector<ChainBound> out;
  std::size_t next = 0;
  for (int multiple = 2; multiple <= 2 * rho; ++multiple) {
    while (chain[next].first < multiple) ++next;
    out.push_back({multiple, chain[next].second, chain[next].first == multiple});
  }
  return out;
}

bool RSWReport::holds() const {
  for (const auto& pt : points) {
    if (!pt.holds) return false;
  }
  return !points.empty();
}

RSWReport check_chain(int n, double p, std::uint64_t samples, std::uint64_t seed, int rho, unsigned workers) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  RSWReport out;
  out.n = n;
  out.rho = rho;
  out.p = p;
  const auto bounds = chain_bounds(rho);
  // One sample of the largest rectangle serves every length: the rectangles
  // share their lower-left corner.
  const Rect host(0, 0, 2 * rho * n, 2 * n);
  std::vector<Event> events;
  for (const auto& b : bounds) events.push_back(h_event(Rect(0, 0, b.multiple * n, 2 * n)));
  const auto tally = parallel_tally(0, samples, events.size(), workers, [&]() -> TallyBody {
    auto c = std::make_shared<Configuration>(host);
    return [c, &events, p, seed](std::uint64_t i, std::span<std::uint64_t> t) {
      sample_into(*c, p, seed, i);
      for (std::size_t k = 0; k < events.size(); ++k) t[k] += events[k].test(*c);
    };
  });
  out.c2_proxy = 1.0;
  for (std::size_t k = 0; k < bounds.size(); ++k) {
    ChainPoint pt;
    pt.bound = bounds[k];
    pt.estimate = Estimate::from_counts(descriptor(host), events[k].name, p, samples, tally[k], seed);
    pt.holds = pt.estimate.p_hat + 3.0 * pt.estimate.std_error() >= pt.bound.bound();
    out.c2_proxy = std::min(out.c2_proxy, pt.estimate.p_hat);
    out.points.push_back(pt);
  }
  return out;
}

AnnulusReport annulus_product(int n, double p, std::uint64_t samples, std::uint64_t seed, unsigned workers) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const Annulus a({0, 0}, n, 3 * n);
  const auto bands = a.bands();
  const Event circuit = circuit_event(a);
  const auto tally = parallel_tally(0, samples, 4, workers, [&]() -> TallyBody {
    auto c = std::make_shared<Configuration>(a);
    return [c, &a, &bands, p, seed](std::uint64_t i, std::span<std::uint64_t> t) {
      sample_into(*c, p, seed, i);
      const bool circ = detect_circuit(*c, a);
      const bool bottom = has_h_crossing(*c, bands[0]);
      const bool all = bottom && has_h_crossing(*c, bands[1]) && has_v_crossing(*c, bands[2]) &&
                       has_v_crossing(*c, bands[3]);
      t[0] += circ;
      t[1] += bottom;
      t[2] += all;
      t[3] += all && !circ;
    };
  });
  AnnulusReport out;
  out.n = n;
  out.p = p;
  const std::string region = descriptor(a);
  out.circuit = Estimate::from_counts(region, circuit.name, p, samples, tally[0], seed);
  out.band = Estimate::from_counts(region, "H(" + descriptor(bands[0]) + ")", p, samples, tally[1], seed);
  out.all_bands = Estimate::from_counts(region, "bands", p, samples, tally[2], seed);
  out.implication_failures = tally[3];
  const double q = out.band.p_hat;
  out.q4 = q * q * q * q;
  const double dq = 4.0 * q * q * q * out.band.std_error();
  const double sc = out.circuit.std_error();
  out.slack = 3.0 * std::sqrt(sc * sc + dq * dq);
  return out;
}

bool torus_symmetric_event(const Configuration& config, int k, int l) {
  const auto* t = std::get_if<Torus>(&config.region());
  if (!t) throw std::invalid_argument("torus event needs a torus configuration");
  if (k < l) throw std::invalid_argument("torus event needs k >= l");
  const int size = t->n();
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      if (has_h_crossing(config, torus_rect(*t, {x, y}, k, l))) return true;
      if (has_v_crossing(config, torus_rect(*t, {x, y}, l, k))) return true;
    }
  }
  return false;
}

Estimate torus_event(const Torus& t, int k, int l, double p, std::uint64_t samples, std::uint64_t seed,
                     unsigned workers) {
  torus_rect(t, {0, 0}, k, l);  // validates k, l <= n - 2
  const Event e{"E(" + std::to_string(k) + "x" + std::to_string(l) + ")",
                [k, l](const Configuration& c) { return torus_symmetric_event(c, k, l); }};
  return mc_probability(t, e, p, samples, seed, workers);
}

std::vector<CoverRect> covering_family() {
  std::vector<CoverRect> out;
  for (auto o : {Direction::Horizontal, Direction::Vertical}) {
    for (int b = 0; b < 8; ++b) {
      for (int a = 0; a < 8; ++a) out.push_back({a, b, o});
    }
  }
  return out;
}

CoveringReport covering_check(int n, const std::vector<CoverRect>& family) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const int size = 16 * n;
  const int step = 2 * n;
  CoveringReport out;
  out.n = n;
  // A horizontal translate [x, x + 14n] x [y, y + 2n] meets the horizontal
  // member [2na, 2na + 12n] x [2nb, 2nb + 4n] in a full-length 12n by 2n
  // strip iff 0 <= 2na - x <= 2n and 0 <= y - 2nb <= 2n (mod 16n); the
  // vertical case is the transpose.
  const auto covers = [&](const CoverRect& r, const TorusPosition& pos) {
    if (r.orientation != pos.orientation) return false;
    const int along = pos.orientation == Direction::Horizontal ? mod(step * r.a - pos.x, size)
                                                               : mod(step * r.b - pos.y, size);
    const int across = pos.orientation == Direction::Horizontal ? mod(pos.y - step * r.b, size)
                                                                : mod(pos.x - step * r.a, size);
    return along <= step && across <= step;
  };
  for (auto o : {Direction::Horizontal, Direction::Vertical}) {
    for (int y = 0; y < size; ++y) {
      for (int x = 0; x < size; ++x) {
        const TorusPosition pos{x, y, o};
        ++out.positions;
        bool hit = false;
        for (const auto& r : family) {
          if (covers(r, pos)) {
            hit = true;
            break;
          }
        }
        if (!hit && !out.uncovered) out.uncovered = pos;
      }
    }
  }
  return out;
}

CoveringReport covering_check(int n) { return covering_check(n, covering_family()); }

SqrtTrickReport sqrt_trick_check(int n, double p, std::uint64_t samples, std::uint64_t seed, unsigned workers) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const Torus t(16 * n);
  const auto family = covering_family();
  const Rect fixed(0, 0, 12 * n, 4 * n);
  const auto tally = parallel_tally(0, samples, 3, workers, [&]() -> TallyBody {
    auto c = std::make_shared<Configuration>(t);
    return [c, n, &family, fixed, p, seed](std::uint64_t i, std::span<std::uint64_t> tl) {
      sample_into(*c, p, seed, i);
      const bool e = torus_symmetric_event(*c, 14 * n, 2 * n);
      const bool e1 = has_h_crossing(*c, fixed);
      tl[0] += !e;
      tl[1] += !e1;
      if (!e) return;
      for (const auto& r : family) {
        const int x = 2 * n * r.a;
        const int y = 2 * n * r.b;
        if (r.orientation == Direction::Horizontal ? has_h_crossing(*c, Rect(x, y, x + 12 * n, y + 4 * n))
                                                   : has_v_crossing(*c, Rect(x, y, x + 4 * n, y + 12 * n))) {
          return;
        }
      }
      ++tl[2];
    };
  });
  SqrtTrickReport out;
  out.n = n;
  out.p = p;
  const std::string region = descriptor(t);
  out.e_complement = Estimate::from_counts(region, "not E", p, samples, tally[0], seed);
  out.e1_complement = Estimate::from_counts(region, "not H(" + descriptor(fixed) + ")", p, samples, tally[1], seed);
  out.union_failures = tally[2];
  const double f = out.e1_complement.p_hat;
  out.rhs = std::pow(f, 128);
  const double d_rhs = 128.0 * std::pow(f, 127) * out.e1_complement.std_error();
  const double se = out.e_complement.std_error();
  out.slack = 3.0 * std::sqrt(se * se + d_rhs * d_rhs);
  return out;
}

}  // namespace perclab
