// Interface walk between open primal edges and open dual edges of a
// rectangle. Coordinates below are the scaled frame documented on
// InterfaceResult: primal vertices at (4i, 4j + 2), dual vertices at
// (4i + 2, 4j), walk vertices at odd points. Every walk edge crosses the
// line of at most one primal or dual segment through its midpoint, and is
// present iff that segment is not open.

#include <algorithm>
#include <functional>

#include "perclab/crossing.hpp"
#include "perclab/detail/edge_reader.hpp"

namespace perclab {

namespace {

struct Point {
  int x, y;
  bool operator==(const Point&) const = default;
};

bool is_primal_vertex(Point p) { return p.x % 4 == 0 && p.y % 4 == 2; }
bool is_dual_vertex(Point p) { return p.x % 4 == 2 && p.y % 4 == 0; }

struct WalkOutcome {
  bool horizontal = false;
  std::vector<Vertex> path;  // local primal (i, j) or local dual (i, j)
  std::vector<Vertex> walk;
};

class InterfaceWalk {
 public:
  // open_h(i, j): local horizontal edge (i, j)-(i+1, j); open_v(i, j):
  // local vertical edge (i, j)-(i, j+1); 0 <= i <= k, 0 <= j <= l.
  InterfaceWalk(int k, int l, std::function<bool(int, int)> open_h, std::function<bool(int, int)> open_v,
                std::function<std::string()> dump)
      : k_(k), l_(l), open_h_(std::move(open_h)), open_v_(std::move(open_v)), dump_(std::move(dump)) {}

  WalkOutcome run() const {
    const int xmax = 4 * k_ - 1;
    const int ymax = 4 * l_ + 3;
    const auto slot = [&](Point p) { return static_cast<std::size_t>((p.y - 1) / 2) * (2 * k_) + (p.x - 1) / 2; };
    std::vector<std::uint8_t> visited(static_cast<std::size_t>(2 * k_) * (2 * l_ + 2), 0);

    WalkOutcome out;
    Point cur{1, ymax};
    visited[slot(cur)] = 1;
    out.walk.push_back({cur.x, cur.y});
    static constexpr Point kSteps[] = {{2, 0}, {-2, 0}, {0, 2}, {0, -2}};
    for (;;) {
      int outs = 0;
      Point next{0, 0};
      for (const Point step : kSteps) {
        const Point nb{cur.x + step.x, cur.y + step.y};
        if (nb.x < 1 || nb.x > xmax || nb.y < 1 || nb.y > ymax) continue;
        const Point mid{cur.x + step.x / 2, cur.y + step.y / 2};
        if (!present(mid)) continue;
        // Right-hand normal of the unit direction (dx, dy) is (dy, -dx).
        const Point right{mid.x + step.y / 2, mid.y - step.x / 2};
        if (primal_side(mid) == right) {
          ++outs;
          next = nb;
        }
      }
      if (outs == 0) break;
      if (outs > 1) fail("walk vertex with two outgoing edges");
      cur = next;
      if (visited[slot(cur)]) fail("walk revisited a vertex");
      visited[slot(cur)] = 1;
      out.walk.push_back({cur.x, cur.y});
    }

    if (cur == Point{xmax, ymax}) {
      out.horizontal = true;
    } else if (cur == Point{1, 1}) {
      out.horizontal = false;
    } else {
      fail("walk ended away from the two admissible corners");
    }

    std::vector<Vertex> seq;
    seq.reserve(out.walk.size());
    for (const Vertex& w : out.walk) {
      const Vertex v = out.horizontal ? primal_corner(w) : dual_corner(w);
      if (seq.empty() || seq.back() != v) seq.push_back(v);
    }
    seq = loop_erase(seq);
    out.path = out.horizontal ? trim(seq, [](Vertex v) { return v.x == 0; }, [&](Vertex v) { return v.x == k_; })
                              : trim(seq, [&](Vertex v) { return v.y == l_ + 1; }, [](Vertex v) { return v.y == 0; });
    return out;
  }

 private:
  [[noreturn]] void fail(const char* what) const {
    throw InvariantViolation(std::string("interface walk: ") + what + "; configuration " + dump_());
  }

  bool present(Point m) const {
    if (m.x % 2 == 0) {
      // Walk edge is horizontal; it crosses the vertical line x = m.x.
      if (m.x % 4 == 0) {
        if (m.y < 2 || m.y > 4 * l_ + 2) return true;
        return !open_v_(m.x / 4, (m.y - 2) / 4);
      }
      return open_h_((m.x - 2) / 4, m.y / 4);
    }
    // Walk edge is vertical; it crosses the horizontal line y = m.y.
    if (m.y % 4 == 2) return !open_h_(m.x / 4, (m.y - 2) / 4);
    if (m.x < 3 || m.x > 4 * k_ - 3) return true;
    return open_v_((m.x - 2) / 4 + 1, m.y / 4 - 1);
  }

  static Point primal_side(Point m) {
    const Point a = m.x % 2 == 0 ? Point{m.x, m.y - 1} : Point{m.x - 1, m.y};
    const Point b = m.x % 2 == 0 ? Point{m.x, m.y + 1} : Point{m.x + 1, m.y};
    if (is_primal_vertex(a)) return a;
    if (is_primal_vertex(b)) return b;
    return is_dual_vertex(a) ? b : a;
  }

  static Vertex primal_corner(Vertex w) {
    const int px = w.x % 4 == 1 ? w.x - 1 : w.x + 1;
    const int py = w.y % 4 == 1 ? w.y + 1 : w.y - 1;
    return {px / 4, (py - 2) / 4};
  }

  static Vertex dual_corner(Vertex w) {
    const int px = w.x % 4 == 1 ? w.x + 1 : w.x - 1;
    const int py = w.y % 4 == 1 ? w.y - 1 : w.y + 1;
    return {(px - 2) / 4, py / 4};
  }

  static std::vector<Vertex> loop_erase(const std::vector<Vertex>& seq) {
    std::vector<Vertex> path;
    for (const Vertex& v : seq) {
      const auto it = std::find(path.begin(), path.end(), v);
      if (it != path.end()) {
        path.erase(it + 1, path.end());
      } else {
        path.push_back(v);
      }
    }
    return path;
  }

  // Sub-path from the last start-side vertex to the first end-side vertex
  // after it; this drops steps along the sides, which the walk treats as
  // open whatever their state.
  template <class Start, class End>
  std::vector<Vertex> trim(const std::vector<Vertex>& path, Start on_start, End on_end) const {
    std::size_t first = 0;
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (on_start(path[i])) first = i;
    }
    std::size_t last = first;
    while (last < path.size() && !on_end(path[last])) ++last;
    if (last == path.size()) fail("extracted path never reaches the far side");
    return {path.begin() + static_cast<std::ptrdiff_t>(first), path.begin() + static_cast<std::ptrdiff_t>(last) + 1};
  }

  int k_, l_;
  std::function<bool(int, int)> open_h_;
  std::function<bool(int, int)> open_v_;
  std::function<std::string()> dump_;
};

}  // namespace

InterfaceResult interface_decision(const Configuration& config, const Rect& r) {
  const detail::EdgeReader read(config);
  const int x0 = r.x0();
  const int y0 = r.y0();
  const InterfaceWalk walk(
      r.width(), r.height(), [&](int i, int j) { return read.horizontal(x0 + i, y0 + j); },
      [&](int i, int j) { return read.vertical(x0 + i, y0 + j); },
      [&] { return config.to_string() + " rect " + descriptor(Region{r}); });
  WalkOutcome w = walk.run();

  InterfaceResult out;
  out.walk = std::move(w.walk);
  if (w.horizontal) {
    out.kind = InterfaceResult::Kind::HorizontalPrimal;
    out.witness.lattice = Lattice::Primal;
    for (const Vertex& v : w.path) out.witness.vertices.push_back({x0 + v.x, y0 + v.y});
    if (!validate_witness(config, Box::of(r), out.witness, Direction::Horizontal)) {
      throw InvariantViolation("interface walk produced an invalid primal witness; configuration " +
                               config.to_string());
    }
  } else {
    out.kind = InterfaceResult::Kind::VerticalDual;
    out.witness.lattice = Lattice::Dual;
    for (const Vertex& v : w.path) out.witness.vertices.push_back({x0 + v.x, y0 - 1 + v.y});
    const DualRect dual = dual_rect(r).rect;
    if (!validate_witness(config, Box::of(dual), out.witness, Direction::Vertical)) {
      throw InvariantViolation("interface walk produced an invalid dual witness; configuration " +
                               config.to_string());
    }
  }
  return out;
}

std::optional<PathWitness> leftmost_v_crossing(const Configuration& config, const Rect& s) {
  // Quarter turn: local (i', j') of the turned picture is (k - j', i') in S,
  // so the left side of S becomes the top and the walk hugs it.
  const detail::EdgeReader read(config);
  const int x0 = s.x0();
  const int y0 = s.y0();
  const int k = s.width();
  const InterfaceWalk walk(
      s.height(), s.width(), [&](int i, int j) { return read.vertical(x0 + k - j, y0 + i); },
      [&](int i, int j) { return read.horizontal(x0 + k - j - 1, y0 + i); },
      [&] { return config.to_string() + " square " + descriptor(Region{s}); });
  const WalkOutcome w = walk.run();
  if (!w.horizontal) return std::nullopt;

  PathWitness out{{}, Lattice::Primal};
  for (auto it = w.path.rbegin(); it != w.path.rend(); ++it) out.vertices.push_back({x0 + k - it->y, y0 + it->x});
  if (!validate_witness(config, Box::of(s), out, Direction::Vertical)) {
    throw InvariantViolation("left-most crossing failed validation; configuration " + config.to_string());
  }
  return out;
}

}  // namespace perclab
