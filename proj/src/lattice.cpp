#include "perclab/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <stdexcept>

namespace perclab {

namespace {

// Enumeration over a grid box [x0,x1] x [y0,y1] (degenerate sides allowed).
std::size_t box_edge_count(int w, int h) {
  return static_cast<std::size_t>(w) * (h + 1) + static_cast<std::size_t>(w + 1) * h;
}

Edge box_edge_at(int x0, int y0, int w, int h, std::size_t idx) {
  const std::size_t nh = static_cast<std::size_t>(w) * (h + 1);
  if (idx < nh) {
    const int row = static_cast<int>(idx / w);
    const int col = static_cast<int>(idx % w);
    return {Orientation::Horizontal, {x0 + col, y0 + row}};
  }
  idx -= nh;
  const int col = static_cast<int>(idx / h);
  const int row = static_cast<int>(idx % h);
  return {Orientation::Vertical, {x0 + col, y0 + row}};
}

std::optional<std::size_t> box_index_of(int x0, int y0, int w, int h, const Edge& e) {
  const int dx = e.anchor.x - x0;
  const int dy = e.anchor.y - y0;
  if (e.orientation == Orientation::Horizontal) {
    if (dx < 0 || dx >= w || dy < 0 || dy > h) return std::nullopt;
    return static_cast<std::size_t>(dy) * w + dx;
  }
  if (dx < 0 || dx > w || dy < 0 || dy >= h) return std::nullopt;
  return static_cast<std::size_t>(w) * (h + 1) + static_cast<std::size_t>(dx) * h + dy;
}

std::vector<int> parse_ints(std::string_view body, std::size_t expected, std::string_view full) {
  std::vector<int> out;
  while (!body.empty()) {
    const auto comma = body.find(',');
    const auto token = body.substr(0, comma);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
      throw std::invalid_argument("bad region descriptor: " + std::string(full));
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  if (out.size() != expected) {
    throw std::invalid_argument("bad region descriptor: " + std::string(full));
  }
  return out;
}

}  // namespace

DualEdge dual_of(const Edge& e) {
  if (e.orientation == Orientation::Horizontal) {
    return {Orientation::Vertical, {e.anchor.x, e.anchor.y - 1}};
  }
  return {Orientation::Horizontal, {e.anchor.x - 1, e.anchor.y}};
}

Edge primal_of(const DualEdge& d) {
  if (d.orientation == Orientation::Vertical) {
    return {Orientation::Horizontal, {d.anchor.i, d.anchor.j + 1}};
  }
  return {Orientation::Vertical, {d.anchor.i + 1, d.anchor.j}};
}

Rect::Rect(int x0, int y0, int x1, int y1) : x0_(x0), y0_(y0), x1_(x1), y1_(y1) {
  if (x0 >= x1 || y0 >= y1) {
    throw std::invalid_argument("rectangle needs x0 < x1 and y0 < y1");
  }
}

std::size_t Rect::vertex_count() const {
  return static_cast<std::size_t>(width() + 1) * (height() + 1);
}

std::size_t Rect::edge_count() const { return box_edge_count(width(), height()); }

bool Rect::contains(const Rect& r) const {
  return r.x0_ >= x0_ && r.x1_ <= x1_ && r.y0_ >= y0_ && r.y1_ <= y1_;
}

DualRect::DualRect(int i0, int j0, int i1, int j1) : i0_(i0), j0_(j0), i1_(i1), j1_(j1) {
  if (i0 > i1 || j0 >= j1) {
    throw std::invalid_argument("dual rectangle needs i0 <= i1 and j0 < j1");
  }
}

std::size_t DualRect::edge_count() const { return box_edge_count(width(), height()); }

Torus::Torus(int n) : n_(n) {
  if (n < 3) throw std::invalid_argument("torus needs n >= 3");
}

Annulus::Annulus(DualVertex centre, int inner, int outer)
    : centre_(centre), inner_(inner), outer_(outer) {
  if (inner <= 0 || outer <= inner) {
    throw std::invalid_argument("annulus needs 0 < inner < outer");
  }
  auto table = std::make_shared<Table>();
  const Rect box = outer_box();
  const std::size_t total = box.edge_count();
  table->lookup.assign(total, -1);
  for (std::size_t idx = 0; idx < total; ++idx) {
    const Edge e = box_edge_at(box.x0(), box.y0(), box.width(), box.height(), idx);
    if (contains(e)) {
      table->lookup[idx] = static_cast<std::int32_t>(table->edges.size());
      table->edges.push_back(e);
    }
  }
  table_ = std::move(table);
}

int Annulus::doubled_distance(Vertex v) const {
  return std::max(std::abs(2 * v.x - (2 * centre_.i + 1)), std::abs(2 * v.y - (2 * centre_.j + 1)));
}

bool Annulus::contains(Vertex v) const {
  const int d = doubled_distance(v);
  return d >= 2 * inner_ && d <= 2 * outer_;
}

Rect Annulus::outer_box() const {
  return {centre_.i - outer_ + 1, centre_.j - outer_ + 1, centre_.i + outer_, centre_.j + outer_};
}

std::vector<Rect> Annulus::bands() const {
  if (outer_ - inner_ < 2) {
    throw std::invalid_argument("annulus bands need outer - inner >= 2");
  }
  const int i = centre_.i;
  const int j = centre_.j;
  const int a = inner_;
  const int b = outer_;
  return {
      Rect{i - b + 1, j - b + 1, i + b, j - a},  // bottom
      Rect{i - b + 1, j + a + 1, i + b, j + b},  // top
      Rect{i - b + 1, j - b + 1, i - a, j + b},  // left
      Rect{i + a + 1, j - b + 1, i + b, j + b},  // right
  };
}

std::optional<std::size_t> Annulus::index_of(const Edge& e) const {
  const Rect box = outer_box();
  const auto idx = box_index_of(box.x0(), box.y0(), box.width(), box.height(), e);
  if (!idx) return std::nullopt;
  const auto k = table_->lookup[*idx];
  if (k < 0) return std::nullopt;
  return static_cast<std::size_t>(k);
}

std::size_t edge_count(const Region& region) {
  return std::visit([](const auto& r) { return r.edge_count(); }, region);
}

Edge edge_at(const Region& region, std::size_t idx) {
  if (idx >= edge_count(region)) throw std::out_of_range("edge index out of range");
  struct Visitor {
    std::size_t idx;
    Edge operator()(const Rect& r) const {
      return box_edge_at(r.x0(), r.y0(), r.width(), r.height(), idx);
    }
    Edge operator()(const DualRect& d) const {
      return box_edge_at(d.i0(), d.j0(), d.width(), d.height(), idx);
    }
    Edge operator()(const Torus& t) const {
      const auto n = static_cast<std::size_t>(t.n());
      if (idx < n * n) {
        return {Orientation::Horizontal, {static_cast<int>(idx % n), static_cast<int>(idx / n)}};
      }
      const std::size_t v = idx - n * n;
      return {Orientation::Vertical, {static_cast<int>(v / n), static_cast<int>(v % n)}};
    }
    Edge operator()(const Annulus& a) const { return a.edge_at(idx); }
  };
  return std::visit(Visitor{idx}, region);
}

std::optional<std::size_t> index_of(const Region& region, const Edge& e) {
  struct Visitor {
    const Edge& e;
    std::optional<std::size_t> operator()(const Rect& r) const {
      return box_index_of(r.x0(), r.y0(), r.width(), r.height(), e);
    }
    std::optional<std::size_t> operator()(const DualRect& d) const {
      return box_index_of(d.i0(), d.j0(), d.width(), d.height(), e);
    }
    std::optional<std::size_t> operator()(const Torus& t) const {
      const auto n = static_cast<std::size_t>(t.n());
      const auto x = static_cast<std::size_t>(t.wrap(e.anchor.x));
      const auto y = static_cast<std::size_t>(t.wrap(e.anchor.y));
      if (e.orientation == Orientation::Horizontal) return y * n + x;
      return n * n + x * n + y;
    }
    std::optional<std::size_t> operator()(const Annulus& a) const { return a.index_of(e); }
  };
  return std::visit(Visitor{e}, region);
}

std::vector<Edge> enumerate_edges(const Region& region) {
  const std::size_t n = edge_count(region);
  std::vector<Edge> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(edge_at(region, i));
  return out;
}

std::string descriptor(const Region& region) {
  struct Visitor {
    std::string operator()(const Rect& r) const {
      return "rect:" + std::to_string(r.x0()) + "," + std::to_string(r.y0()) + "," +
             std::to_string(r.x1()) + "," + std::to_string(r.y1());
    }
    std::string operator()(const DualRect& d) const {
      return "dualrect:" + std::to_string(d.i0()) + "," + std::to_string(d.j0()) + "," +
             std::to_string(d.i1()) + "," + std::to_string(d.j1());
    }
    std::string operator()(const Torus& t) const { return "torus:" + std::to_string(t.n()); }
    std::string operator()(const Annulus& a) const {
      return "annulus:" + std::to_string(a.centre().i) + "," + std::to_string(a.centre().j) + "," +
             std::to_string(a.inner()) + "," + std::to_string(a.outer());
    }
  };
  return std::visit(Visitor{}, region);
}

Region parse_region(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("bad region descriptor: " + std::string(text));
  }
  const auto kind = text.substr(0, colon);
  const auto body = text.substr(colon + 1);
  if (kind == "rect") {
    const auto v = parse_ints(body, 4, text);
    return Rect{v[0], v[1], v[2], v[3]};
  }
  if (kind == "dualrect") {
    const auto v = parse_ints(body, 4, text);
    return DualRect{v[0], v[1], v[2], v[3]};
  }
  if (kind == "torus") {
    return Torus{parse_ints(body, 1, text)[0]};
  }
  if (kind == "annulus") {
    const auto v = parse_ints(body, 4, text);
    return Annulus{DualVertex{v[0], v[1]}, v[2], v[3]};
  }
  throw std::invalid_argument("unknown region kind: " + std::string(kind));
}

DualRectMap dual_rect(const Rect& r) {
  // R^h = [x0 + 1/2, x1 - 1/2] x [y0 - 1/2, y1 + 1/2].
  DualRectMap out{DualRect{r.x0(), r.y0() - 1, r.x1() - 1, r.y1()}, {}};
  const Region dual = out.rect;
  const std::size_t n = out.rect.edge_count();
  out.primal_partner.resize(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const Edge de = edge_at(dual, idx);
    const Edge pe = primal_of(DualEdge{de.orientation, {de.anchor.x, de.anchor.y}});
    if (r.contains(pe)) out.primal_partner[idx] = index_of(Region{r}, pe);
  }
  return out;
}

Rect dual_rect(const DualRect& d) {
  // Real extent [i0 + 1/2, i1 + 1/2] x [j0 + 1/2, j1 + 1/2]; its horizontal
  // dual is [i0 + 1, i1] x [j0, j1 + 1].
  return Rect{d.i0() + 1, d.j0(), d.i1(), d.j1() + 1};
}

Rect torus_rect(const Torus& t, Vertex anchor, int k, int l) {
  if (k < 1 || l < 1 || k > t.n() - 2 || l > t.n() - 2) {
    throw std::invalid_argument("torus rectangle needs 1 <= k, l <= n - 2");
  }
  const int x = t.wrap(anchor.x);
  const int y = t.wrap(anchor.y);
  return Rect{x, y, x + k, y + l};
}

}  // namespace perclab
