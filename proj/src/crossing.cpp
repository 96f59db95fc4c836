#include "perclab/crossing.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <unordered_map>

#include "perclab/detail/edge_reader.hpp"
#include "perclab/union_find.hpp"

namespace perclab {

namespace {

using detail::EdgeReader;

struct LocalGrid {
  Box box;
  int w() const { return box.x1 - box.x0; }
  int h() const { return box.y1 - box.y0; }
  std::uint32_t id(int x, int y) const {
    return static_cast<std::uint32_t>((y - box.y0) * (w() + 1) + (x - box.x0));
  }
  std::uint32_t count() const { return static_cast<std::uint32_t>((w() + 1) * (h() + 1)); }
  Vertex at(std::uint32_t id) const {
    return {box.x0 + static_cast<int>(id % (w() + 1)), box.y0 + static_cast<int>(id / (w() + 1))};
  }
};

bool on_start(const Box& b, Vertex v, Direction d) {
  return d == Direction::Horizontal ? v.x == b.x0 : v.y == b.y1;
}
bool on_end(const Box& b, Vertex v, Direction d) {
  return d == Direction::Horizontal ? v.x == b.x1 : v.y == b.y0;
}

void unite_open_edges(UnionFind& uf, const LocalGrid& g, const EdgeReader& read) {
  const Box& b = g.box;
  for (int y = b.y0; y <= b.y1; ++y) {
    for (int x = b.x0; x < b.x1; ++x) {
      if (read.horizontal(x, y)) uf.unite(g.id(x, y), g.id(x + 1, y));
    }
  }
  for (int x = b.x0; x <= b.x1; ++x) {
    for (int y = b.y0; y < b.y1; ++y) {
      if (read.vertical(x, y)) uf.unite(g.id(x, y), g.id(x, y + 1));
    }
  }
}

// Crossing test with two virtual terminals glued to the start and end sides.
bool box_crossing(const EdgeReader& read, const Box& b, Direction d) {
  thread_local UnionFind uf;
  const LocalGrid g{b};
  const std::uint32_t start = g.count();
  const std::uint32_t end = start + 1;
  uf.reset(g.count() + 2);
  if (d == Direction::Horizontal) {
    for (int y = b.y0; y <= b.y1; ++y) {
      uf.unite(start, g.id(b.x0, y));
      uf.unite(end, g.id(b.x1, y));
    }
  } else {
    for (int x = b.x0; x <= b.x1; ++x) {
      uf.unite(start, g.id(x, b.y1));
      uf.unite(end, g.id(x, b.y0));
    }
  }
  unite_open_edges(uf, g, read);
  return uf.same(start, end);
}

std::optional<PathWitness> box_witness(const EdgeReader& read, const Box& b, Direction d, Lattice lattice) {
  const LocalGrid g{b};
  constexpr std::uint32_t kUnseen = 0xFFFFFFFFu;
  std::vector<std::uint32_t> parent(g.count(), kUnseen);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t id = 0; id < g.count(); ++id) {
    if (on_start(b, g.at(id), d)) {
      parent[id] = id;
      queue.push_back(id);
    }
  }
  while (!queue.empty()) {
    const std::uint32_t cur = queue.front();
    queue.pop_front();
    const Vertex v = g.at(cur);
    if (on_end(b, v, d)) {
      PathWitness w{{}, lattice};
      for (std::uint32_t id = cur;; id = parent[id]) {
        w.vertices.push_back(g.at(id));
        if (parent[id] == id) break;
      }
      std::reverse(w.vertices.begin(), w.vertices.end());
      return w;
    }
    const auto visit = [&](int x, int y, bool open) {
      if (!open) return;
      const std::uint32_t id = g.id(x, y);
      if (parent[id] != kUnseen) return;
      parent[id] = cur;
      queue.push_back(id);
    };
    if (v.x < b.x1) visit(v.x + 1, v.y, read.horizontal(v.x, v.y));
    if (v.x > b.x0) visit(v.x - 1, v.y, read.horizontal(v.x - 1, v.y));
    if (v.y < b.y1) visit(v.x, v.y + 1, read.vertical(v.x, v.y));
    if (v.y > b.y0) visit(v.x, v.y - 1, read.vertical(v.x, v.y - 1));
  }
  return std::nullopt;
}

bool is_dual_region(const Region& r) { return std::holds_alternative<DualRect>(r); }

// Vertex enumeration and lookup for clusters().
struct VertexIndex {
  std::vector<Vertex> vertices;
  std::unordered_map<long long, std::size_t> lookup;

  static long long key(Vertex v) {
    return (static_cast<long long>(v.x) << 32) ^ static_cast<long long>(static_cast<std::uint32_t>(v.y));
  }
  void add(Vertex v) {
    lookup.emplace(key(v), vertices.size());
    vertices.push_back(v);
  }
  std::optional<std::size_t> find(Vertex v) const {
    const auto it = lookup.find(key(v));
    if (it == lookup.end()) return std::nullopt;
    return it->second;
  }
};

VertexIndex region_vertices(const Region& region) {
  VertexIndex out;
  const auto add_box = [&](int x0, int y0, int x1, int y1, const auto& keep) {
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        if (keep(Vertex{x, y})) out.add({x, y});
      }
    }
  };
  const auto all = [](Vertex) { return true; };
  if (const auto* r = std::get_if<Rect>(&region)) {
    add_box(r->x0(), r->y0(), r->x1(), r->y1(), all);
  } else if (const auto* d = std::get_if<DualRect>(&region)) {
    add_box(d->i0(), d->j0(), d->i1(), d->j1(), all);
  } else if (const auto* t = std::get_if<Torus>(&region)) {
    add_box(0, 0, t->n() - 1, t->n() - 1, all);
  } else {
    const auto& a = std::get<Annulus>(region);
    const Rect box = a.outer_box();
    add_box(box.x0(), box.y0(), box.x1(), box.y1(), [&](Vertex v) { return a.contains(v); });
  }
  return out;
}

}  // namespace

WitnessCheck validate_witness(const Configuration& config, const Box& box, const PathWitness& witness,
                              Direction direction) {
  const auto fail = [](std::string why) { return WitnessCheck{false, std::move(why)}; };
  const auto& vs = witness.vertices;
  if (vs.empty()) return fail("empty witness");
  for (const Vertex& v : vs) {
    if (!box.contains(v)) return fail("vertex outside the box");
  }
  const bool dual_config = is_dual_region(config.region());
  const auto edge_open = [&](const Edge& e) {
    if (witness.lattice == Lattice::Primal) {
      if (dual_config) return false;
      return config.is_open(e);
    }
    if (dual_config) return config.is_open(e);
    const Edge crossed = primal_of(DualEdge{e.orientation, {e.anchor.x, e.anchor.y}});
    return index_of(config.region(), crossed).has_value() && !config.is_open(crossed);
  };
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    const Vertex a = vs[i];
    const Vertex b = vs[i + 1];
    const int dx = b.x - a.x;
    const int dy = b.y - a.y;
    if (std::abs(dx) + std::abs(dy) != 1) return fail("consecutive vertices not adjacent");
    const Edge e = dy == 0 ? Edge{Orientation::Horizontal, {std::min(a.x, b.x), a.y}}
                           : Edge{Orientation::Vertical, {a.x, std::min(a.y, b.y)}};
    if (!edge_open(e)) return fail("traversed edge not open");
  }
  const bool starts = direction == Direction::Horizontal ? vs.front().x == box.x0 : vs.front().y == box.y1;
  const bool ends = direction == Direction::Horizontal ? vs.back().x == box.x1 : vs.back().y == box.y0;
  const bool starts_rev = direction == Direction::Horizontal ? vs.back().x == box.x0 : vs.back().y == box.y1;
  const bool ends_rev = direction == Direction::Horizontal ? vs.front().x == box.x1 : vs.front().y == box.y0;
  if (!((starts && ends) || (starts_rev && ends_rev))) return fail("endpoints not on opposite sides");
  return {};
}

std::optional<std::size_t> Partition::label_of(Vertex v) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] == v) return label[i];
  }
  return std::nullopt;
}

std::vector<std::vector<Vertex>> Partition::groups() const {
  std::vector<std::vector<Vertex>> out(count);
  for (std::size_t i = 0; i < vertices.size(); ++i) out[label[i]].push_back(vertices[i]);
  return out;
}

Partition clusters(const Configuration& config) {
  const Region& region = config.region();
  VertexIndex index = region_vertices(region);
  const Torus* torus = std::get_if<Torus>(&region);
  UnionFind uf(index.vertices.size());
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (!config.open(i)) continue;
    const Edge e = edge_at(region, i);
    Vertex h = e.head();
    if (torus) h = {torus->wrap(h.x), torus->wrap(h.y)};
    uf.unite(static_cast<std::uint32_t>(*index.find(e.tail())), static_cast<std::uint32_t>(*index.find(h)));
  }
  Partition p;
  p.vertices = std::move(index.vertices);
  p.label.resize(p.vertices.size());
  std::unordered_map<std::uint32_t, std::size_t> canon;
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    const auto root = uf.find(static_cast<std::uint32_t>(i));
    const auto [it, inserted] = canon.emplace(root, canon.size());
    p.label[i] = it->second;
  }
  p.count = canon.size();
  return p;
}

bool has_h_crossing(const Configuration& config, const Rect& r) {
  return box_crossing(EdgeReader(config), Box::of(r), Direction::Horizontal);
}

bool has_v_crossing(const Configuration& config, const Rect& r) {
  return box_crossing(EdgeReader(config), Box::of(r), Direction::Vertical);
}

bool has_v_crossing(const Configuration& config, const DualRect& r) {
  return box_crossing(EdgeReader(config), Box::of(r), Direction::Vertical);
}

std::optional<PathWitness> find_h_crossing(const Configuration& config, const Rect& r) {
  return box_witness(EdgeReader(config), Box::of(r), Direction::Horizontal, Lattice::Primal);
}

std::optional<PathWitness> find_v_crossing(const Configuration& config, const Rect& r) {
  return box_witness(EdgeReader(config), Box::of(r), Direction::Vertical, Lattice::Primal);
}

bool detect_x(const Configuration& config, const Rect& r, const Rect& s) {
  const int n = s.width();
  if (s.height() != n || r.height() != 2 * n || s.x0() != r.x0() || s.y0() != r.y0()) {
    throw std::invalid_argument("X(R) needs R = m by 2n and S = n by n at R's lower-left corner");
  }
  if (r.width() < n) throw std::invalid_argument("X(R) needs m >= n");

  const EdgeReader read(config);
  thread_local UnionFind in_s;
  thread_local UnionFind in_r;
  const LocalGrid gs{Box::of(s)};
  const LocalGrid gr{Box::of(r)};
  in_s.reset(gs.count());
  in_r.reset(gr.count());
  unite_open_edges(in_s, gs, read);
  unite_open_edges(in_r, gr, read);

  // S-clusters meeting both the top and the bottom of S.
  std::vector<std::uint8_t> side_mask(gs.count(), 0);
  for (int x = s.x0(); x <= s.x1(); ++x) {
    side_mask[in_s.find(gs.id(x, s.y0()))] |= 1;
    side_mask[in_s.find(gs.id(x, s.y1()))] |= 2;
  }
  std::vector<std::uint8_t> reaches_right(gr.count(), 0);
  for (int y = r.y0(); y <= r.y1(); ++y) reaches_right[in_r.find(gr.id(r.x1(), y))] = 1;

  for (int y = s.y0(); y <= s.y1(); ++y) {
    for (int x = s.x0(); x <= s.x1(); ++x) {
      if (side_mask[in_s.find(gs.id(x, y))] != 3) continue;
      if (reaches_right[in_r.find(gr.id(x, y))]) return true;
    }
  }
  return false;
}

std::pair<Rect, Rect> end_squares(const Rect& r, Direction orientation) {
  if (orientation == Direction::Horizontal) {
    const int n = r.height();
    if (r.width() != 3 * n) throw std::invalid_argument("G(R) needs a 3n by n rectangle");
    return {Rect{r.x0(), r.y0(), r.x0() + n, r.y1()}, Rect{r.x1() - n, r.y0(), r.x1(), r.y1()}};
  }
  const int n = r.width();
  if (r.height() != 3 * n) throw std::invalid_argument("G(R) needs an n by 3n rectangle");
  return {Rect{r.x0(), r.y0(), r.x1(), r.y0() + n}, Rect{r.x0(), r.y1() - n, r.x1(), r.y1()}};
}

bool detect_g(const Configuration& config, const Rect& r, Direction orientation) {
  const auto [first, second] = end_squares(r, orientation);
  if (orientation == Direction::Horizontal) {
    return has_h_crossing(config, r) && has_v_crossing(config, first) && has_v_crossing(config, second);
  }
  return has_v_crossing(config, r) && has_h_crossing(config, first) && has_h_crossing(config, second);
}

bool detect_circuit(const Configuration& config, const Annulus& a) {
  const Rect box = a.outer_box();
  // Faces [u, u+1] x [v, v+1] for u in [x0-1, x1], v in [y0-1, y1]; the outer
  // ring of that range lies outside the annulus.
  const int u0 = box.x0() - 1;
  const int v0 = box.y0() - 1;
  const int fw = box.width() + 2;
  const int fh = box.height() + 2;
  const EdgeReader read(config);
  const auto blocks = [&](const Edge& e) { return a.contains(e) && read(e); };
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(fw) * fh, 0);
  const auto fid = [&](int u, int v) { return static_cast<std::size_t>(v - v0) * fw + (u - u0); };
  std::vector<std::pair<int, int>> stack{{a.centre().i, a.centre().j}};
  seen[fid(a.centre().i, a.centre().j)] = 1;
  while (!stack.empty()) {
    const auto [u, v] = stack.back();
    stack.pop_back();
    if (u == u0 || v == v0 || u == u0 + fw - 1 || v == v0 + fh - 1) return false;
    const auto push = [&](int nu, int nv, const Edge& between) {
      if (blocks(between)) return;
      auto& s = seen[fid(nu, nv)];
      if (s) return;
      s = 1;
      stack.emplace_back(nu, nv);
    };
    push(u + 1, v, Edge{Orientation::Vertical, {u + 1, v}});
    push(u - 1, v, Edge{Orientation::Vertical, {u, v}});
    push(u, v + 1, Edge{Orientation::Horizontal, {u, v + 1}});
    push(u, v - 1, Edge{Orientation::Horizontal, {u, v}});
  }
  return true;
}

}  // namespace perclab
