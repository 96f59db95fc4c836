#pragma once

// Test-side reference implementations. They share nothing with the library
// beyond the edge enumeration and the configuration bit accessor: graphs
// are rebuilt as adjacency maps and searched by plain BFS.

#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "perclab/config.hpp"
#include "perclab/lattice.hpp"

namespace brute {

using perclab::Configuration;
using perclab::Edge;
using perclab::Orientation;
using perclab::Rect;
using perclab::Vertex;

using Adjacency = std::map<Vertex, std::vector<Vertex>>;
using Pred = std::function<bool(Vertex)>;

inline Adjacency open_graph(const Configuration& c) {
  Adjacency adj;
  const auto edges = perclab::enumerate_edges(c.region());
  const auto* torus = std::get_if<perclab::Torus>(&c.region());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Vertex a = edges[i].tail();
    Vertex b = edges[i].head();
    if (torus) b = {torus->wrap(b.x), torus->wrap(b.y)};
    adj[a];
    adj[b];
    if (!c.open(i)) continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

/// Vertices reachable from `from` through edges whose endpoints both satisfy `inside`.
inline std::set<Vertex> reach(const Adjacency& adj, const std::vector<Vertex>& from, const Pred& inside) {
  std::set<Vertex> seen;
  std::queue<Vertex> q;
  for (const Vertex& v : from) {
    if (inside(v) && seen.insert(v).second) q.push(v);
  }
  while (!q.empty()) {
    const Vertex v = q.front();
    q.pop();
    const auto it = adj.find(v);
    if (it == adj.end()) continue;
    for (const Vertex& w : it->second) {
      if (inside(w) && seen.insert(w).second) q.push(w);
    }
  }
  return seen;
}

inline bool connects(const Adjacency& adj, const Pred& inside, const Pred& start, const Pred& end) {
  std::vector<Vertex> from;
  for (const auto& [v, _] : adj) {
    if (inside(v) && start(v)) from.push_back(v);
  }
  for (const Vertex& v : reach(adj, from, inside)) {
    if (end(v)) return true;
  }
  return false;
}

inline bool h_crossing(const Configuration& c, const Rect& r) {
  const auto adj = open_graph(c);
  return connects(
      adj, [&](Vertex v) { return r.contains(v); }, [&](Vertex v) { return v.x == r.x0(); },
      [&](Vertex v) { return v.x == r.x1(); });
}

inline bool v_crossing(const Configuration& c, const Rect& r) {
  const auto adj = open_graph(c);
  return connects(
      adj, [&](Vertex v) { return r.contains(v); }, [&](Vertex v) { return v.y == r.y1(); },
      [&](Vertex v) { return v.y == r.y0(); });
}

/// Top-bottom crossing of the horizontal dual of r, read off a primal
/// configuration: dual vertices (i, j) for x0 <= i < x1, y0 - 1 <= j <= y1
/// (face centres), a dual edge open iff the primal edge of r it crosses is
/// closed.
inline bool dual_v_crossing(const Configuration& c, const Rect& r) {
  Adjacency adj;
  const auto primal_closed = [&](const Edge& e) { return r.contains(e) && !c.is_open(e); };
  for (int i = r.x0(); i < r.x1(); ++i) {
    for (int j = r.y0() - 1; j <= r.y1(); ++j) {
      adj[{i, j}];
      if (j < r.y1() && primal_closed(Edge{Orientation::Horizontal, {i, j + 1}})) {
        adj[{i, j}].push_back({i, j + 1});
        adj[{i, j + 1}].push_back({i, j});
      }
      if (i + 1 < r.x1() && primal_closed(Edge{Orientation::Vertical, {i + 1, j}})) {
        adj[{i, j}].push_back({i + 1, j});
        adj[{i + 1, j}].push_back({i, j});
      }
    }
  }
  return connects(
      adj, [](Vertex) { return true; }, [&](Vertex v) { return v.y == r.y1(); },
      [&](Vertex v) { return v.y == r.y0() - 1; });
}

/// Open cycle with nonzero winding around the face centre (ci + 1/2, cj + 1/2),
/// using only edges with both endpoints satisfying `inside`. Each open edge
/// gets a potential difference: +-1 for vertical edges (x, y)-(x, y+1) with
/// x > ci and y == cj (those cut the ray going right from the centre), 0
/// otherwise. A cycle winds iff the potentials are inconsistent.
inline bool winding_cycle(const Configuration& c, int ci, int cj, const Pred& inside) {
  const auto edges = perclab::enumerate_edges(c.region());
  std::map<Vertex, std::vector<std::pair<Vertex, int>>> adj;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!c.open(i)) continue;
    const Vertex a = edges[i].tail();
    const Vertex b = edges[i].head();
    if (!inside(a) || !inside(b)) continue;
    const int w = (edges[i].orientation == Orientation::Vertical && a.x > ci && a.y == cj) ? 1 : 0;
    adj[a].emplace_back(b, w);
    adj[b].emplace_back(a, -w);
  }
  std::map<Vertex, int> pot;
  for (const auto& [root, _] : adj) {
    if (pot.count(root)) continue;
    pot[root] = 0;
    std::queue<Vertex> q;
    q.push(root);
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop();
      for (const auto& [w, d] : adj[v]) {
        const auto it = pot.find(w);
        if (it == pot.end()) {
          pot[w] = pot[v] + d;
          q.push(w);
        } else if (it->second != pot[v] + d) {
          return true;
        }
      }
    }
  }
  return false;
}

/// Count over every configuration of `region` (E <= ~22) of those satisfying `event`, split by open-edge count.
template <class Event>
std::vector<std::uint64_t> count_by_open(const perclab::Region& region, Event&& event) {
  const std::size_t e = perclab::edge_count(region);
  std::vector<std::uint64_t> out(e + 1, 0);
  Configuration c(region);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << e); ++m) {
    c.assign_mask(m);
    if (event(c)) ++out[static_cast<std::size_t>(__builtin_popcountll(m))];
  }
  return out;
}

}  // namespace brute
