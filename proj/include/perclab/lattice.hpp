#pragma once

// Geometry of the square lattice: rectangles, tori, square annuli, the
// canonical edge enumeration of each, and the primal <-> dual edge map.
//
// Edge enumeration (all region types): horizontal edges first, row-major
// (y outer, x inner); then vertical edges, column-major (x outer, y inner).
// An edge is named by its orientation and its lower-left endpoint.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace perclab {

struct Vertex {
  int x = 0;
  int y = 0;
  auto operator<=>(const Vertex&) const = default;
};

/// Vertex of the dual lattice, standing for the face centre (i + 1/2, j + 1/2).
struct DualVertex {
  int i = 0;
  int j = 0;
  auto operator<=>(const DualVertex&) const = default;
};

enum class Orientation : std::uint8_t { Horizontal, Vertical };

struct Edge {
  Orientation orientation = Orientation::Horizontal;
  Vertex anchor;  // lower-left endpoint

  Vertex tail() const { return anchor; }
  Vertex head() const {
    return orientation == Orientation::Horizontal ? Vertex{anchor.x + 1, anchor.y}
                                                  : Vertex{anchor.x, anchor.y + 1};
  }
  auto operator<=>(const Edge&) const = default;
};

/// Edge of the dual lattice, anchored at its lower-left dual vertex.
struct DualEdge {
  Orientation orientation = Orientation::Horizontal;
  DualVertex anchor;
  auto operator<=>(const DualEdge&) const = default;
};

/// The dual edge crossing a primal edge.
DualEdge dual_of(const Edge& e);
/// The primal edge crossing a dual edge. Inverse of dual_of.
Edge primal_of(const DualEdge& d);

/// [x0, x1] x [y0, y1] with x0 < x1 and y0 < y1: a k by l rectangle.
class Rect {
 public:
  Rect(int x0, int y0, int x1, int y1);

  int x0() const { return x0_; }
  int y0() const { return y0_; }
  int x1() const { return x1_; }
  int y1() const { return y1_; }
  int width() const { return x1_ - x0_; }
  int height() const { return y1_ - y0_; }
  std::size_t vertex_count() const;
  std::size_t edge_count() const;

  bool contains(Vertex v) const { return v.x >= x0_ && v.x <= x1_ && v.y >= y0_ && v.y <= y1_; }
  bool contains(const Edge& e) const { return contains(e.tail()) && contains(e.head()); }
  bool contains(const Rect& r) const;
  bool on_left(Vertex v) const { return v.x == x0_; }
  bool on_right(Vertex v) const { return v.x == x1_; }
  bool on_bottom(Vertex v) const { return v.y == y0_; }
  bool on_top(Vertex v) const { return v.y == y1_; }

  Rect translated(int dx, int dy) const { return {x0_ + dx, y0_ + dy, x1_ + dx, y1_ + dy}; }

  auto operator<=>(const Rect&) const = default;

 private:
  int x0_, y0_, x1_, y1_;
};

/// Rectangle of the dual lattice in integer dual coordinates. Zero width is
/// allowed: the horizontal dual of a 1 by l rectangle is a single column.
class DualRect {
 public:
  DualRect(int i0, int j0, int i1, int j1);

  int i0() const { return i0_; }
  int j0() const { return j0_; }
  int i1() const { return i1_; }
  int j1() const { return j1_; }
  int width() const { return i1_ - i0_; }
  int height() const { return j1_ - j0_; }
  std::size_t edge_count() const;

  auto operator<=>(const DualRect&) const = default;

 private:
  int i0_, j0_, i1_, j1_;
};

/// The discrete torus C_n x C_n.
class Torus {
 public:
  explicit Torus(int n);
  int n() const { return n_; }
  std::size_t vertex_count() const { return static_cast<std::size_t>(n_) * n_; }
  std::size_t edge_count() const { return 2 * vertex_count(); }
  int wrap(int c) const { return ((c % n_) + n_) % n_; }
  auto operator<=>(const Torus&) const = default;

 private:
  int n_;
};

/// Square annulus in the sup-norm around a dual vertex: the edges whose
/// endpoints v both satisfy inner <= |v - centre|_inf <= outer. Distances
/// from a face centre are half-integers, so the vertex shells present are
/// those at distance m + 1/2 for inner <= m < outer.
class Annulus {
 public:
  Annulus(DualVertex centre, int inner, int outer);

  DualVertex centre() const { return centre_; }
  int inner() const { return inner_; }
  int outer() const { return outer_; }

  /// Twice the sup-norm distance from the centre (always odd).
  int doubled_distance(Vertex v) const;
  bool contains(Vertex v) const;
  bool contains(const Edge& e) const { return contains(e.tail()) && contains(e.head()); }
  /// Bounding box of the vertices of the annulus.
  Rect outer_box() const;
  /// The four constituent bands (bottom, top, left, right); each is crossed
  /// the long way in a configuration carrying a circuit built from bands.
  std::vector<Rect> bands() const;

  std::size_t edge_count() const { return table_->edges.size(); }
  const Edge& edge_at(std::size_t idx) const { return table_->edges[idx]; }
  std::optional<std::size_t> index_of(const Edge& e) const;

  bool operator==(const Annulus& o) const {
    return centre_ == o.centre_ && inner_ == o.inner_ && outer_ == o.outer_;
  }

 private:
  struct Table {
    std::vector<Edge> edges;
    std::vector<std::int32_t> lookup;  // over outer_box() edges; -1 if absent
  };
  DualVertex centre_;
  int inner_, outer_;
  std::shared_ptr<const Table> table_;
};

using Region = std::variant<Rect, DualRect, Torus, Annulus>;

std::size_t edge_count(const Region& region);
/// Decode an index of the canonical enumeration. Anchors of DualRect edges
/// are dual integer coordinates.
Edge edge_at(const Region& region, std::size_t idx);
/// Encode; torus coordinates are reduced modulo n. nullopt if outside.
std::optional<std::size_t> index_of(const Region& region, const Edge& e);
std::vector<Edge> enumerate_edges(const Region& region);

/// Canonical text form: rect:x0,y0,x1,y1 | dualrect:i0,j0,i1,j1 | torus:n |
/// annulus:ci,cj,a,b
std::string descriptor(const Region& region);
Region parse_region(std::string_view text);

/// Horizontal dual R^h of a rectangle, with the pairing of its edges to R.
struct DualRectMap {
  DualRect rect;
  /// For each R^h edge index, the index of the primal edge of R it crosses;
  /// nullopt for the top and bottom rows, which cross nothing in R.
  std::vector<std::optional<std::size_t>> primal_partner;
};

DualRectMap dual_rect(const Rect& r);
/// Horizontal dual of a dual rectangle, back in the primal lattice.
Rect dual_rect(const DualRect& d);

/// A k by l rectangle of the torus anchored at `anchor` (reduced mod n),
/// returned in unwrapped coordinates; lookups through a torus region wrap.
Rect torus_rect(const Torus& t, Vertex anchor, int k, int l);

}  // namespace perclab
