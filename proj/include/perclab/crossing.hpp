#pragma once

// Event detectors on configurations: clusters, rectangle crossings, the
// interface walk deciding between a primal horizontal crossing and a dual
// vertical one, left-most vertical crossings, X(R), G(R), annulus circuits.
//
// Side membership: a vertex is on the left side of [x0,x1] x [y0,y1] iff its
// x equals x0; corners belong to both adjacent sides. Detectors consult only
// the edges of the rectangle they are given; the configuration may live on a
// larger region (or a torus, where coordinates wrap).

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "perclab/config.hpp"
#include "perclab/lattice.hpp"

namespace perclab {

enum class Lattice : std::uint8_t { Primal, Dual };
enum class Direction : std::uint8_t { Horizontal, Vertical };

/// Axis-aligned box in the coordinates of one lattice; zero width allowed.
struct Box {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  static Box of(const Rect& r) { return {r.x0(), r.y0(), r.x1(), r.y1()}; }
  static Box of(const DualRect& d) { return {d.i0(), d.j0(), d.i1(), d.j1()}; }
  bool contains(Vertex v) const { return v.x >= x0 && v.x <= x1 && v.y >= y0 && v.y <= y1; }
};

/// Open path certifying a crossing. Dual vertices are stored as (i, j) for
/// the face centre (i + 1/2, j + 1/2).
struct PathWitness {
  std::vector<Vertex> vertices;
  Lattice lattice = Lattice::Primal;
};

struct WitnessCheck {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

/// Independent validation: consecutive vertices adjacent, all inside `box`,
/// every traversed edge open in the witness's lattice, endpoints on the two
/// sides named by `direction`. A dual witness against a primal
/// configuration reads each dual edge as open iff the primal edge it crosses
/// is present in the configuration and closed.
WitnessCheck validate_witness(const Configuration& config, const Box& box, const PathWitness& witness,
                              Direction direction);

/// Vertex partition of a region under open-edge adjacency.
struct Partition {
  std::vector<Vertex> vertices;     // region vertices in a fixed order
  std::vector<std::size_t> label;   // cluster label per vertex, 0..count-1
  std::size_t count = 0;

  std::optional<std::size_t> label_of(Vertex v) const;
  std::vector<std::vector<Vertex>> groups() const;
};

Partition clusters(const Configuration& config);

bool has_h_crossing(const Configuration& config, const Rect& r);
bool has_v_crossing(const Configuration& config, const Rect& r);
/// Vertical crossing of a dual rectangle; `config` lives on that dualrect.
bool has_v_crossing(const Configuration& config, const DualRect& r);
std::optional<PathWitness> find_h_crossing(const Configuration& config, const Rect& r);
std::optional<PathWitness> find_v_crossing(const Configuration& config, const Rect& r);

/// Thrown when the interface walk breaks an invariant that the planar
/// structure guarantees; the message carries the configuration.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Outcome of the interface walk on a rectangle R.
///
/// The walk runs on the odd sublattice of R scaled by 4: primal vertex
/// (x0 + i, y0 + j) sits at (4i, 4j + 2), dual vertex (x0 + i, y0 - 1 + j) at
/// (4i + 2, 4j), and walk vertices at odd points (X, Y), 1 <= X <= 4k - 1,
/// 1 <= Y <= 4l + 3. The walk starts at the top-left corner (1, 4l + 3),
/// keeping open primal edges on its right and open dual edges on its left.
struct InterfaceResult {
  enum class Kind : std::uint8_t { HorizontalPrimal, VerticalDual };
  Kind kind = Kind::HorizontalPrimal;
  PathWitness witness;      // primal left-right, or dual top-bottom of R^h
  std::vector<Vertex> walk; // odd-sublattice points, in walk order
};

InterfaceResult interface_decision(const Configuration& config, const Rect& r);

/// Left-most vertical open crossing of a rectangle, listed top to bottom.
/// It is the primal crossing found by the interface walk after a quarter
/// turn that takes the left side of S to the top; whether it equals a given
/// path depends only on that path and the edges on or to its left.
std::optional<PathWitness> leftmost_v_crossing(const Configuration& config, const Rect& s);

/// X(R) for R = [x0, x0 + m] x [y0, y0 + 2n] and S = [x0, x0 + n] x [y0, y0 + n]:
/// an open top-bottom crossing P1 of S and an open path in R from a vertex
/// of P1 to the right side of R. Throws on m < n or misaligned S.
bool detect_x(const Configuration& config, const Rect& r, const Rect& s);

/// G(R): for a 3n by n rectangle, H(R) and V on both end squares; for an n
/// by 3n rectangle, V(R) and H on both end squares. Throws on other shapes.
bool detect_g(const Configuration& config, const Rect& r, Direction orientation);
/// The two end squares used by detect_g (left/right, or bottom/top).
std::pair<Rect, Rect> end_squares(const Rect& r, Direction orientation);

/// Open cycle in the annulus winding around its centre. Decided by the dual
/// criterion: the centre face cannot reach the outside through faces
/// separated only by edges that are absent or closed.
bool detect_circuit(const Configuration& config, const Annulus& a);

}  // namespace perclab
