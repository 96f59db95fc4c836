#include <set>

#include "doctest.h"
#include "perclab/crossing.hpp"
#include "support/brute.hpp"
#include "support/paths.hpp"

using namespace perclab;

namespace {

using Kind = InterfaceResult::Kind;

void check_decision(const Configuration& c, const Rect& r) {
  const bool h = brute::h_crossing(c, r);
  const bool dual_v = brute::dual_v_crossing(c, r);
  REQUIRE(h != dual_v);
  const InterfaceResult res = interface_decision(c, r);
  REQUIRE((res.kind == Kind::HorizontalPrimal) == h);
  if (h) {
    REQUIRE(res.witness.lattice == Lattice::Primal);
    REQUIRE(validate_witness(c, Box::of(r), res.witness, Direction::Horizontal));
  } else {
    REQUIRE(res.witness.lattice == Lattice::Dual);
    REQUIRE(validate_witness(c, Box::of(dual_rect(r).rect), res.witness, Direction::Vertical));
    // The same witness read on the dualized configuration.
    REQUIRE(validate_witness(dualize(c), Box::of(dual_rect(r).rect), res.witness, Direction::Vertical));
  }
  REQUIRE(res.walk.front() == Vertex{1, 4 * r.height() + 3});
}

}  // namespace

TEST_CASE("interface decision on trivial configurations") {
  const Rect r(0, 0, 4, 3);
  Configuration c(r);
  c.fill(true);
  const auto open = interface_decision(c, r);
  CHECK(open.kind == Kind::HorizontalPrimal);
  CHECK(validate_witness(c, Box::of(r), open.witness, Direction::Horizontal));
  CHECK(validate_witness(c, Box::of(r), {{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}}, Lattice::Primal},
                         Direction::Horizontal));
  c.fill(false);
  const auto closed = interface_decision(c, r);
  CHECK(closed.kind == Kind::VerticalDual);
  CHECK(closed.witness.vertices.size() == 5);
}

TEST_CASE("interface decision: exhaustive on small rectangles") {
  for (const Rect r : {Rect(0, 0, 1, 1), Rect(0, 0, 2, 1), Rect(0, 0, 1, 2), Rect(0, 0, 2, 2), Rect(0, 0, 1, 3),
                       Rect(0, 0, 3, 1), Rect(2, -1, 5, 1)}) {
    const std::size_t e = r.edge_count();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << e); ++m) check_decision(Configuration::from_mask(r, m), r);
  }
}

TEST_CASE("interface decision: sampled on larger rectangles and host regions") {
  for (const Rect r : {Rect(0, 0, 11, 10), Rect(0, 0, 3, 17), Rect(-4, 2, 14, 5)}) {
    for (std::uint64_t s = 0; s < 300; ++s) check_decision(sample(r, 0.5, 77, s), r);
  }
  const Rect host(0, 0, 9, 9);
  const Rect r(2, 3, 7, 6);
  for (std::uint64_t s = 0; s < 300; ++s) check_decision(sample(host, 0.45, 78, s), r);
}

TEST_CASE("left-most vertical crossing: trivial cases") {
  const Rect s(0, 0, 3, 3);
  Configuration c(s);
  CHECK_FALSE(leftmost_v_crossing(c, s).has_value());
  c.fill(true);
  const auto w = leftmost_v_crossing(c, s);
  REQUIRE(w.has_value());
  const std::vector<Vertex> column = {{0, 3}, {0, 2}, {0, 1}, {0, 0}};
  CHECK(w->vertices == column);
}

TEST_CASE("left-most vertical crossing exists iff V(S)") {
  for (const Rect s : {Rect(0, 0, 2, 2), Rect(1, 1, 4, 4)}) {
    const std::uint64_t step = s.edge_count() > 12 ? 211 : 1;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << s.edge_count()); m += step) {
      const auto c = Configuration::from_mask(s, m);
      const auto w = leftmost_v_crossing(c, s);
      REQUIRE(w.has_value() == brute::v_crossing(c, s));
      if (w) {
        REQUIRE(validate_witness(c, Box::of(s), *w, Direction::Vertical));
        REQUIRE(w->vertices.front().y == s.y1());
      }
    }
  }
}

TEST_CASE("left-most vertical crossing ignores flips strictly to its right") {
  for (const Rect s : {Rect(0, 0, 1, 1), Rect(0, 0, 2, 2)}) {
    const std::size_t e = s.edge_count();
    std::size_t flips = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << e); ++m) {
      const auto c = Configuration::from_mask(s, m);
      const auto w = leftmost_v_crossing(c, s);
      if (!w) continue;
      const auto path = paths::edges_of(*w);
      for (std::size_t i = 0; i < e; ++i) {
        if (!paths::strictly_right(path, s, edge_at(s, i))) continue;
        ++flips;
        const auto flipped = Configuration::from_mask(s, m ^ (std::uint64_t{1} << i));
        const auto again = leftmost_v_crossing(flipped, s);
        REQUIRE(again.has_value());
        REQUIRE(again->vertices == w->vertices);
      }
    }
    CHECK(flips > 0);
  }
}
