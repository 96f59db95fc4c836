#include "doctest.h"
#include "perclab/crossing.hpp"
#include "support/brute.hpp"

using namespace perclab;

namespace {

Configuration with_open(const Region& r, std::initializer_list<Edge> edges) {
  Configuration c(r);
  for (const Edge& e : edges) c.set(*index_of(r, e), true);
  return c;
}

constexpr auto H = Orientation::Horizontal;
constexpr auto V = Orientation::Vertical;

}  // namespace

TEST_CASE("clusters of trivial configurations") {
  const Rect r(0, 0, 3, 2);
  Configuration c(r);
  CHECK(clusters(c).count == 12);
  c.fill(true);
  const auto all = clusters(c);
  CHECK(all.count == 1);
  CHECK(all.groups()[0].size() == 12);

  const auto bottom = with_open(Rect(0, 0, 1, 1), {{H, {0, 0}}});
  const auto p = clusters(bottom);
  CHECK(p.count == 3);
  CHECK(p.label_of({0, 0}) == p.label_of({1, 0}));
  CHECK(p.label_of({0, 1}) != p.label_of({1, 1}));
  CHECK(p.label_of({0, 1}) != p.label_of({0, 0}));
}

TEST_CASE("clusters wrap on the torus") {
  const Torus t(3);
  const auto c = with_open(t, {{H, {2, 0}}});
  const auto p = clusters(c);
  CHECK(p.count == 8);
  CHECK(p.label_of({2, 0}) == p.label_of({0, 0}));
}

TEST_CASE("unit square crossing examples") {
  const Rect sq(0, 0, 1, 1);
  CHECK(has_h_crossing(with_open(sq, {{H, {0, 1}}}), sq));
  CHECK(has_v_crossing(with_open(sq, {{V, {0, 0}}}), sq));
  CHECK_FALSE(has_h_crossing(Configuration(sq), sq));
  CHECK_FALSE(has_v_crossing(Configuration(sq), sq));
  CHECK_FALSE(has_h_crossing(with_open(sq, {{V, {0, 0}}, {V, {1, 0}}}), sq));
  // H holds iff the top or the bottom edge is open.
  for (std::uint64_t m = 0; m < 16; ++m) {
    const auto c = Configuration::from_mask(sq, m);
    CHECK(has_h_crossing(c, sq) == ((m & 0b0011) != 0));
    CHECK(has_v_crossing(c, sq) == ((m & 0b1100) != 0));
  }
}

TEST_CASE("crossing detectors agree with the brute-force graph search") {
  for (const Rect r : {Rect(0, 0, 2, 1), Rect(0, 0, 1, 2), Rect(0, 0, 2, 2), Rect(0, 0, 3, 2)}) {
    const std::size_t e = r.edge_count();
    const std::uint64_t step = e > 12 ? 7 : 1;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << e); m += step) {
      const auto c = Configuration::from_mask(r, m);
      const bool h = has_h_crossing(c, r);
      const bool v = has_v_crossing(c, r);
      REQUIRE(h == brute::h_crossing(c, r));
      REQUIRE(v == brute::v_crossing(c, r));
      const auto hw = find_h_crossing(c, r);
      const auto vw = find_v_crossing(c, r);
      REQUIRE(hw.has_value() == h);
      REQUIRE(vw.has_value() == v);
      if (hw) REQUIRE(validate_witness(c, Box::of(r), *hw, Direction::Horizontal));
      if (vw) REQUIRE(validate_witness(c, Box::of(r), *vw, Direction::Vertical));
    }
  }
}

TEST_CASE("detectors consult only the edges of the given rectangle") {
  const Rect outer(0, 0, 4, 4);
  const Rect inner(1, 1, 3, 2);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto c = sample(outer, 0.5, 5, s);
    CHECK(has_h_crossing(c, inner) == brute::h_crossing(c, inner));
    CHECK(has_v_crossing(c, inner) == brute::v_crossing(c, inner));
  }
}

TEST_CASE("witness validator rejects broken witnesses") {
  const Rect r(0, 0, 2, 1);
  Configuration c(r);
  c.fill(true);
  const Box b = Box::of(r);
  CHECK(validate_witness(c, b, {{{0, 0}, {1, 0}, {2, 0}}, Lattice::Primal}, Direction::Horizontal));
  CHECK(validate_witness(c, b, {{{2, 1}, {1, 1}, {0, 1}}, Lattice::Primal}, Direction::Horizontal));
  CHECK_FALSE(validate_witness(c, b, {{{0, 0}, {2, 0}}, Lattice::Primal}, Direction::Horizontal));
  CHECK_FALSE(validate_witness(c, b, {{{0, 0}, {1, 0}}, Lattice::Primal}, Direction::Horizontal));
  CHECK_FALSE(validate_witness(c, b, {{{0, 0}, {1, 0}, {2, 0}, {3, 0}}, Lattice::Primal}, Direction::Horizontal));
  CHECK_FALSE(validate_witness(c, b, {{}, Lattice::Primal}, Direction::Horizontal));
  c.set(*index_of(r, Edge{H, {1, 0}}), false);
  CHECK_FALSE(validate_witness(c, b, {{{0, 0}, {1, 0}, {2, 0}}, Lattice::Primal}, Direction::Horizontal));
}

TEST_CASE("X(R) examples") {
  const Rect r(0, 0, 1, 2);
  const Rect s(0, 0, 1, 1);
  Configuration c(r);
  CHECK_FALSE(detect_x(c, r, s));
  c.fill(true);
  CHECK(detect_x(c, r, s));
  CHECK(detect_x(with_open(r, {{V, {0, 0}}, {H, {0, 0}}}), r, s));
  CHECK_FALSE(detect_x(with_open(r, {{V, {0, 0}}}), r, s));
  CHECK_THROWS_AS(detect_x(c, Rect(0, 0, 1, 2), Rect(0, 0, 2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(detect_x(c, Rect(0, 0, 1, 4), Rect(0, 0, 2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(detect_x(c, Rect(0, 0, 2, 2), Rect(1, 0, 2, 1)), std::invalid_argument);
}

TEST_CASE("X(R) matches its definition by brute force") {
  // Definition: some vertex u of an S-cluster crossing S top to bottom is
  // joined inside R to the right side of R.
  const Rect r(0, 0, 2, 2);
  const Rect s(0, 0, 1, 1);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << r.edge_count()); ++m) {
    const auto c = Configuration::from_mask(r, m);
    const auto adj = brute::open_graph(c);
    bool expected = false;
    for (int x = 0; x <= 1 && !expected; ++x) {
      const auto in_s = brute::reach(adj, {{x, 1}}, [&](Vertex v) { return s.contains(v); });
      bool bottom = false;
      for (const Vertex& v : in_s) bottom |= v.y == 0;
      if (!bottom) continue;
      const std::vector<Vertex> from(in_s.begin(), in_s.end());
      for (const Vertex& v : brute::reach(adj, from, [&](Vertex v) { return r.contains(v); })) {
        expected |= v.x == r.x1();
      }
    }
    REQUIRE(detect_x(c, r, s) == expected);
    if (expected) REQUIRE(has_v_crossing(c, s));
  }
}

TEST_CASE("G(R) is the conjunction of three crossings") {
  const Rect r(0, 0, 3, 1);
  Configuration c(r);
  c.fill(true);
  CHECK(detect_g(c, r, Direction::Horizontal));
  const auto [left, right] = end_squares(r, Direction::Horizontal);
  CHECK(left == Rect(0, 0, 1, 1));
  CHECK(right == Rect(2, 0, 3, 1));
  // Bottom row only: H(R) holds but no square has a vertical crossing.
  Configuration row(r);
  for (int x = 0; x < 3; ++x) row.set(*index_of(r, Edge{H, {x, 0}}), true);
  CHECK(has_h_crossing(row, r));
  CHECK_FALSE(detect_g(row, r, Direction::Horizontal));
  CHECK_THROWS_AS(detect_g(c, Rect(0, 0, 2, 1), Direction::Horizontal), std::invalid_argument);
  CHECK_THROWS_AS(detect_g(c, r, Direction::Vertical), std::invalid_argument);
  const Rect tall(0, 0, 1, 3);
  Configuration t(tall);
  t.fill(true);
  CHECK(detect_g(t, tall, Direction::Vertical));
}

TEST_CASE("every event detector is increasing on small rectangles") {
  const Rect r(0, 0, 2, 2);
  const Rect s(0, 0, 1, 1);
  const Rect g(0, 0, 3, 1);
  const auto check = [](const Region& region, auto&& event) {
    const std::size_t e = edge_count(region);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << e); ++m) {
      if (!event(Configuration::from_mask(region, m))) continue;
      for (std::size_t i = 0; i < e; ++i) {
        if (m >> i & 1) continue;
        REQUIRE(event(Configuration::from_mask(region, m | (std::uint64_t{1} << i))));
      }
    }
  };
  check(r, [&](const Configuration& c) { return has_h_crossing(c, r); });
  check(r, [&](const Configuration& c) { return has_v_crossing(c, r); });
  check(r, [&](const Configuration& c) { return detect_x(c, r, s); });
  check(g, [&](const Configuration& c) { return detect_g(c, g, Direction::Horizontal); });
  const Annulus a({0, 0}, 1, 2);
  check(a, [&](const Configuration& c) { return detect_circuit(c, a); });
}

TEST_CASE("circuit detection matches the winding-number search") {
  for (const Annulus a : {Annulus({0, 0}, 1, 2), Annulus({1, -1}, 1, 3), Annulus({0, 0}, 2, 3), Annulus({0, 0}, 2, 4)}) {
    Configuration c(a);
    CHECK_FALSE(detect_circuit(c, a));
    c.fill(true);
    CHECK(detect_circuit(c, a));
    const auto inside = [&](Vertex v) { return a.contains(v); };
    const std::size_t e = a.edge_count();
    const std::uint64_t samples = e <= 16 ? (std::uint64_t{1} << e) : 20000;
    for (std::uint64_t s = 0; s < samples; ++s) {
      const auto cfg = e <= 16 ? Configuration::from_mask(a, s) : sample(a, 0.75, 17, s);
      REQUIRE(detect_circuit(cfg, a) == brute::winding_cycle(cfg, a.centre().i, a.centre().j, inside));
    }
  }
}

TEST_CASE("circuit detection on a config living on a larger rectangle ignores outside edges") {
  const Annulus a({0, 0}, 1, 2);
  const Rect box(-3, -3, 4, 4);
  for (std::uint64_t s = 0; s < 2000; ++s) {
    const auto c = sample(box, 0.7, 23, s);
    const auto inside = [&](Vertex v) { return a.contains(v); };
    REQUIRE(detect_circuit(c, a) == brute::winding_cycle(c, 0, 0, inside));
  }
}

TEST_CASE("four band crossings force a circuit") {
  const Annulus a({0, 0}, 2, 6);
  for (std::uint64_t s = 0; s < 300; ++s) {
    const auto c = sample(a, 0.55, 31, s);
    const auto bands = a.bands();
    const bool all = has_h_crossing(c, bands[0]) && has_h_crossing(c, bands[1]) && has_v_crossing(c, bands[2]) &&
                     has_v_crossing(c, bands[3]);
    if (all) REQUIRE(detect_circuit(c, a));
  }
}
