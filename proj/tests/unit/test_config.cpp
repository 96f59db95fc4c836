#include <cmath>

#include "doctest.h"
#include "perclab/config.hpp"
#include "perclab/philox.hpp"

using namespace perclab;

TEST_CASE("philox known-answer vectors") {
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("mask packing matches integer counting") {
  const Region r = Rect(0, 0, 2, 1);
  const auto c = Configuration::from_mask(r, 0b1010011);
  CHECK(c.open(0));
  CHECK(c.open(1));
  CHECK_FALSE(c.open(2));
  CHECK(c.open(4));
  CHECK(c.open(6));
  CHECK(c.count_open() == 4);
  CHECK(c.is_open(Edge{Orientation::Vertical, {2, 0}}));
  CHECK_FALSE(c.is_open(Edge{Orientation::Vertical, {3, 0}}));
  CHECK_THROWS_AS(Configuration::from_mask(r, 1U << 7), std::invalid_argument);
}

TEST_CASE("hex serialization round-trips and is MSB first") {
  const Region r = Rect(0, 0, 2, 1);
  const auto c = Configuration::from_mask(r, 0x53);
  CHECK(c.to_string() == "rect:0,0,2,1@53");
  CHECK(Configuration::parse(c.to_string()) == c);
  CHECK_THROWS_AS(Configuration::parse("rect:0,0,2,1@153"), std::invalid_argument);
  CHECK_THROWS_AS(Configuration::parse("rect:0,0,2,1@f3"), std::invalid_argument);
  CHECK_THROWS_AS(Configuration::parse("rect:0,0,2,1@g3"), std::invalid_argument);
  CHECK_THROWS_AS(Configuration::parse("rect:0,0,2,1"), std::invalid_argument);

  Configuration big(Torus(16));
  for (std::size_t i = 0; i < big.size(); i += 7) big.set(i, true);
  CHECK(big.to_string().size() == std::string("torus:16@").size() + 128);
  CHECK(Configuration::parse(big.to_string()) == big);
}

TEST_CASE("fill keeps bits beyond the edge count clear") {
  Configuration c(Rect(0, 0, 3, 2));
  c.fill(true);
  CHECK(c.count_open() == 17);
  c.fill(false);
  CHECK(c.count_open() == 0);
}

TEST_CASE("open threshold rounds up and saturates") {
  CHECK(open_threshold(0.0) == 0);
  CHECK(open_threshold(1.0) == (std::uint64_t{1} << 32));
  CHECK(open_threshold(0.5) == (std::uint64_t{1} << 31));
  CHECK_THROWS_AS(open_threshold(1.5), std::invalid_argument);
  CHECK_THROWS_AS(open_threshold(std::nan("")), std::invalid_argument);
}

TEST_CASE("sampling is a pure function of (seed, sample index, edge)") {
  const Region r = Rect(0, 0, 9, 7);
  const auto a = sample(r, 0.37, 42, 5);
  const auto b = sample(r, 0.37, 42, 5);
  CHECK(a == b);
  CHECK_FALSE(a == sample(r, 0.37, 42, 6));
  CHECK_FALSE(a == sample(r, 0.37, 43, 5));
  const auto thr = open_threshold(0.37);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.open(i) == (edge_draw(42, 5, i) < thr));
  CHECK(sample(r, 0.0, 1, 1).count_open() == 0);
  CHECK(sample(r, 1.0, 1, 1).count_open() == a.size());
}

TEST_CASE("coupled tables agree with direct sampling and are monotone") {
  const Region r = Torus(8);
  const auto table = sample_coupled(r, 7, 3);
  for (double p : {0.1, 0.5, 0.77}) CHECK(table.at(p) == sample(r, p, 7, 3));
  const auto lo = table.at(0.3);
  const auto hi = table.at(0.6);
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo.open(i)) CHECK(hi.open(i));
  }
}

TEST_CASE("open fraction is near p") {
  const Region r = Torus(64);
  Configuration c(r);
  std::size_t open = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    sample_into(c, 0.3, 99, s);
    open += c.count_open();
  }
  const double frac = static_cast<double>(open) / (20.0 * c.size());
  CHECK(std::abs(frac - 0.3) < 0.01);
}

TEST_CASE("dualize flips paired edges and closes the unpaired rows") {
  const Rect r(0, 0, 2, 1);
  Configuration c(r);
  const auto d = dualize(c);
  REQUIRE(std::holds_alternative<DualRect>(d.region()));
  const DualRectMap m = dual_rect(r);
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(d.open(i) == m.primal_partner[i].has_value());

  c.fill(true);
  CHECK(dualize(c).count_open() == 0);

  // A dual of width >= 2 maps back: the double dual reproduces interior edges.
  const Rect big(0, 0, 3, 2);
  const auto s = sample(big, 0.5, 11, 0);
  const auto back = dualize(dualize(s));
  const Rect twice = std::get<Rect>(back.region());
  CHECK(twice == Rect(1, -1, 2, 3));
  std::size_t compared = 0;
  for (std::size_t i = 0; i < back.size(); ++i) {
    const Edge e = edge_at(twice, i);
    if (!big.contains(e)) continue;
    ++compared;
    CHECK(back.open(i) == s.is_open(e));
  }
  CHECK(compared == 7);
}
