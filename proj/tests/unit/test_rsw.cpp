#include <cmath>

#include "doctest.h"
#include "perclab/oracle.hpp"
#include "perclab/rsw.hpp"
#include "support/brute.hpp"

using namespace perclab;

TEST_CASE("chain bounds: 1/2, then 1/128, then 2^-19") {
  const auto b = chain_bounds(3);
  REQUIRE(b.size() == 5);  // lengths 2n .. 6n
  CHECK(b[0].multiple == 2);
  CHECK(b[0].bound() == 0.5);
  CHECK(b[1].multiple == 3);
  CHECK(b[1].bound() == 0.5 * 0.5 / 32);
  CHECK(b[1].bound() == 1.0 / 128);
  CHECK(b[3].multiple == 5);
  CHECK(b[3].bound() == std::ldexp(1.0, -19));
  CHECK(b[3].bound() == b[1].bound() * b[1].bound() / 32);
  // 4n is padded from 5n, 6n from 9n.
  CHECK_FALSE(b[2].on_chain);
  CHECK(b[2].exponent == 19);
  CHECK(b[4].exponent == 2 * 19 + 5);
  CHECK_THROWS(chain_bounds(1));
  CHECK(chain_bounds(7).back().multiple == 14);
}

TEST_CASE("chain bounds are nonincreasing in length") {
  const auto b = chain_bounds(7);
  for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i].bound() <= b[i - 1].bound());
}

TEST_CASE("check_chain at p = 1 sees every crossing") {
  const auto r = check_chain(2, 1.0, 20, 1);
  CHECK(r.holds());
  for (const auto& pt : r.points) CHECK(pt.estimate.p_hat == 1.0);
}

TEST_CASE("check_chain at one half clears its bounds") {
  const auto r = check_chain(4, 0.5, 2000, 3);
  CHECK(r.holds());
  CHECK(r.c2_proxy > 0.0);
}

TEST_CASE("annulus product at p = 0 and p = 1") {
  const auto one = annulus_product(1, 1.0, 20, 1);
  CHECK(one.circuit.p_hat == 1.0);
  CHECK(one.q4 == 1.0);
  CHECK(one.holds());
  const auto zero = annulus_product(1, 0.0, 20, 1);
  CHECK(zero.circuit.p_hat == 0.0);
  CHECK(zero.q4 == 0.0);
  CHECK(zero.holds());
}

TEST_CASE("annulus band estimate matches the exact band probability") {
  const Annulus a({0, 0}, 1, 3);
  const Rect band = a.bands()[0];
  CHECK(band.width() == 5);
  CHECK(band.height() == 1);
  const double exact = static_cast<double>(exact_count(band, h_event(band)).probability(Rational(1, 2)));
  const auto r = annulus_product(1, 0.5, 20000, 5);
  CHECK(r.band.contains(exact));
  CHECK(r.implication_failures == 0);
  CHECK(r.holds());
}

TEST_CASE("annulus product at n = 4") {
  const auto r = annulus_product(4, 0.5, 3000, 2);
  CHECK(r.implication_failures == 0);
  CHECK(r.holds());
}

namespace {

Configuration shifted(const Configuration& c, int dx, int dy) {
  const Region& region = c.region();
  Configuration out(region);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!c.open(i)) continue;
    Edge e = edge_at(region, i);
    e.anchor = {e.anchor.x + dx, e.anchor.y + dy};
    out.set(*index_of(region, e), true);
  }
  return out;
}

}  // namespace

TEST_CASE("torus event is translation invariant") {
  const Torus t(8);
  for (std::uint64_t i = 0; i < 30; ++i) {
    const Configuration c = sample(t, 0.5, 4, i);
    const bool e = torus_symmetric_event(c, 6, 2);
    for (int dx = 0; dx < 8; ++dx) {
      for (int dy = 0; dy < 8; ++dy) CHECK(torus_symmetric_event(shifted(c, dx, dy), 6, 2) == e);
    }
  }
}

TEST_CASE("torus event dominates a fixed rectangle, sample by sample") {
  const Torus t(10);
  for (std::uint64_t i = 0; i < 300; ++i) {
    const Configuration c = sample(t, 0.5, 8, i);
    if (has_h_crossing(c, torus_rect(t, {0, 0}, 8, 3))) CHECK(torus_symmetric_event(c, 8, 3));
  }
  CHECK(torus_event(t, 8, 3, 1.0, 10, 1).p_hat == 1.0);
  CHECK(torus_event(t, 8, 3, 0.0, 10, 1).p_hat == 0.0);
  CHECK_THROWS(torus_event(t, 9, 3, 0.5, 10, 1));
}

TEST_CASE("covering of T_16n") {
  for (int n : {1, 2}) {
    const auto r = covering_check(n);
    CHECK(r.covered());
    CHECK(r.positions == static_cast<std::uint64_t>(2 * 16 * n * 16 * n));
  }
  CHECK(covering_family().size() == 128);
}

TEST_CASE("covering fails with a witness once a rectangle is dropped") {
  for (std::size_t drop : {std::size_t{0}, std::size_t{9}, std::size_t{70}, std::size_t{127}}) {
    auto family = covering_family();
    const CoverRect gone = family[drop];
    family.erase(family.begin() + static_cast<std::ptrdiff_t>(drop));
    const auto r = covering_check(1, family);
    REQUIRE_FALSE(r.covered());
    CHECK(r.uncovered->orientation == gone.orientation);
    // The one translate that only the dropped member covered.
    const bool h = gone.orientation == Direction::Horizontal;
    CHECK(r.uncovered->x == (2 * gone.a + (h ? -1 : 1) + 16) % 16);
    CHECK(r.uncovered->y == (2 * gone.b + (h ? 1 : -1) + 16) % 16);
  }
}

TEST_CASE("square-root trick at the extremes") {
  const auto one = sqrt_trick_check(1, 1.0, 5, 1);
  CHECK(one.e_complement.p_hat == 0.0);
  CHECK(one.rhs == 0.0);
  CHECK(one.holds());
  const auto zero = sqrt_trick_check(1, 0.0, 5, 1);
  CHECK(zero.e_complement.p_hat == 1.0);
  CHECK(zero.rhs == 1.0);
  CHECK(zero.holds());
}

TEST_CASE("square-root trick at one half, small run") {
  const auto r = sqrt_trick_check(1, 0.5, 300, 6);
  CHECK(r.union_failures == 0);
  CHECK(r.holds());
}
