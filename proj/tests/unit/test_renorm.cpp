#include <cmath>

#include "doctest.h"
#include "perclab/renorm.hpp"
#include "support/brute.hpp"

using namespace perclab;

namespace {

const IterationMap quintic{IterationMap::Kind::Quintic};
const IterationMap quartic{IterationMap::Kind::Quartic};

}  // namespace

TEST_CASE("maps fix 0 and 1 and stay in the unit interval") {
  for (const auto& m : {quintic, quartic}) {
    CHECK(m(0.0) == 0.0);
    CHECK(m(1.0) == 1.0);
    for (int i = 0; i <= 100; ++i) {
      const double y = m(i / 100.0);
      CHECK(y >= 0.0);
      CHECK(y <= 1.0);
    }
  }
  CHECK(quintic(0.9) == doctest::Approx(1 - std::pow(1 - std::pow(0.9, 5), 2)));
  CHECK(IterationMap::parse("quartic").kind == IterationMap::Kind::Quartic);
  CHECK_THROWS(IterationMap::parse("cubic"));
}

TEST_CASE("fixed points to three decimals") {
  const double q5 = fixed_point(quintic, 1e-6);
  const double q4 = fixed_point(quartic, 1e-6);
  CHECK(static_cast<int>(q5 * 1000) == 951);
  CHECK(static_cast<int>(q4 * 1000) == 920);
  CHECK(std::abs(quintic(q5) - q5) < 1e-5);
  CHECK(std::abs(quartic(q4) - q4) < 1e-5);
}

TEST_CASE("fixed points are stable under tolerance refinement") {
  for (const auto& m : {quintic, quartic}) {
    double tol = 1e-3;
    double prev = fixed_point(m, tol);
    for (int i = 0; i < 10; ++i) {
      const double next = fixed_point(m, tol / 2);
      CHECK(std::abs(next - prev) < tol);
      prev = next;
      tol /= 2;
    }
  }
  CHECK_THROWS(fixed_point(quintic, 0.0));
}

TEST_CASE("iteration above and below the fixed point") {
  const auto up = iterate(quintic, 0.98, 6);
  CHECK(1.0 - up[1] <= 0.01);
  CHECK(decay_violations(up).empty());
  const auto flat = iterate(quintic, 1.0, 5);
  for (double x : flat) CHECK(x == 1.0);
  const auto down = iterate(quintic, 0.5, 8);
  for (std::size_t k = 1; k < down.size(); ++k) CHECK((down[k] < down[k - 1] || down[k] == 0.0));
  CHECK(down.back() < 1e-6);
  CHECK_THROWS(iterate(quintic, 1.5, 2));
}

TEST_CASE("decay holds for every start within 1/50 of 1") {
  for (int i = 0; i <= 20; ++i) {
    const double x0 = 1.0 - i / 1000.0;
    CHECK(decay_violations(iterate(quintic, x0, 12)).empty());
  }
  CHECK_FALSE(decay_violations(iterate(quintic, 0.95, 3)).empty());
}

TEST_CASE("one-dependent series") {
  CHECK(one_dep_series(1.0) == 0.0);
  CHECK_THROWS_AS(one_dep_series(80.0 / 81.0), std::domain_error);
  CHECK_THROWS_AS(one_dep_series(0.5), std::domain_error);
  for (double p0 : {0.995, 0.999}) CHECK(std::abs(one_dep_series(p0) - one_dep_partial_sum(p0, 400)) < 1e-9);
  // Where the ratio is near 1 the truncation error is visible but shrinks.
  CHECK(std::abs(one_dep_series(0.99) - one_dep_partial_sum(0.99, 2000)) < 1e-9);
}

TEST_CASE("series threshold") {
  const double t = series_threshold(1e-9);
  CHECK(one_dep_series(t) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(t == doctest::Approx(0.9989167728).epsilon(1e-9));
  CHECK(std::abs(series_threshold(1e-6) - t) < 1e-6);
  CHECK(series_threshold(1e-6) == series_threshold(1e-6));
}

TEST_CASE("crossing requirement from the cited density") {
  const auto req = crossing_requirement();
  CHECK(req.p0 == kCitedP0);
  CHECK(req.required == doctest::Approx(std::pow(0.8639, 2.0 / 3.0)));
  CHECK(req.met_by(0.91));
  CHECK_FALSE(req.met_by(0.90));
}

TEST_CASE("coarse blocks and anchor squares") {
  const CoarseLattice c(2, 3, 2);
  CHECK(c.block({Orientation::Horizontal, {1, 1}}) == Rect(4, 4, 10, 6));
  CHECK(c.block({Orientation::Vertical, {1, 0}}) == Rect(4, 0, 6, 6));
  CHECK(c.anchor_square({2, 1}) == Rect(8, 4, 10, 6));
  CHECK(c.fine_region() == Rect(0, 0, 14, 10));
  CHECK_THROWS(CoarseLattice(0, 1, 1));
}

TEST_CASE("coarse grain of all-open and all-closed fine lattices") {
  const int n = 2;
  const CoarseLattice shape(n, 3, 3);
  Configuration fine(shape.fine_region());
  CHECK(coarse_grain(fine, n, 3, 3).config().count_open() == 0);
  fine.fill(true);
  const auto all = coarse_grain(fine, n, 3, 3);
  CHECK(all.config().count_open() == all.config().size());
  CHECK_THROWS(coarse_grain(Configuration(Rect(0, 0, 5, 5)), n, 3, 3));
}

TEST_CASE("coarse lattice text form round-trips") {
  const Configuration fine = sample(CoarseLattice(1, 4, 4).fine_region(), 0.6, 3, 0);
  const auto c = coarse_grain(fine, 1, 4, 4);
  const std::string text = c.to_string();
  CHECK(text.rfind("coarse:1:rect:0,0,4,4@", 0) == 0);
  CHECK(CoarseLattice::parse(text) == c);
  CHECK(coarse_grain(fine, 1, 4, 4) == c);
  CHECK_THROWS(CoarseLattice::parse("rect:0,0,1,1@0"));
}

TEST_CASE("coarse edges are increasing in the fine configuration") {
  const CoarseLattice shape(1, 3, 3);
  for (std::uint64_t s = 0; s < 20; ++s) {
    Configuration fine = sample(shape.fine_region(), 0.55, 12, s);
    const auto before = coarse_grain(fine, 1, 3, 3);
    for (std::size_t i = 0; i < fine.size(); i += 3) {
      if (fine.open(i)) continue;
      fine.set(i, true);
      const auto after = coarse_grain(fine, 1, 3, 3);
      for (std::size_t e = 0; e < before.config().size(); ++e) {
        if (before.config().open(e)) CHECK(after.config().open(e));
      }
      fine.set(i, false);
    }
  }
}

TEST_CASE("embedding: a single open coarse edge joins its anchor squares") {
  const int n = 2;
  const CoarseLattice shape(n, 2, 1);
  Configuration fine(shape.fine_region());
  // Open exactly the block of (0,0)-(1,0).
  const Rect block = shape.block({Orientation::Horizontal, {0, 0}});
  for (std::size_t i = 0; i < fine.size(); ++i) fine.set(i, block.contains(edge_at(fine.region(), i)));
  const auto coarse = coarse_grain(fine, n, 2, 1);
  CHECK(coarse.config().count_open() == 1);
  const auto rep = verify_embedding(fine, coarse);
  CHECK(rep.clusters_checked == 1);
  CHECK(rep.ok());

  const auto empty = verify_embedding(Configuration(shape.fine_region()), CoarseLattice(n, 2, 1));
  CHECK(empty.clusters_checked == 0);
  CHECK(empty.ok());
}

TEST_CASE("embedding detects a coarse lattice not derived from the fine one") {
  const CoarseLattice shape(1, 2, 2);
  CoarseLattice forged(1, 2, 2);
  forged.config().fill(true);
  const auto rep = verify_embedding(Configuration(shape.fine_region()), forged);
  CHECK(rep.violations == 1);
  CHECK(rep.first_violation.has_value());
}

TEST_CASE("embedding audit at small scale") {
  const auto a = audit_embedding(2, 4, 4, 0.6, 100, 1);
  CHECK(a.violations == 0);
  CHECK(a.coarse_open_edges > 0);
  CHECK(audit_embedding(2, 4, 4, 0.6, 100, 1, 3).coarse_open_edges == a.coarse_open_edges);
}

TEST_CASE("disjoint blocks: exact product law") {
  const auto r = product_law_exact(1);
  CHECK(edge_count(r.region) == 22);
  CHECK(r.holds());
  // Not a triviality: the law fails for overlapping blocks.
  const Rect region(0, 0, 5, 1);
  const Event a = g_event(Rect(0, 0, 3, 1), Direction::Horizontal);
  const Event b = g_event(Rect(2, 0, 5, 1), Direction::Horizontal);
  const auto pa = exact_count(region, a).polynomial();
  const auto pb = exact_count(region, b).polynomial();
  CHECK_FALSE(exact_count(region, both(a, b)).polynomial() == pa * pb);
}

TEST_CASE("disjoint blocks: empirical independence") {
  const auto r = independence_mc(2, 0.6, 4000, 3);
  CHECK(r.correlation_ci.lo <= r.correlation);
  CHECK(r.correlation <= r.correlation_ci.hi);
  CHECK(std::abs(r.correlation) < 0.1);
}

TEST_CASE("doubling rectangles") {
  CHECK(doubling_rect(3, 0) == Rect(0, 0, 3, 6));
  CHECK(doubling_rect(3, 1) == Rect(0, 0, 12, 6));
  CHECK(doubling_rect(3, 2) == Rect(0, 0, 12, 24));
  const auto one = doubling_construction(2, 1.0, 3, 5, 1);
  CHECK(one.all.p_hat == 1.0);
  CHECK(one.intersection_failures == 0);
  const auto zero = doubling_construction(2, 0.0, 3, 5, 1);
  CHECK(zero.all.p_hat == 0.0);
  const auto mid = doubling_construction(4, 0.6, 2, 300, 1);
  CHECK(mid.intersection_failures == 0);
  CHECK(mid.holds());
}
