#pragma once

// Composite checks built on crossing events: the chain of lower bounds for
// long rectangles, the annulus product bound, events on the torus T_{16n},
// the deterministic covering of T_{16n}, and the square-root trick.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "perclab/estimate.hpp"

namespace perclab {

/// Provable lower bound 2^-exponent for h(length, 2n) at p = 1/2.
struct ChainBound {
  int multiple = 2;       // length = multiple * n
  int exponent = 1;
  bool on_chain = true;   // false for lengths padded from the next chain length
  double bound() const;
};

/// Bounds for lengths 2n, 3n, ..., 2 rho n. Chain lengths m_0 = 2n,
/// m_{t+1} = 2 m_t - n carry exponents e_0 = 1, e_{t+1} = 2 e_t + 5; other
/// lengths inherit the bound of the next chain length, since h decreases
/// with length.
std::vector<ChainBound> chain_bounds(int rho);

struct ChainPoint {
  ChainBound bound;
  Estimate estimate;  // horizontal crossing of (multiple * n) by 2n
  bool holds = false; // estimate + 3 standard errors >= bound
};

struct RSWReport {
  int n = 0, rho = 3;
  double p = 0.5;
  std::vector<ChainPoint> points;
  double c2_proxy = 0.0;  // smallest estimate, at length 2 rho n
  bool holds() const;
};

RSWReport check_chain(int n, double p, std::uint64_t samples, std::uint64_t seed, int rho = 3, unsigned workers = 1);

struct AnnulusReport {
  int n = 0;
  double p = 0.0;
  Estimate circuit;       // open circuit in the annulus of radii n and 3n
  Estimate band;          // bottom band crossed the long way
  Estimate all_bands;     // all four bands crossed the long way
  std::uint64_t implication_failures = 0;  // four bands crossed but no circuit
  double q4 = 0.0;        // band p_hat^4
  double slack = 0.0;     // 3 sigma, propagated
  bool holds() const { return implication_failures == 0 && circuit.p_hat + slack >= q4; }
};

AnnulusReport annulus_product(int n, double p, std::uint64_t samples, std::uint64_t seed, unsigned workers = 1);

/// E: some translate of a k by l rectangle (k >= l) of the torus, in either
/// orientation, is crossed the long way.
bool torus_symmetric_event(const Configuration& config, int k, int l);

Estimate torus_event(const Torus& t, int k, int l, double p, std::uint64_t samples, std::uint64_t seed,
                     unsigned workers = 1);

/// Rectangle of the covering family: anchor (a, b) in units of 2n.
struct CoverRect {
  int a = 0, b = 0;
  Direction orientation = Direction::Horizontal;
};

/// The 64 horizontal 12n by 4n and 64 vertical 4n by 12n rectangles of
/// T_{16n} anchored at multiples of 2n.
std::vector<CoverRect> covering_family();

/// Lower-left corner of a 14n by 2n (or 2n by 14n) translate on T_{16n}.
struct TorusPosition {
  int x = 0, y = 0;
  Direction orientation = Direction::Horizontal;
};

struct CoveringReport {
  int n = 0;
  std::uint64_t positions = 0;
  std::optional<TorusPosition> uncovered;  // first one found, in scan order
  bool covered() const { return !uncovered.has_value(); }
};

/// Every translate of a 14n by 2n rectangle (both orientations) meets some
/// family member R_i in a 12n by 2n subrectangle of R_i spanning its length,
/// so that crossing the translate the long way crosses R_i the long way.
CoveringReport covering_check(int n, const std::vector<CoverRect>& family);
CoveringReport covering_check(int n);

struct SqrtTrickReport {
  int n = 1;
  double p = 0.5;
  Estimate e_complement;    // no 14n by 2n translate crossed
  Estimate e1_complement;   // fixed 12n by 4n rectangle not crossed
  double rhs = 0.0;         // e1_complement^128
  double slack = 0.0;       // 3 sigma, propagated
  std::uint64_t union_failures = 0;  // E held but no family member was crossed
  bool holds() const { return union_failures == 0 && e_complement.p_hat + slack >= rhs; }
};

SqrtTrickReport sqrt_trick_check(int n, double p, std::uint64_t samples, std::uint64_t seed, unsigned workers = 1);

}  // namespace perclab
