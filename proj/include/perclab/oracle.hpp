#pragma once

// Exact probabilities by exhaustive enumeration. Configurations are visited
// in integer counting order of their packed bit vector; every event is
// re-evaluated from scratch on each one. All arithmetic is exact.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "perclab/event.hpp"

namespace perclab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::size_t kDefaultEdgeCap = 22;

/// Refusal to enumerate a region whose edge count exceeds the cap.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::size_t required, std::size_t cap);
  std::size_t required() const { return required_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t required_, cap_;
};

/// Thrown by verify_harris when an input event is not increasing.
class NotIncreasing : public std::invalid_argument {
 public:
  NotIncreasing(const std::string& event, std::uint64_t mask, std::size_t edge);
};

Rational parse_rational(const std::string& text);
/// "a/b" (or "a" for integers).
std::string to_string(const Rational& q);

/// Polynomial in p with integer coefficients in the monomial basis.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<BigInt> coefficients);
  static Polynomial constant(const BigInt& c);
  /// sum_j counts[j] x^j (1 - x)^(E - j), E = counts.size() - 1.
  static Polynomial from_counts(const std::vector<std::uint64_t>& counts);

  const std::vector<BigInt>& coefficients() const { return coef_; }
  std::size_t degree() const { return coef_.empty() ? 0 : coef_.size() - 1; }
  Rational operator()(const Rational& x) const;
  /// q(x) = p(1 - x).
  Polynomial reflected() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  bool operator==(const Polynomial& o) const { return coef_ == o.coef_; }

 private:
  void trim();
  std::vector<BigInt> coef_;
};

/// One bit per configuration of a region, indexed by packed mask.
class TruthTable {
 public:
  TruthTable(std::size_t edges, std::vector<std::uint64_t> bits);
  std::size_t edges() const { return edges_; }
  std::uint64_t size() const { return std::uint64_t{1} << edges_; }
  bool operator[](std::uint64_t mask) const { return (bits_[mask >> 6] >> (mask & 63)) & 1U; }
  TruthTable operator&(const TruthTable& o) const;
  /// c_j = number of members with j open edges.
  std::vector<std::uint64_t> counts() const;
  /// First (mask, edge) with the event holding at mask but not after opening edge.
  std::optional<std::pair<std::uint64_t, std::size_t>> increasing_violation() const;

 private:
  std::size_t edges_;
  std::vector<std::uint64_t> bits_;
};

/// Tabulates an event over all 2^E configurations; `workers` threads split
/// the mask range.
TruthTable tabulate(const Region& region, const Event& event, std::size_t cap = kDefaultEdgeCap,
                    unsigned workers = 1);

struct ExactResult {
  std::string region;
  std::string event;
  std::size_t edges = 0;
  std::vector<std::uint64_t> counts;  // length edges + 1

  Rational probability(const Rational& p) const;
  Polynomial polynomial() const { return Polynomial::from_counts(counts); }
  std::uint64_t members() const;
};

ExactResult exact_count(const Region& region, const Event& event, std::size_t cap = kDefaultEdgeCap,
                        unsigned workers = 1);

/// Pr_p(H(R)) + Pr_{1-p}(V(R')) = 1 for R = k by l-1 and R' = k-1 by l. For
/// k = 1, R' is the single column of l vertical edges.
struct SelfDualityReport {
  int k = 0, l = 0;
  Rational p;
  ExactResult h, v;
  Rational pr_h, pr_v;  // Pr_p(H(R)) and Pr_{1-p}(V(R'))
  bool value_holds = false;
  bool polynomial_holds = false;
  bool holds() const { return value_holds && polynomial_holds; }
};

SelfDualityReport verify_self_duality(int k, int l, const Rational& p, std::size_t cap = kDefaultEdgeCap);

struct HarrisReport {
  std::string region, a, b;
  Rational p, pr_a, pr_b, lhs, rhs;  // lhs = Pr(A and B), rhs = Pr(A) Pr(B)
  bool holds = false;
  bool equality = false;
};

/// Both events are checked increasing by an exhaustive flip test first.
HarrisReport verify_harris(const Region& region, const Event& a, const Event& b, const Rational& p,
                           std::size_t cap = kDefaultEdgeCap);

struct XBoundReport {
  int m = 0, n = 0;
  Rational p, pr_x, pr_h, pr_v, rhs;  // rhs = Pr(H(R)) Pr(V(S)) / 2
  bool holds = false;
};

XBoundReport verify_x_bound(int m, int n, const Rational& p, std::size_t cap = kDefaultEdgeCap);

struct DualityReport {
  std::string region;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;            // H(R) and V*(R^h) not exactly one
  std::uint64_t interface_mismatches = 0;  // walk variant disagreeing with H(R)
  std::optional<std::string> first_failure;
  bool ok() const { return violations == 0 && interface_mismatches == 0; }
};

DualityReport verify_duality_exhaustive(const Rect& r, std::size_t cap = kDefaultEdgeCap);

}  // namespace perclab
