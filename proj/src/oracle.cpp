#include "perclab/oracle.hpp"

#include <bit>
#include <thread>

namespace perclab {

namespace {

void check_cap(std::size_t edges, std::size_t cap) {
  if (edges > cap) throw CapExceeded(edges, cap);
}

std::vector<BigInt> binomial_row(std::size_t n) {
  std::vector<BigInt> row(n + 1);
  row[0] = 1;
  for (std::size_t i = 1; i <= n; ++i) row[i] = row[i - 1] * (n - i + 1) / i;
  return row;
}

Rational power(const Rational& base, std::size_t exp) {
  Rational r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

CapExceeded::CapExceeded(std::size_t required, std::size_t cap)
    : std::runtime_error("exhaustive enumeration refused: region has " + std::to_string(required) +
                         " edges, cap is " + std::to_string(cap)),
      required_(required),
      cap_(cap) {}

NotIncreasing::NotIncreasing(const std::string& event, std::uint64_t mask, std::size_t edge)
    : std::invalid_argument("event " + event + " is not increasing: holds at mask " + std::to_string(mask) +
                            " but fails after opening edge " + std::to_string(edge)) {}

namespace {

// Decimal only: the BigInt string constructor reads a leading 0 as octal.
BigInt parse_integer(std::string digits, const std::string& text) {
  bool negative = false;
  if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
    negative = digits[0] == '-';
    digits.erase(0, 1);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("not a rational: " + text);
  }
  const auto nonzero = digits.find_first_not_of('0');
  const BigInt value(nonzero == std::string::npos ? std::string("0") : digits.substr(nonzero));
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in " + text);
    return Rational(parse_integer(text.substr(0, slash), text), den);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(parse_integer(text, text));
  std::string whole = text.substr(0, dot);
  if (whole.empty() || whole == "-" || whole == "+") whole += "0";
  const std::string frac = text.substr(dot + 1);
  if (frac.find_first_of("+-") != std::string::npos) throw std::invalid_argument("not a rational: " + text);
  BigInt den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  return Rational(parse_integer(whole + frac, text), den);
}

std::string to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Polynomial::Polynomial(std::vector<BigInt> coefficients) : coef_(std::move(coefficients)) { trim(); }

Polynomial Polynomial::constant(const BigInt& c) { return Polynomial({c}); }

Polynomial Polynomial::from_counts(const std::vector<std::uint64_t>& counts) {
  if (counts.empty()) return {};
  const std::size_t e = counts.size() - 1;
  std::vector<BigInt> coef(e + 1);
  for (std::size_t j = 0; j <= e; ++j) {
    if (counts[j] == 0) continue;
    const auto binom = binomial_row(e - j);
    for (std::size_t i = 0; i <= e - j; ++i) {
      const BigInt term = binom[i] * counts[j];
      if (i % 2 == 0) {
        coef[j + i] += term;
      } else {
        coef[j + i] -= term;
      }
    }
  }
  return Polynomial(std::move(coef));
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

Polynomial Polynomial::reflected() const {
  // p(1 - x) = sum_k a_k (1 - x)^k.
  std::vector<BigInt> out(coef_.size());
  for (std::size_t k = 0; k < coef_.size(); ++k) {
    if (coef_[k] == 0) continue;
    const auto binom = binomial_row(k);
    for (std::size_t i = 0; i <= k; ++i) {
      if (i % 2 == 0) {
        out[i] += coef_[k] * binom[i];
      } else {
        out[i] -= coef_[k] * binom[i];
      }
    }
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<BigInt> out(std::max(coef_.size(), o.coef_.size()));
  for (std::size_t i = 0; i < coef_.size(); ++i) out[i] += coef_[i];
  for (std::size_t i = 0; i < o.coef_.size(); ++i) out[i] += o.coef_[i];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (coef_.empty() || o.coef_.empty()) return {};
  std::vector<BigInt> out(coef_.size() + o.coef_.size() - 1);
  for (std::size_t i = 0; i < coef_.size(); ++i) {
    for (std::size_t j = 0; j < o.coef_.size(); ++j) out[i + j] += coef_[i] * o.coef_[j];
  }
  return Polynomial(std::move(out));
}

void Polynomial::trim() {
  while (!coef_.empty() && coef_.back() == 0) coef_.pop_back();
}

TruthTable::TruthTable(std::size_t edges, std::vector<std::uint64_t> bits) : edges_(edges), bits_(std::move(bits)) {
  if (bits_.size() != (size() + 63) / 64) throw std::invalid_argument("truth table has the wrong size");
}

TruthTable TruthTable::operator&(const TruthTable& o) const {
  if (edges_ != o.edges_) throw std::invalid_argument("truth tables over different regions");
  std::vector<std::uint64_t> out(bits_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = bits_[i] & o.bits_[i];
  return {edges_, std::move(out)};
}

std::vector<std::uint64_t> TruthTable::counts() const {
  std::vector<std::uint64_t> out(edges_ + 1, 0);
  for (std::uint64_t m = 0; m < size(); ++m) {
    if ((*this)[m]) ++out[static_cast<std::size_t>(std::popcount(m))];
  }
  return out;
}

std::optional<std::pair<std::uint64_t, std::size_t>> TruthTable::increasing_violation() const {
  for (std::uint64_t m = 0; m < size(); ++m) {
    if (!(*this)[m]) continue;
    for (std::size_t e = 0; e < edges_; ++e) {
      const std::uint64_t bit = std::uint64_t{1} << e;
      if (!(m & bit) && !(*this)[m | bit]) return std::make_pair(m, e);
    }
  }
  return std::nullopt;
}

TruthTable tabulate(const Region& region, const Event& event, std::size_t cap, unsigned workers) {
  const std::size_t e = edge_count(region);
  check_cap(e, cap);
  const std::uint64_t total = std::uint64_t{1} << e;
  std::vector<std::uint64_t> bits((total + 63) / 64, 0);

  // Workers own whole words, so no two threads touch the same one.
  const auto run = [&](std::size_t word_begin, std::size_t word_end) {
    Configuration c(region);
    for (std::size_t w = word_begin; w < word_end; ++w) {
      std::uint64_t acc = 0;
      const std::uint64_t base = static_cast<std::uint64_t>(w) * 64;
      for (std::uint64_t k = 0; k < 64 && base + k < total; ++k) {
        c.assign_mask(base + k);
        if (event.test(c)) acc |= std::uint64_t{1} << k;
      }
      bits[w] = acc;
    }
  };
  const std::size_t words = bits.size();
  const std::size_t n = std::max<std::size_t>(1, std::min<std::size_t>(workers, words));
  if (n == 1) {
    run(0, words);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(run, words * t / n, words * (t + 1) / n);
    for (auto& th : pool) th.join();
  }
  return {e, std::move(bits)};
}

Rational ExactResult::probability(const Rational& p) const {
  const Rational q = 1 - p;
  Rational sum = 0;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] == 0) continue;
    sum += Rational(counts[j]) * power(p, j) * power(q, edges - j);
  }
  return sum;
}

std::uint64_t ExactResult::members() const {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

namespace {

ExactResult from_table(const Region& region, const Event& event, const TruthTable& t) {
  return {descriptor(region), event.name, t.edges(), t.counts()};
}

}  // namespace

ExactResult exact_count(const Region& region, const Event& event, std::size_t cap, unsigned workers) {
  return from_table(region, event, tabulate(region, event, cap, workers));
}

SelfDualityReport verify_self_duality(int k, int l, const Rational& p, std::size_t cap) {
  if (k < 1 || l < 2) throw std::invalid_argument("self-duality needs k >= 1 and l >= 2");
  if (p < 0 || p > 1) throw std::invalid_argument("p must lie in [0, 1]");
  const Rect r(0, 0, k, l - 1);
  SelfDualityReport out;
  out.k = k;
  out.l = l;
  out.p = p;
  const Region dual_side = k >= 2 ? Region{Rect(0, 0, k - 1, l)} : Region{DualRect(0, 0, 0, l)};
  check_cap(edge_count(r), cap);
  check_cap(edge_count(dual_side), cap);
  out.h = exact_count(r, h_event(r), cap);
  out.v = k >= 2 ? exact_count(dual_side, v_event(std::get<Rect>(dual_side)), cap)
                 : exact_count(dual_side, v_event(std::get<DualRect>(dual_side)), cap);
  out.pr_h = out.h.probability(p);
  out.pr_v = out.v.probability(1 - p);
  out.value_holds = out.pr_h + out.pr_v == 1;
  out.polynomial_holds = out.h.polynomial() + out.v.polynomial().reflected() == Polynomial::constant(1);
  return out;
}

HarrisReport verify_harris(const Region& region, const Event& a, const Event& b, const Rational& p,
                           std::size_t cap) {
  const TruthTable ta = tabulate(region, a, cap);
  const TruthTable tb = tabulate(region, b, cap);
  if (const auto bad = ta.increasing_violation()) throw NotIncreasing(a.name, bad->first, bad->second);
  if (const auto bad = tb.increasing_violation()) throw NotIncreasing(b.name, bad->first, bad->second);
  HarrisReport out;
  out.region = descriptor(region);
  out.a = a.name;
  out.b = b.name;
  out.p = p;
  out.pr_a = from_table(region, a, ta).probability(p);
  out.pr_b = from_table(region, b, tb).probability(p);
  out.lhs = from_table(region, both(a, b), ta & tb).probability(p);
  out.rhs = out.pr_a * out.pr_b;
  out.holds = out.lhs >= out.rhs;
  out.equality = out.lhs == out.rhs;
  return out;
}

XBoundReport verify_x_bound(int m, int n, const Rational& p, std::size_t cap) {
  if (n < 1 || m < n) throw std::invalid_argument("X bound needs m >= n >= 1");
  const Rect r(0, 0, m, 2 * n);
  const Rect s(0, 0, n, n);
  check_cap(r.edge_count(), cap);
  XBoundReport out;
  out.m = m;
  out.n = n;
  out.p = p;
  out.pr_x = exact_count(r, x_event(r, s), cap).probability(p);
  out.pr_h = exact_count(r, h_event(r), cap).probability(p);
  out.pr_v = exact_count(r, v_event(s), cap).probability(p);
  out.rhs = out.pr_h * out.pr_v / 2;
  out.holds = out.pr_x >= out.rhs;
  return out;
}

DualityReport verify_duality_exhaustive(const Rect& r, std::size_t cap) {
  const std::size_t e = r.edge_count();
  check_cap(e, cap);
  const DualRect dual = dual_rect(r).rect;
  DualityReport out;
  out.region = descriptor(r);
  Configuration c(r);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << e); ++m) {
    c.assign_mask(m);
    ++out.checked;
    const bool h = has_h_crossing(c, r);
    const bool v_star = has_v_crossing(dualize(c), dual);
    if (h == v_star) {
      ++out.violations;
      if (!out.first_failure) out.first_failure = "exactly-one fails at " + c.to_string();
    }
    try {
      const auto res = interface_decision(c, r);
      if ((res.kind == InterfaceResult::Kind::HorizontalPrimal) != h) {
        ++out.interface_mismatches;
        if (!out.first_failure) out.first_failure = "interface variant disagrees at " + c.to_string();
      }
    } catch (const InvariantViolation& ex) {
      ++out.interface_mismatches;
      if (!out.first_failure) out.first_failure = ex.what();
    }
  }
  return out;
}

}  // namespace perclab
