#include "perclab/report.hpp"

#include <charconv>

namespace perclab {

using nlohmann::json;

namespace {

std::string big(const BigInt& v) { return v.str(); }

json estimates(const std::vector<Estimate>& list) {
  json out = json::array();
  for (const auto& e : list) out.push_back(e);
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string csv_row(const Estimate& e) {
  // Region and event descriptors contain commas; quote them.
  const auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  return quote(e.region) + "," + quote(e.event) + "," + format_double(e.p) + "," + std::to_string(e.samples) + "," +
         std::to_string(e.successes) + "," + format_double(e.p_hat) + "," + format_double(e.ci_lo) + "," +
         format_double(e.ci_hi) + "," + std::to_string(e.seed);
}

void to_json(json& j, const Vertex& v) { j = json::array({v.x, v.y}); }

void to_json(json& j, const PathWitness& w) {
  j = json{{"lattice", w.lattice == Lattice::Primal ? "primal" : "dual"}, {"vertices", w.vertices}};
}

void to_json(json& j, const Interval& i) { j = json::array({i.lo, i.hi}); }

void to_json(json& j, const Estimate& e) {
  j = json{{"region", e.region}, {"event", e.event},   {"p", e.p},         {"samples", e.samples},
           {"successes", e.successes}, {"p_hat", e.p_hat}, {"ci_lo", e.ci_lo}, {"ci_hi", e.ci_hi},
           {"seed", e.seed}};
}

void to_json(json& j, const Polynomial& poly) {
  j = json::array();
  for (const auto& c : poly.coefficients()) j.push_back(big(c));
}

void to_json(json& j, const ExactResult& r) {
  j = json{{"region", r.region}, {"event", r.event}, {"E", r.edges}, {"coefficients", r.counts}};
}

void to_json(json& j, const SelfDualityReport& r) {
  j = json{{"k", r.k},
           {"l", r.l},
           {"p", to_string(r.p)},
           {"h", r.h},
           {"v", r.v},
           {"pr_h", to_string(r.pr_h)},
           {"pr_v_dual_density", to_string(r.pr_v)},
           {"value_holds", r.value_holds},
           {"polynomial_holds", r.polynomial_holds},
           {"verdict", r.holds()}};
}

void to_json(json& j, const HarrisReport& r) {
  j = json{{"region", r.region}, {"a", r.a},           {"b", r.b},
           {"p", to_string(r.p)}, {"pr_a", to_string(r.pr_a)}, {"pr_b", to_string(r.pr_b)},
           {"lhs", to_string(r.lhs)}, {"rhs", to_string(r.rhs)}, {"equality", r.equality},
           {"verdict", r.holds}};
}

void to_json(json& j, const XBoundReport& r) {
  j = json{{"m", r.m},
           {"n", r.n},
           {"p", to_string(r.p)},
           {"pr_x", to_string(r.pr_x)},
           {"pr_h", to_string(r.pr_h)},
           {"pr_v", to_string(r.pr_v)},
           {"rhs", to_string(r.rhs)},
           {"verdict", r.holds}};
}

void to_json(json& j, const DualityReport& r) {
  j = json{{"region", r.region},
           {"checked", r.checked},
           {"violations", r.violations},
           {"interface_mismatches", r.interface_mismatches},
           {"verdict", r.ok()}};
  if (r.first_failure) j["first_failure"] = *r.first_failure;
}

void to_json(json& j, const LevelSearch& s) {
  j = json{{"level", s.level},
           {"p", s.p},
           {"bracket", json::array({s.bracket_lo, s.bracket_hi})},
           {"conclusive", s.conclusive},
           {"samples_used", s.samples_used},
           {"points", estimates(s.points)}};
}

void to_json(json& j, const ThresholdReport& r) {
  j = json{{"region", r.region},
           {"event", r.event},
           {"tolerance", r.tolerance},
           {"threshold", r.threshold},
           {"conclusive", r.conclusive()}};
  if (r.has_window) {
    j["window"] = json{{"epsilon", r.epsilon},
                       {"lower", r.lower},
                       {"upper", r.upper},
                       {"width", r.window()},
                       {"width_range", r.window_range()}};
  }
}

void to_json(json& j, const ClusterStats& s) {
  j = json{{"box", s.box},
           {"p", s.p},
           {"samples", s.samples},
           {"seed", s.seed},
           {"boundary_hits", s.boundary_hits},
           {"boundary_fraction", s.boundary_fraction()},
           {"boundary_ci", s.boundary_ci},
           {"mean_size", s.mean_size}};
}

void to_json(json& j, const RSWReport& r) {
  json points = json::array();
  for (const auto& pt : r.points) {
    points.push_back(json{{"length", pt.bound.multiple},
                          {"bound", pt.bound.bound()},
                          {"bound_exponent", pt.bound.exponent},
                          {"on_chain", pt.bound.on_chain},
                          {"estimate", pt.estimate},
                          {"holds", pt.holds}});
  }
  j = json{{"n", r.n}, {"rho", r.rho}, {"p", r.p}, {"points", points}, {"c2_proxy", r.c2_proxy},
           {"verdict", r.holds()}};
}

void to_json(json& j, const AnnulusReport& r) {
  j = json{{"n", r.n},
           {"p", r.p},
           {"circuit", r.circuit},
           {"band", r.band},
           {"all_bands", r.all_bands},
           {"implication_failures", r.implication_failures},
           {"q4", r.q4},
           {"slack", r.slack},
           {"verdict", r.holds()}};
}

void to_json(json& j, const CoveringReport& r) {
  j = json{{"n", r.n}, {"positions", r.positions}, {"verdict", r.covered()}};
  if (r.uncovered) {
    j["uncovered"] = json{{"x", r.uncovered->x},
                          {"y", r.uncovered->y},
                          {"orientation", r.uncovered->orientation == Direction::Horizontal ? "h" : "v"}};
  }
}

void to_json(json& j, const SqrtTrickReport& r) {
  j = json{{"n", r.n},
           {"p", r.p},
           {"e_complement", r.e_complement},
           {"e1_complement", r.e1_complement},
           {"rhs", r.rhs},
           {"slack", r.slack},
           {"union_failures", r.union_failures},
           {"verdict", r.holds()}};
}

void to_json(json& j, const EmbeddingAudit& r) {
  j = json{{"n", r.n},
           {"coarse", json::array({r.width, r.height})},
           {"p", r.p},
           {"samples", r.samples},
           {"seed", r.seed},
           {"coarse_open_edges", r.coarse_open_edges},
           {"violations", r.violations},
           {"verdict", r.violations == 0}};
  if (r.first_bad_sample) j["first_bad_sample"] = *r.first_bad_sample;
}

void to_json(json& j, const ProductLawReport& r) {
  j = json{{"n", r.n},
           {"region", descriptor(r.region)},
           {"first", r.first},
           {"second", r.second},
           {"joint", r.joint},
           {"verdict", r.holds()}};
}

void to_json(json& j, const IndependenceReport& r) {
  j = json{{"n", r.n},
           {"p", r.p},
           {"samples", r.samples},
           {"seed", r.seed},
           {"first", r.first},
           {"second", r.second},
           {"joint", r.joint},
           {"correlation", r.correlation},
           {"correlation_ci", r.correlation_ci},
           {"verdict", r.holds()}};
}

void to_json(json& j, const DoublingReport& r) {
  j = json{{"n", r.n},
           {"K", r.levels},
           {"p", r.p},
           {"per_level", estimates(r.per_level)},
           {"all", r.all},
           {"union_bound", r.union_bound},
           {"slack", r.slack},
           {"intersection_failures", r.intersection_failures},
           {"verdict", r.holds()}};
}

json witness_json(const Configuration& config, const Region& box, const PathWitness& w, Direction direction) {
  return json{{"config", config.to_string()},
              {"box", descriptor(box)},
              {"direction", direction == Direction::Horizontal ? "h" : "v"},
              {"witness", w}};
}

}  // namespace perclab
