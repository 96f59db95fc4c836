#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "perclab/oracle.hpp"
#include "perclab/renorm.hpp"
#include "perclab/report.hpp"
#include "perclab/rsw.hpp"

#ifndef PERCLAB_VERSION
#define PERCLAB_VERSION "unknown"
#endif

namespace perclab::cli {

using nlohmann::json;

namespace {

// Raised for bad input that only shows up after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const std::string t = trim(item);
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (t.empty() || used != t.size()) throw UsageError("bad number in list: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

struct Common {
  std::optional<std::uint64_t> seed;
  unsigned workers = 0;
  std::string out;
  std::string format;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Seed (default: $PERC_SEED, else 0)");
  sub->add_option("--workers", c.workers, "Worker threads; 0 = available parallelism");
  sub->add_option("--out", c.out, "Output file (default: stdout)");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

std::uint64_t resolve_seed(const Common& c) {
  if (c.seed) return *c.seed;
  const char* env = std::getenv("PERC_SEED");
  if (!env || !*env) return 0;
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(env, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || env[used] != '\0') throw UsageError(std::string("PERC_SEED is not an unsigned integer: ") + env);
  return v;
}

Region region_arg(const std::string& text) {
  try {
    return parse_region(text);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

std::string csv_body(const std::vector<Estimate>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : rows) out += csv_row(r) + "\n";
  return out;
}

std::string json_body(const json& j) { return j.dump(2) + "\n"; }

struct Outcome {
  std::string body;
  bool pass = true;
};

// Exact-oracle suites, each entry skipped when its region exceeds the cap.
Outcome run_verify(std::size_t cap, const std::string& region_text, const std::string& event_kind,
                   const std::string& p_text, unsigned workers) {
  json report;
  json skipped = json::array();
  bool pass = true;
  const auto fits = [&](const std::string& suite, const Region& r) {
    const std::size_t e = edge_count(r);
    if (e <= cap) return true;
    skipped.push_back(json{{"suite", suite}, {"region", descriptor(r)}, {"E", e}, {"cap", cap}});
    return false;
  };

  if (!region_text.empty()) {
    const Region region = region_arg(region_text);
    const Event event = event_for(event_kind, region);
    const std::size_t e = edge_count(region);
    if (e > cap) throw CapExceeded(e, cap);
    const Rational p = parse_rational(p_text);
    const ExactResult r = exact_count(region, event, cap, workers);
    report["exact"] = r;
    report["exact"]["p"] = to_string(p);
    report["exact"]["value"] = to_string(r.probability(p));
    report["exact"]["verdict"] = true;
    report["cap"] = cap;
    report["verdict"] = true;
    return {json_body(report), true};
  }

  json duality = json::array();
  for (const Rect& r : {Rect(0, 0, 2, 1), Rect(0, 0, 3, 2)}) {
    if (!fits("duality", r)) continue;
    const auto d = verify_duality_exhaustive(r, cap);
    pass = pass && d.ok();
    duality.push_back(d);
  }
  report["duality"] = duality;

  json self = json::array();
  for (int k = 1; k <= 3; ++k) {
    for (int l = 2; l <= 3; ++l) {
      const Rect h(0, 0, k, l - 1);
      const Region v = k >= 2 ? Region(Rect(0, 0, k - 1, l)) : Region(DualRect(0, 0, 0, l));
      if (!fits("self_duality", h) || !fits("self_duality", v)) continue;
      for (const char* p : {"1/2", "1/3"}) {
        const auto s = verify_self_duality(k, l, parse_rational(p), cap);
        pass = pass && s.holds();
        self.push_back(s);
      }
    }
  }
  report["self_duality"] = self;

  json harris = json::array();
  const std::vector<std::tuple<Rect, Event, Event>> pairs{
      {Rect(0, 0, 1, 1), h_event(Rect(0, 0, 1, 1)), v_event(Rect(0, 0, 1, 1))},
      {Rect(0, 0, 2, 1), h_event(Rect(0, 0, 2, 1)), v_event(Rect(0, 0, 2, 1))},
      {Rect(0, 0, 1, 2), h_event(Rect(0, 0, 1, 2)), v_event(Rect(0, 0, 1, 2))},
      {Rect(0, 0, 2, 2), h_event(Rect(0, 0, 2, 2)), v_event(Rect(0, 0, 2, 2))},
      {Rect(0, 0, 2, 2), h_event(Rect(0, 0, 2, 2)), v_event(Rect(0, 0, 1, 2))},
      {Rect(0, 0, 2, 2), h_event(Rect(0, 0, 2, 1)), h_event(Rect(0, 1, 2, 2))},
  };
  for (const auto& [region, a, b] : pairs) {
    if (!fits("harris", region)) continue;
    for (const char* p : {"1/4", "1/2", "3/4"}) {
      const auto h = verify_harris(region, a, b, parse_rational(p), cap);
      pass = pass && h.holds;
      harris.push_back(h);
    }
  }
  report["harris"] = harris;

  json bounds = json::array();
  for (const auto [m, n] : {std::pair{1, 1}, std::pair{2, 1}}) {
    if (!fits("x_bound", Rect(0, 0, m, 2 * n))) continue;
    for (const char* p : {"1/4", "1/2", "3/4"}) {
      const auto x = verify_x_bound(m, n, parse_rational(p), cap);
      pass = pass && x.holds;
      bounds.push_back(x);
    }
  }
  report["x_bound"] = bounds;

  report["skipped"] = skipped;
  report["cap"] = cap;
  report["verdict"] = pass;
  return {json_body(report), pass};
}

}  // namespace

std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (!path) return args;
  std::ifstream in(*path);
  if (!in) throw UsageError("cannot read config file " + *path);

  const auto present = [&](const std::string& key) {
    for (const auto& a : args) {
      if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
    }
    return false;
  };
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      ++i;
      continue;
    }
    if (args[i].rfind("--config=", 0) == 0) continue;
    out.push_back(args[i]);
  }
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(*path + ":" + std::to_string(number) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    key.erase(0, key.find_first_not_of('-'));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config") throw UsageError(*path + ":" + std::to_string(number) + ": bad key");
    if (!present(key)) out.push_back("--" + key + "=" + value);
  }
  return out;
}

std::string header_line(const std::vector<std::string>& args, unsigned long long seed) {
  std::string joined;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--workers") {
      ++i;
      continue;
    }
    if (args[i].rfind("--workers=", 0) == 0) continue;
    if (!joined.empty()) joined += ' ';
    joined += args[i];
  }
  return std::string("# perclab ") + PERCLAB_VERSION + " argv=\"" + joined + "\" seed=" + std::to_string(seed);
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Percolation laboratory: crossings, exact oracles, Monte Carlo, renormalization", "perclab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PERCLAB_VERSION);

  Common common;
  std::string region_text, event_kind = "H", p_text = "1/2", grid_text, map_name = "quintic", check = "all";
  std::string boxes_text = "8,16,32,64", p0_text = "0.99,0.995,0.999";
  std::size_t cap = kDefaultEdgeCap;
  double p = 0.5, from = 0.0, to = 1.0, tolerance = 0.01, target = 0.5, epsilon = 0.25, iterate_from = -1.0;
  double root_tolerance = 1e-6;
  std::uint64_t samples = 10000, initial_samples = 1000, max_samples = 200000, budget = 10000000;
  int steps = 11, n = 1, block = 5, rho = 3, k = 0, l = 0, width = 8, height = 8, levels = 3, doubling_n = 8;
  bool uncoupled = false, no_window = false;

  auto* verify = app.add_subcommand("verify", "Exhaustive exact checks (duality, self-duality, Harris, X bound)");
  verify->add_option("--max-edges", cap, "Edge cap for enumeration");
  verify->add_option("--region", region_text, "Exact probability of one event on this region instead");
  verify->add_option("--event", event_kind, "H, V, G, X, circuit or true");
  verify->add_option("--p", p_text, "Rational density, e.g. 1/3");

  auto* cross = app.add_subcommand("cross", "Monte Carlo estimate of one crossing event");
  cross->add_option("--region", region_text)->required();
  cross->add_option("--event", event_kind, "H, V, G, X, circuit or true");
  cross->add_option("--p", p);
  cross->add_option("--samples", samples);

  auto* sweep_cmd = app.add_subcommand("sweep", "Estimates over a grid of densities");
  sweep_cmd->add_option("--region", region_text)->required();
  sweep_cmd->add_option("--event", event_kind);
  sweep_cmd->add_option("--grid", grid_text, "Comma-separated densities (overrides --from/--to/--steps)");
  sweep_cmd->add_option("--from", from);
  sweep_cmd->add_option("--to", to);
  sweep_cmd->add_option("--steps", steps);
  sweep_cmd->add_option("--samples", samples);
  sweep_cmd->add_flag("--uncoupled", uncoupled, "Independent samples per grid point");

  auto* threshold = app.add_subcommand("threshold", "Locate the density where an event reaches a level");
  threshold->add_option("--region", region_text)->required();
  threshold->add_option("--event", event_kind);
  threshold->add_option("--target", target);
  threshold->add_option("--tolerance", tolerance);
  threshold->add_option("--epsilon", epsilon, "Window levels epsilon and 1 - epsilon");
  threshold->add_flag("--no-window", no_window);
  threshold->add_option("--initial-samples", initial_samples);
  threshold->add_option("--max-samples", max_samples, "Per probe");
  threshold->add_option("--budget", budget, "Region-samples per level search");

  auto* rsw = app.add_subcommand("rsw", "Long-rectangle crossings against their provable lower bounds");
  rsw->add_option("--n", n);
  rsw->add_option("--rho", rho);
  rsw->add_option("--p", p);
  rsw->add_option("--samples", samples);

  auto* annulus = app.add_subcommand("annulus", "Circuit in the annulus of radii n, 3n versus band product");
  annulus->add_option("--n", n);
  annulus->add_option("--p", p);
  annulus->add_option("--samples", samples);

  auto* torus = app.add_subcommand("torus", "Covering of T_16n and the square-root trick");
  torus->add_option("--n", n);
  torus->add_option("--p", p);
  torus->add_option("--samples", samples);
  torus->add_option("--k", k, "Also estimate the symmetric event for k by l translates");
  torus->add_option("--l", l);

  auto* renorm = app.add_subcommand("renorm", "Series bound, coarse-graining audits, doubling rectangles");
  renorm->add_option("--check", check)->check(
      CLI::IsMember({"all", "series", "embedding", "product", "independence", "doubling"}));
  renorm->add_option("--p0", p0_text, "Comma-separated densities for the series");
  renorm->add_option("--block", block, "Block parameter n of the coarse lattice");
  renorm->add_option("--width", width);
  renorm->add_option("--height", height);
  renorm->add_option("--p", p);
  renorm->add_option("--samples", samples);
  renorm->add_option("--levels", levels);
  renorm->add_option("--doubling-n", doubling_n);

  auto* fixedpoint = app.add_subcommand("fixedpoint", "Largest fixed point of a renormalization map");
  fixedpoint->add_option("--map", map_name)->check(CLI::IsMember({"quintic", "quartic"}));
  fixedpoint->add_option("--tolerance", root_tolerance);
  fixedpoint->add_option("--iterate", iterate_from, "Also iterate the map from this x0");
  fixedpoint->add_option("--steps", steps);

  auto* theta = app.add_subcommand("theta", "Origin cluster reaching the boundary of [-L, L]^2");
  theta->add_option("--box", boxes_text, "Comma-separated L values");
  theta->add_option("--p", p);
  theta->add_option("--samples", samples);

  for (auto* sub : app.get_subcommands({})) add_common(sub, common);
  // --config is consumed by merge_config; declared so it shows in --help.
  std::string config_path;
  for (auto* sub : app.get_subcommands({})) sub->add_option("--config", config_path, "key=value file; flags win");

  std::vector<std::string> args;
  try {
    args = merge_config(raw_args);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const unsigned workers = common.workers;
  try {
    const std::uint64_t seed = resolve_seed(common);
    Outcome result;
    std::string format = common.format;

    if (verify->parsed()) {
      result = run_verify(cap, region_text, event_kind, p_text, workers);
    } else if (cross->parsed()) {
      const Region region = region_arg(region_text);
      const Event event = event_for(event_kind, region);
      if (samples < 1) throw UsageError("--samples must be >= 1");
      const Estimate e = mc_probability(region, event, p, samples, seed, workers);
      result.body = format == "json" ? json_body(e) : csv_body({e});
    } else if (sweep_cmd->parsed()) {
      const Region region = region_arg(region_text);
      const Event event = event_for(event_kind, region);
      std::vector<double> grid;
      if (!grid_text.empty()) {
        grid = parse_list(grid_text);
      } else {
        if (steps < 1) throw UsageError("--steps must be >= 1");
        for (int i = 0; i < steps; ++i) grid.push_back(steps == 1 ? from : from + (to - from) * i / (steps - 1));
      }
      if (!std::is_sorted(grid.begin(), grid.end())) throw UsageError("grid must be sorted");
      const auto rows = sweep(region, event, grid, samples, seed, !uncoupled, workers);
      if (format == "json") {
        json j = json::array();
        for (const auto& r : rows) j.push_back(r);
        result.body = json_body(j);
      } else {
        result.body = csv_body(rows);
      }
    } else if (threshold->parsed()) {
      const Region region = region_arg(region_text);
      ThresholdOptions opt;
      opt.target = target;
      opt.tolerance = tolerance;
      opt.epsilon = epsilon;
      opt.window = !no_window;
      opt.initial_samples = initial_samples;
      opt.max_samples_per_point = max_samples;
      opt.budget = budget;
      opt.seed = seed;
      opt.workers = workers;
      const auto r = find_threshold(region, event_for(event_kind, region), opt);
      result = {json_body(r), r.conclusive()};
    } else if (rsw->parsed()) {
      const auto r = check_chain(n, p, samples, seed, rho, workers);
      result = {json_body(r), r.holds()};
    } else if (annulus->parsed()) {
      const auto r = annulus_product(n, p, samples, seed, workers);
      result = {json_body(r), r.holds()};
    } else if (torus->parsed()) {
      const auto cover = covering_check(n);
      const auto sq = sqrt_trick_check(n, p, samples, seed, workers);
      json j{{"covering", cover}, {"sqrt_trick", sq}};
      if (k > 0 || l > 0) j["event"] = torus_event(Torus(16 * n), k, l, p, samples, seed, workers);
      result = {json_body(j), cover.covered() && sq.holds()};
    } else if (renorm->parsed()) {
      json j;
      bool pass = true;
      const bool all = check == "all";
      if (all || check == "series") {
        json series = json::array();
        for (double p0 : parse_list(p0_text)) {
          json row{{"p0", p0}};
          try {
            row["value"] = one_dep_series(p0);
            row["partial_sum_400"] = one_dep_partial_sum(p0, 400);
          } catch (const std::domain_error& e) {
            row["error"] = e.what();
          }
          series.push_back(row);
        }
        const auto req = crossing_requirement();
        j["series"] = json{{"values", series},
                           {"threshold", series_threshold(1e-9)},
                           {"cited_p0", req.p0},
                           {"required_crossing", req.required}};
      }
      if (all || check == "embedding") {
        const auto a = audit_embedding(block, width, height, p, samples, seed, workers);
        pass = pass && a.violations == 0;
        j["embedding"] = a;
      }
      if (all || check == "product") {
        const auto r = product_law_exact(1);
        pass = pass && r.holds();
        j["product_law"] = r;
      }
      if (all || check == "independence") {
        const auto r = independence_mc(block, p, samples, seed, workers);
        pass = pass && r.holds();
        j["independence"] = r;
      }
      if (all || check == "doubling") {
        const auto r = doubling_construction(doubling_n, p, levels, samples, seed, workers);
        pass = pass && r.holds();
        j["doubling"] = r;
      }
      result = {json_body(j), pass};
    } else if (fixedpoint->parsed()) {
      const IterationMap map = IterationMap::parse(map_name);
      json j{{"map", map.name()}, {"root", fixed_point(map, root_tolerance)}, {"tolerance", root_tolerance}};
      if (iterate_from >= 0.0) {
        const auto seq = iterate(map, iterate_from, steps);
        j["sequence"] = seq;
        j["decay_violations"] = decay_violations(seq);
      }
      result.body = json_body(j);
    } else if (theta->parsed()) {
      std::vector<Estimate> rows;
      json list = json::array();
      for (double b : parse_list(boxes_text)) {
        const int box = static_cast<int>(b);
        if (box != b || box < 1) throw UsageError("--box values must be positive integers");
        const auto s = origin_cluster(box, p, samples, seed, workers);
        list.push_back(s);
        const std::string region = descriptor(Rect(-box, -box, box, box));
        rows.push_back(Estimate::from_counts(region, "origin<->boundary", p, samples, s.boundary_hits, seed));
      }
      result.body = format == "csv" ? csv_body(rows) : json_body(list);
    }

    const std::string text = header_line(args, seed) + "\n" + result.body;
    if (common.out.empty()) {
      out << text;
    } else {
      std::ofstream file(common.out, std::ios::binary);
      if (!file) throw UsageError("cannot write " + common.out);
      file << text;
    }
    return result.pass ? kExitOk : kExitVerdict;
  } catch (const CapExceeded& e) {
    err << "refused: " << e.what() << " (raise --max-edges)\n";
    return kExitUsage;
  } catch (const InvariantViolation& e) {
    err << "invariant violated: " << e.what() << "\n";
    return kExitVerdict;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace perclab::cli
