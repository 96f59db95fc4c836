#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "perclab/oracle.hpp"
#include "perclab/renorm.hpp"
#include "perclab/report.hpp"
#include "perclab/rsw.hpp"

namespace py = pybind11;
using namespace perclab;

namespace {

Rect rect_of(const std::string& text) {
  const Region r = parse_region(text);
  if (const auto* rect = std::get_if<Rect>(&r)) return *rect;
  throw std::invalid_argument("expected a rect descriptor, got " + text);
}

}  // namespace

PYBIND11_MODULE(_perclab, m) {
  m.doc() = "Percolation laboratory core";
  m.attr("__version__") = PERCLAB_VERSION;

  m.def("normalize_region", [](const std::string& text) { return descriptor(parse_region(text)); });
  m.def("edge_count", [](const std::string& text) { return edge_count(parse_region(text)); });

  m.def("sample", [](const std::string& region, double p, std::uint64_t seed, std::uint64_t index) {
    return sample(parse_region(region), p, seed, index).to_string();
  });
  m.def("count_open", [](const std::string& config) { return Configuration::parse(config).count_open(); });
  m.def("has_h_crossing", [](const std::string& config, const std::string& rect) {
    return has_h_crossing(Configuration::parse(config), rect_of(rect));
  });
  m.def("has_v_crossing", [](const std::string& config, const std::string& rect) {
    return has_v_crossing(Configuration::parse(config), rect_of(rect));
  });

  m.def(
      "estimate_json",
      [](const std::string& region, const std::string& event, double p, std::uint64_t samples, std::uint64_t seed,
         unsigned workers) {
        const Region r = parse_region(region);
        py::gil_scoped_release release;
        return nlohmann::json(mc_probability(r, event_for(event, r), p, samples, seed, workers)).dump();
      },
      py::arg("region"), py::arg("event"), py::arg("p"), py::arg("samples"), py::arg("seed"), py::arg("workers") = 1);

  m.def(
      "exact_json",
      [](const std::string& region, const std::string& event, const std::string& p, std::size_t cap) {
        const Region r = parse_region(region);
        const ExactResult res = exact_count(r, event_for(event, r), cap);
        nlohmann::json j = res;
        j["p"] = p;
        j["value"] = to_string(res.probability(parse_rational(p)));
        return j.dump();
      },
      py::arg("region"), py::arg("event"), py::arg("p") = "1/2", py::arg("cap") = kDefaultEdgeCap);

  m.def("fixed_point", [](const std::string& map, double tol) { return fixed_point(IterationMap::parse(map), tol); },
        py::arg("map"), py::arg("tolerance") = 1e-6);
  m.def("one_dep_series", &one_dep_series);
  m.def("series_threshold", &series_threshold, py::arg("tolerance") = 1e-6);
  m.def("covering_check", [](int n) { return covering_check(n).covered(); });
  m.def("chain_bound_exponents", [](int rho) {
    std::vector<std::pair<int, int>> out;
    for (const auto& b : chain_bounds(rho)) out.emplace_back(b.multiple, b.exponent);
    return out;
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = 0;
    {
      py::gil_scoped_release release;
      code = cli::run(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  });

  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_ValueError);
}
