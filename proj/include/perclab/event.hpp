#pragma once

// Named boolean events on configurations, shared by the exact oracle and the
// Monte Carlo engine. Every test must be safe to call from several threads.

#include <functional>
#include <string>

#include "perclab/config.hpp"
#include "perclab/crossing.hpp"

namespace perclab {

struct Event {
  std::string name;
  std::function<bool(const Configuration&)> test;

  bool operator()(const Configuration& c) const { return test(c); }
};

Event h_event(const Rect& r);
Event v_event(const Rect& r);
/// Top-bottom crossing of a dual rectangle; the configuration lives on it.
Event v_event(const DualRect& r);
Event x_event(const Rect& r, const Rect& s);
Event g_event(const Rect& r, Direction orientation);
Event circuit_event(const Annulus& a);
Event always_event();
Event both(const Event& a, const Event& b);
Event complement(const Event& a);

/// Parses "H", "V", "X", "G", "circuit" against a region descriptor, as used
/// on the command line: H/V/G take a rect, X takes a rect of shape m by 2n,
/// circuit takes an annulus.
Event event_for(const std::string& kind, const Region& region);

}  // namespace perclab
