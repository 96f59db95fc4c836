#include "perclab/event.hpp"

#include <stdexcept>

namespace perclab {

Event h_event(const Rect& r) {
  return {"H(" + descriptor(r) + ")", [r](const Configuration& c) { return has_h_crossing(c, r); }};
}

Event v_event(const Rect& r) {
  return {"V(" + descriptor(r) + ")", [r](const Configuration& c) { return has_v_crossing(c, r); }};
}

Event v_event(const DualRect& r) {
  return {"V(" + descriptor(r) + ")", [r](const Configuration& c) { return has_v_crossing(c, r); }};
}

Event x_event(const Rect& r, const Rect& s) {
  detect_x(Configuration(r), r, s);  // validates the shapes up front
  return {"X(" + descriptor(r) + ";" + descriptor(s) + ")",
          [r, s](const Configuration& c) { return detect_x(c, r, s); }};
}

Event g_event(const Rect& r, Direction orientation) {
  end_squares(r, orientation);  // validates the shape up front
  const char* tag = orientation == Direction::Horizontal ? "G_h(" : "G_v(";
  return {tag + descriptor(r) + ")", [r, orientation](const Configuration& c) { return detect_g(c, r, orientation); }};
}

Event circuit_event(const Annulus& a) {
  return {"circuit(" + descriptor(a) + ")", [a](const Configuration& c) { return detect_circuit(c, a); }};
}

Event always_event() {
  return {"true", [](const Configuration&) { return true; }};
}

Event both(const Event& a, const Event& b) {
  return {a.name + "&" + b.name, [a, b](const Configuration& c) { return a.test(c) && b.test(c); }};
}

Event complement(const Event& a) {
  return {"not " + a.name, [a](const Configuration& c) { return !a.test(c); }};
}

Event event_for(const std::string& kind, const Region& region) {
  if (kind == "circuit") {
    const auto* a = std::get_if<Annulus>(&region);
    if (!a) throw std::invalid_argument("circuit needs an annulus region");
    return circuit_event(*a);
  }
  if (kind == "true") return always_event();
  const auto* r = std::get_if<Rect>(&region);
  if (!r) throw std::invalid_argument("event " + kind + " needs a rect region");
  if (kind == "H") return h_event(*r);
  if (kind == "V") return v_event(*r);
  if (kind == "G") {
    return g_event(*r, r->width() >= r->height() ? Direction::Horizontal : Direction::Vertical);
  }
  if (kind == "X") {
    if (r->height() % 2 != 0) throw std::invalid_argument("X needs an m by 2n rect");
    const int n = r->height() / 2;
    return x_event(*r, Rect{r->x0(), r->y0(), r->x0() + n, r->y0() + n});
  }
  throw std::invalid_argument("unknown event: " + kind);
}

}  // namespace perclab
