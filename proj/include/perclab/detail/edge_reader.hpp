#pragma once

#include <variant>

#include "perclab/config.hpp"

namespace perclab::detail {

/// Fast geometric edge lookup into a configuration. Box-shaped regions and
/// tori use index arithmetic; annuli go through their lookup table.
class EdgeReader {
 public:
  explicit EdgeReader(const Configuration& c) : config_(&c) {
    const Region& r = c.region();
    if (const auto* rect = std::get_if<Rect>(&r)) {
      set_box(rect->x0(), rect->y0(), rect->width(), rect->height());
    } else if (const auto* d = std::get_if<DualRect>(&r)) {
      set_box(d->i0(), d->j0(), d->width(), d->height());
    } else if (const auto* t = std::get_if<Torus>(&r)) {
      kind_ = Kind::Torus;
      n_ = t->n();
    } else {
      kind_ = Kind::Generic;
    }
  }

  bool horizontal(int x, int y) const {
    switch (kind_) {
      case Kind::Box: {
        const int dx = x - x0_;
        const int dy = y - y0_;
        if (dx < 0 || dx >= w_ || dy < 0 || dy > h_) return false;
        return config_->open(static_cast<std::size_t>(dy) * w_ + dx);
      }
      case Kind::Torus: {
        const auto n = static_cast<std::size_t>(n_);
        return config_->open(static_cast<std::size_t>(wrap(y)) * n + wrap(x));
      }
      default:
        return config_->is_open(Edge{Orientation::Horizontal, {x, y}});
    }
  }

  bool vertical(int x, int y) const {
    switch (kind_) {
      case Kind::Box: {
        const int dx = x - x0_;
        const int dy = y - y0_;
        if (dx < 0 || dx > w_ || dy < 0 || dy >= h_) return false;
        return config_->open(horizontal_count_ + static_cast<std::size_t>(dx) * h_ + dy);
      }
      case Kind::Torus: {
        const auto n = static_cast<std::size_t>(n_);
        return config_->open(n * n + static_cast<std::size_t>(wrap(x)) * n + wrap(y));
      }
      default:
        return config_->is_open(Edge{Orientation::Vertical, {x, y}});
    }
  }

  bool operator()(const Edge& e) const {
    return e.orientation == Orientation::Horizontal ? horizontal(e.anchor.x, e.anchor.y)
                                                    : vertical(e.anchor.x, e.anchor.y);
  }

 private:
  enum class Kind { Box, Torus, Generic };

  void set_box(int x0, int y0, int w, int h) {
    kind_ = Kind::Box;
    x0_ = x0;
    y0_ = y0;
    w_ = w;
    h_ = h;
    horizontal_count_ = static_cast<std::size_t>(w) * (h + 1);
  }
  std::size_t wrap(int c) const { return static_cast<std::size_t>(((c % n_) + n_) % n_); }

  const Configuration* config_;
  Kind kind_ = Kind::Generic;
  int x0_ = 0, y0_ = 0, w_ = 0, h_ = 0, n_ = 0;
  std::size_t horizontal_count_ = 0;
};

}  // namespace perclab::detail
