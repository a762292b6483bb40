#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "roadmap/geom.hpp"

namespace rmg {

// Uniform bucket grid over points. Queries return indices in insertion
// order, which keeps every consumer deterministic.
class PointIndex {
 public:
  explicit PointIndex(double cell_size) : cell_(cell_size > 0 ? cell_size : 1.0) {}

  uint32_t insert(Point p) {
    const uint32_t id = static_cast<uint32_t>(points_.size());
    points_.push_back(p);
    buckets_[key(p)].push_back(id);
    return id;
  }

  size_t size() const { return points_.size(); }
  Point at(uint32_t id) const { return points_[id]; }

  bool any_within(Point p, double radius) const {
    bool found = false;
    visit_cells(p, radius, [&](uint32_t id) {
      if (!found && distance(points_[id], p) < radius) found = true;
    });
    return found;
  }

  std::vector<uint32_t> within(Point p, double radius) const {
    std::vector<uint32_t> out;
    visit_cells(p, radius, [&](uint32_t id) {
      if (distance(points_[id], p) <= radius) out.push_back(id);
    });
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  int64_t cell_coord(double v) const { return static_cast<int64_t>(std::floor(v / cell_)); }
  uint64_t key(Point p) const {
    const uint64_t cx = static_cast<uint64_t>(cell_coord(p.x)) & 0xffffffffull;
    const uint64_t cy = static_cast<uint64_t>(cell_coord(p.y)) & 0xffffffffull;
    return (cx << 32) | cy;
  }

  template <typename Fn>
  void visit_cells(Point p, double radius, Fn&& fn) const {
    const int64_t x0 = cell_coord(p.x - radius);
    const int64_t x1 = cell_coord(p.x + radius);
    const int64_t y0 = cell_coord(p.y - radius);
    const int64_t y1 = cell_coord(p.y + radius);
    for (int64_t cx = x0; cx <= x1; ++cx) {
      for (int64_t cy = y0; cy <= y1; ++cy) {
        const uint64_t k = ((static_cast<uint64_t>(cx) & 0xffffffffull) << 32) |
                           (static_cast<uint64_t>(cy) & 0xffffffffull);
        const auto it = buckets_.find(k);
        if (it == buckets_.end()) continue;
        for (uint32_t id : it->second) fn(id);
      }
    }
  }

  double cell_;
  std::vector<Point> points_;
  std::unordered_map<uint64_t, std::vector<uint32_t>> buckets_;
};

}  // namespace rmg
