#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "vseg/frame.hpp"

namespace vseg {

struct Region {
  std::uint32_t label = 0;
  int size = 0;
  double cx = 0, cy = 0;  // mean pixel coordinate
  std::array<double, 3> mean_color{0, 0, 0};
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // inclusive bbox
};

// Per-pixel label map plus a region table keyed by label.
struct Segmentation {
  int width = 0;
  int height = 0;
  std::vector<std::uint32_t> labels;
  std::vector<Region> regions;
  std::unordered_map<std::uint32_t, int> region_index;

  std::uint32_t label_at(int x, int y) const {
    return labels[static_cast<std::size_t>(y) * width + x];
  }
  const Region* find(std::uint32_t label) const {
    auto it = region_index.find(label);
    return it == region_index.end() ? nullptr : &regions[it->second];
  }
};

// Builds the region table (size, centroid, mean color over `frame`, bbox)
// from an arbitrary label map. Regions are listed in order of first
// appearance in raster scan.
Segmentation make_segmentation(std::vector<std::uint32_t> labels, int width, int height,
                               const Frame& frame);

struct FlowEntry {
  std::uint32_t label = 0;
  double dx = 0, dy = 0;  // pixels/frame
  bool valid = false;     // label was propagated from the previous frame
};

struct FlowMap {
  std::vector<FlowEntry> entries;
};

}  // namespace vseg
