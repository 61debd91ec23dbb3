#include "vseg/segmentation.hpp"

#include <utility>

namespace vseg {

Segmentation make_segmentation(std::vector<std::uint32_t> labels, int width, int height,
                               const Frame& frame) {
  Segmentation seg;
  seg.width = width;
  seg.height = height;
  seg.labels = std::move(labels);

  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      std::uint32_t label = seg.labels[static_cast<std::size_t>(y) * width + x];
      auto [it, inserted] = seg.region_index.try_emplace(label, 0);
      if (inserted) {
        it->second = static_cast<int>(seg.regions.size());
        Region r;
        r.label = label;
        r.x0 = r.x1 = x;
        r.y0 = r.y1 = y;
        seg.regions.push_back(r);
      }
      Region& r = seg.regions[static_cast<std::size_t>(it->second)];
      r.size += 1;
      r.cx += x;
      r.cy += y;
      const Rgb& px = frame.at(x, y);
      for (int c = 0; c < 3; ++c) r.mean_color[c] += px[c];
      if (x < r.x0) r.x0 = x;
      if (x > r.x1) r.x1 = x;
      if (y < r.y0) r.y0 = y;
      if (y > r.y1) r.y1 = y;
    }
  }
  for (Region& r : seg.regions) {
    r.cx /= r.size;
    r.cy /= r.size;
    for (int c = 0; c < 3; ++c) r.mean_color[c] /= r.size;
  }
  return seg;
}

}  // namespace vseg
