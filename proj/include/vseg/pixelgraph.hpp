#pragma once

#include <cstdint>
#include <vector>

#include "vseg/frame.hpp"

namespace vseg {

struct PixelEdge {
  std::int32_t a = 0;
  std::int32_t b = 0;
  float weight = 0;  // RGB gradient magnitude, >= 0
};

// 8-connected pixel graph with edges in non-decreasing weight order.
// Ties are broken by construction index (raster scan, E/S/SE/SW neighbor
// order), so the ordering is a deterministic total order.
struct SortedPixelGraph {
  int width = 0;
  int height = 0;
  std::vector<PixelEdge> edges;
  std::vector<std::uint32_t> order;  // order[i] = construction index of edges[i]
};

// 4wh - 3(w+h) + 2 for w,h >= 2.
std::int64_t expected_edge_count(int width, int height);

SortedPixelGraph build_graph(const Frame& frame);

// Adds c_sem to every edge whose endpoints carry different semantic class
// ids, then restores the sorted order (same tie rule).
SortedPixelGraph add_semantic_contour_bonus(const SortedPixelGraph& g, const SemanticMap& sem,
                                            float c_sem);

// Number of edge-sort passes executed so far (process-wide). Lets tests
// assert that relabeling stages reuse the stored order instead of sorting.
std::uint64_t sort_invocations();

}  // namespace vseg
