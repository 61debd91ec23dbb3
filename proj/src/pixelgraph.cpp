#include "vseg/pixelgraph.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace vseg {

namespace {

std::atomic<std::uint64_t> g_sort_invocations{0};

inline float rgb_distance(const Rgb& a, const Rgb& b) {
  float dr = a[0] - b[0], dg = a[1] - b[1], db = a[2] - b[2];
  return std::sqrt(dr * dr + dg * dg + db * db);
}

// Non-negative floats compare like their bit patterns, so a single u64 key
// (weight bits, construction index) gives the exact stable order with a
// plain sort.
inline std::uint64_t sort_key(float weight, std::uint32_t index) {
  return (static_cast<std::uint64_t>(std::bit_cast<std::uint32_t>(weight)) << 32) | index;
}

SortedPixelGraph sort_edges(int width, int height, const std::vector<PixelEdge>& constructed) {
  std::vector<std::uint64_t> keys(constructed.size());
  for (std::size_t i = 0; i < constructed.size(); ++i)
    keys[i] = sort_key(constructed[i].weight, static_cast<std::uint32_t>(i));
  std::sort(keys.begin(), keys.end());
  g_sort_invocations.fetch_add(1, std::memory_order_relaxed);

  SortedPixelGraph g;
  g.width = width;
  g.height = height;
  g.edges.resize(constructed.size());
  g.order.resize(constructed.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    std::uint32_t idx = static_cast<std::uint32_t>(keys[i] & 0xffffffffu);
    g.edges[i] = constructed[idx];
    g.order[i] = idx;
  }
  return g;
}

}  // namespace

std::int64_t expected_edge_count(int width, int height) {
  return 4ll * width * height - 3ll * (width + height) + 2;
}

std::uint64_t sort_invocations() { return g_sort_invocations.load(std::memory_order_relaxed); }

SortedPixelGraph build_graph(const Frame& frame) {
  const int w = frame.width, h = frame.height;
  if (w < 2 || h < 2) throw std::invalid_argument("build_graph: frame smaller than 2x2");

  std::vector<PixelEdge> edges;
  edges.reserve(static_cast<std::size_t>(expected_edge_count(w, h)));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::int32_t p = y * w + x;
      const Rgb& c = frame.pixels[static_cast<std::size_t>(p)];
      if (x + 1 < w)  // E
        edges.push_back({p, p + 1, rgb_distance(c, frame.at(x + 1, y))});
      if (y + 1 < h)  // S
        edges.push_back({p, p + w, rgb_distance(c, frame.at(x, y + 1))});
      if (x + 1 < w && y + 1 < h)  // SE
        edges.push_back({p, p + w + 1, rgb_distance(c, frame.at(x + 1, y + 1))});
      if (x > 0 && y + 1 < h)  // SW
        edges.push_back({p, p + w - 1, rgb_distance(c, frame.at(x - 1, y + 1))});
    }
  }
  return sort_edges(w, h, edges);
}

SortedPixelGraph add_semantic_contour_bonus(const SortedPixelGraph& g, const SemanticMap& sem,
                                            float c_sem) {
  if (sem.width != g.width || sem.height != g.height)
    throw std::invalid_argument("add_semantic_contour_bonus: dimension mismatch");
  if (c_sem == 0.0f) return g;

  // Recover construction order, bump contour edges, re-sort.
  std::vector<PixelEdge> constructed(g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    PixelEdge e = g.edges[i];
    if (sem.classes[static_cast<std::size_t>(e.a)] != sem.classes[static_cast<std::size_t>(e.b)])
      e.weight += c_sem;
    constructed[g.order[i]] = e;
  }
  return sort_edges(g.width, g.height, constructed);
}

}  // namespace vseg
