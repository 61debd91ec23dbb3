#include "vseg/regionmatch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vseg {

long aligned_overlap(const Segmentation& seg_a, std::uint32_t label_a,
                     const Segmentation& seg_b, std::uint32_t label_b) {
  const Region* ra = seg_a.find(label_a);
  const Region* rb = seg_b.find(label_b);
  if (!ra || !rb) return 0;
  // translate b's pixels so the centroids coincide
  const long tx = std::lround(ra->cx - rb->cx);
  const long ty = std::lround(ra->cy - rb->cy);
  long count = 0;
  for (int y = rb->y0; y <= rb->y1; ++y) {
    for (int x = rb->x0; x <= rb->x1; ++x) {
      if (seg_b.label_at(x, y) != label_b) continue;
      long qx = x + tx, qy = y + ty;
      if (qx < 0 || qy < 0 || qx >= seg_a.width || qy >= seg_a.height) continue;
      if (seg_a.label_at(static_cast<int>(qx), static_cast<int>(qy)) == label_a) ++count;
    }
  }
  return count;
}

double match_weight(const Region& ri, const Region& rj, long overlap) {
  if (overlap <= 0) throw std::invalid_argument("match_weight: overlap must be positive");
  const double d = std::hypot(ri.cx - rj.cx, ri.cy - rj.cy);
  double a = 0;
  for (int c = 0; c < 3; ++c) {
    double dc = ri.mean_color[c] - rj.mean_color[c];
    a += dc * dc;
  }
  return (static_cast<double>(ri.size) + rj.size) * d / static_cast<double>(overlap) +
         std::sqrt(a);
}

std::vector<MatchEdge> build_match_graph(const Segmentation& prev, const Segmentation& cur,
                                         double radius) {
  if (radius <= 0) throw std::invalid_argument("build_match_graph: radius must be positive");
  if (prev.width != cur.width || prev.height != cur.height)
    throw std::invalid_argument("build_match_graph: dimension mismatch");

  // bin prev centroids on a grid of cell size = radius
  const int cols = static_cast<int>(prev.width / radius) + 1;
  const int rows = static_cast<int>(prev.height / radius) + 1;
  std::vector<std::vector<int>> bins(static_cast<std::size_t>(cols) * rows);
  auto bin_of = [&](double x, double y) {
    int bx = std::clamp(static_cast<int>(x / radius), 0, cols - 1);
    int by = std::clamp(static_cast<int>(y / radius), 0, rows - 1);
    return by * cols + bx;
  };
  for (std::size_t i = 0; i < prev.regions.size(); ++i)
    bins[static_cast<std::size_t>(bin_of(prev.regions[i].cx, prev.regions[i].cy))].push_back(
        static_cast<int>(i));

  std::vector<MatchEdge> edges;
  for (const Region& rj : cur.regions) {
    int bx = std::clamp(static_cast<int>(rj.cx / radius), 0, cols - 1);
    int by = std::clamp(static_cast<int>(rj.cy / radius), 0, rows - 1);
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        int nx = bx + dx, ny = by + dy;
        if (nx < 0 || ny < 0 || nx >= cols || ny >= rows) continue;
        for (int pi : bins[static_cast<std::size_t>(ny) * cols + nx]) {
          const Region& ri = prev.regions[static_cast<std::size_t>(pi)];
          if (std::hypot(ri.cx - rj.cx, ri.cy - rj.cy) > radius) continue;
          long overlap = aligned_overlap(prev, ri.label, cur, rj.label);
          if (overlap <= 0) continue;
          edges.push_back({ri.label, rj.label, match_weight(ri, rj, overlap)});
        }
      }
    }
  }
  return edges;
}

Matching compute_best_matches(const std::vector<MatchEdge>& edges) {
  Matching m;
  std::unordered_map<std::uint32_t, double> fwd_w, bwd_w;
  for (const MatchEdge& e : edges) {
    auto fit = m.best_fwd.find(e.to);
    if (fit == m.best_fwd.end() || e.weight < fwd_w[e.to] ||
        (e.weight == fwd_w[e.to] && e.from < fit->second)) {
      m.best_fwd[e.to] = e.from;
      fwd_w[e.to] = e.weight;
    }
    auto bit = m.best_bwd.find(e.from);
    if (bit == m.best_bwd.end() || e.weight < bwd_w[e.from] ||
        (e.weight == bwd_w[e.from] && e.to < bit->second)) {
      m.best_bwd[e.from] = e.to;
      bwd_w[e.from] = e.weight;
    }
  }
  return m;
}

}  // namespace vseg
