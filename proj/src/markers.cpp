#include "vseg/markers.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace vseg {

namespace {

// Pixel indices of a region, scanned from its bbox.
std::vector<int> region_pixels(const Segmentation& seg, const Region& r) {
  std::vector<int> px;
  px.reserve(static_cast<std::size_t>(r.size));
  for (int y = r.y0; y <= r.y1; ++y)
    for (int x = r.x0; x <= r.x1; ++x)
      if (seg.label_at(x, y) == r.label) px.push_back(y * seg.width + x);
  return px;
}

}  // namespace

MarkerMap generate_markers(const Matching& m, const Segmentation& prev,
                           const Segmentation& cur_ind, LabelAllocator& alloc, int theta_new,
                           std::unordered_map<std::uint32_t, MarkerCase>* stats) {
  MarkerMap markers;
  markers.width = cur_ind.width;
  markers.height = cur_ind.height;
  markers.seed.assign(cur_ind.labels.size(), -1);

  // M(s') = previous regions whose best match is s', in prev table order.
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> mapped_to;
  for (const Region& s : prev.regions) {
    auto it = m.best_bwd.find(s.label);
    if (it != m.best_bwd.end()) mapped_to[it->second].push_back(s.label);
  }

  for (const Region& sp : cur_ind.regions) {
    auto mit = mapped_to.find(sp.label);
    const std::vector<std::uint32_t>* matched = mit == mapped_to.end() ? nullptr : &mit->second;
    auto fit = m.best_fwd.find(sp.label);

    MarkerCase which;
    if (matched && matched->size() == 1 && fit != m.best_fwd.end() &&
        fit->second == matched->front()) {
      which = MarkerCase::kUniqueMatch;
      std::uint32_t l = matched->front();
      for (int p : region_pixels(cur_ind, sp)) markers.seed[static_cast<std::size_t>(p)] = l;
    } else if (matched && matched->size() >= 2) {
      which = MarkerCase::kMergedMatch;
      // anchor: centroid of the union of the matched regions
      double ux = 0, uy = 0;
      long total = 0;
      for (std::uint32_t l : *matched) {
        const Region* s = prev.find(l);
        ux += s->cx * s->size;
        uy += s->cy * s->size;
        total += s->size;
      }
      ux /= static_cast<double>(total);
      uy /= static_cast<double>(total);
      const long tx = std::lround(sp.cx - ux);
      const long ty = std::lround(sp.cy - uy);
      for (std::uint32_t l : *matched) {
        const Region* s = prev.find(l);
        for (int p : region_pixels(prev, *s)) {
          long qx = p % prev.width + tx;
          long qy = p / prev.width + ty;
          if (qx < 0 || qy < 0 || qx >= cur_ind.width || qy >= cur_ind.height) continue;
          int q = static_cast<int>(qy) * cur_ind.width + static_cast<int>(qx);
          if (cur_ind.labels[static_cast<std::size_t>(q)] == sp.label)
            markers.seed[static_cast<std::size_t>(q)] = l;
        }
      }
    } else if (!matched && fit == m.best_fwd.end()) {
      which = MarkerCase::kUnmatched;
      std::uint32_t l = alloc.fresh();
      for (int p : region_pixels(cur_ind, sp)) markers.seed[static_cast<std::size_t>(p)] = l;
    } else {
      which = MarkerCase::kSubregion;
      std::uint32_t l = (sp.size < theta_new || fit == m.best_fwd.end()) ? alloc.fresh()
                                                                         : fit->second;
      for (int p : region_pixels(cur_ind, sp)) markers.seed[static_cast<std::size_t>(p)] = l;
    }
    if (stats) (*stats)[sp.label] = which;
  }
  return markers;
}

SafetyReport safety_check(const MarkerMap& markers, const Segmentation& cur_ind,
                          double tau_safe) {
  SafetyReport report;
  long total_seeded = 0, total_conflicts = 0;
  for (const Region& sp : cur_ind.regions) {
    std::map<std::int64_t, int> counts;
    for (int y = sp.y0; y <= sp.y1; ++y) {
      for (int x = sp.x0; x <= sp.x1; ++x) {
        if (cur_ind.label_at(x, y) != sp.label) continue;
        std::int64_t s = markers.at(x, y);
        if (s >= 0) ++counts[s];
      }
    }
    RegionDominance d;
    d.region = sp.label;
    for (auto& [label, n] : counts) {
      d.seeded += n;
      if (d.dominant < 0 || n > counts[d.dominant]) d.dominant = label;  // map order ties low
    }
    d.conflicts = d.seeded - (d.dominant >= 0 ? counts[d.dominant] : 0);
    d.flagged = d.seeded == 0 ||
                static_cast<double>(d.seeded - d.conflicts) / d.seeded < 1.0 - tau_safe;
    total_seeded += d.seeded;
    total_conflicts += d.conflicts;
    report.regions.push_back(d);
  }
  report.disagreement =
      total_seeded == 0 ? 1.0 : static_cast<double>(total_conflicts) / total_seeded;
  report.pass = total_seeded > 0 && report.disagreement <= tau_safe;
  return report;
}

MarkerMap erode_correct(const MarkerMap& markers, const Segmentation& cur_ind,
                        const SafetyReport& report, int iterations, LabelAllocator& alloc) {
  MarkerMap out = markers;
  const int w = cur_ind.width;

  for (const RegionDominance& d : report.regions) {
    if (!d.flagged) continue;
    const Region* sp = cur_ind.find(d.region);
    std::int64_t label = d.dominant >= 0 ? d.dominant : alloc.fresh();

    // clear existing seeds inside the region
    const int bw = sp->x1 - sp->x0 + 1, bh = sp->y1 - sp->y0 + 1;
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(bw) * bh, 0);
    for (int y = sp->y0; y <= sp->y1; ++y) {
      for (int x = sp->x0; x <= sp->x1; ++x) {
        if (cur_ind.label_at(x, y) != sp->label) continue;
        out.seed[static_cast<std::size_t>(y) * w + x] = -1;
        mask[static_cast<std::size_t>(y - sp->y0) * bw + (x - sp->x0)] = 1;
      }
    }

    // erode with a 3x3 cross; outside the bbox counts as background
    std::vector<std::uint8_t> next(mask.size());
    for (int it = 0; it < iterations; ++it) {
      for (int y = 0; y < bh; ++y) {
        for (int x = 0; x < bw; ++x) {
          auto on = [&](int xx, int yy) {
            return xx >= 0 && yy >= 0 && xx < bw && yy < bh &&
                   mask[static_cast<std::size_t>(yy) * bw + xx];
          };
          next[static_cast<std::size_t>(y) * bw + x] =
              on(x, y) && on(x - 1, y) && on(x + 1, y) && on(x, y - 1) && on(x, y + 1);
        }
      }
      mask.swap(next);
    }

    bool any = false;
    for (int y = 0; y < bh; ++y) {
      for (int x = 0; x < bw; ++x) {
        if (!mask[static_cast<std::size_t>(y) * bw + x]) continue;
        out.seed[static_cast<std::size_t>(y + sp->y0) * w + (x + sp->x0)] = label;
        any = true;
      }
    }
    if (!any) {
      // erosion emptied the region: keep one seed at the pixel nearest the centroid
      double best = 1e18;
      int best_p = -1;
      for (int y = sp->y0; y <= sp->y1; ++y) {
        for (int x = sp->x0; x <= sp->x1; ++x) {
          if (cur_ind.label_at(x, y) != sp->label) continue;
          double dist = (x - sp->cx) * (x - sp->cx) + (y - sp->cy) * (y - sp->cy);
          if (dist < best) {
            best = dist;
            best_p = y * w + x;
          }
        }
      }
      if (best_p >= 0) out.seed[static_cast<std::size_t>(best_p)] = label;
    }
  }
  return out;
}

}  // namespace vseg
