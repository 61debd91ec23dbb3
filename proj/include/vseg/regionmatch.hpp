#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "vseg/segmentation.hpp"

namespace vseg {

struct MatchEdge {
  std::uint32_t from = 0;  // region label in the previous segmentation
  std::uint32_t to = 0;    // region label in the current independent segmentation
  double weight = 0;
};

// Bidirectional best matches. best_fwd maps a current region to its
// lowest-weight previous region; best_bwd the reverse direction.
struct Matching {
  std::unordered_map<std::uint32_t, std::uint32_t> best_fwd;
  std::unordered_map<std::uint32_t, std::uint32_t> best_bwd;
};

// Pixel count of the intersection after translating region b so that the
// centroids coincide (translation rounded to integer pixels).
long aligned_overlap(const Segmentation& seg_a, std::uint32_t label_a,
                     const Segmentation& seg_b, std::uint32_t label_b);

// (|ri|+|rj|) * d(ci,cj) / overlap + mean-color distance. overlap must be > 0.
double match_weight(const Region& ri, const Region& rj, long overlap);

// All cross pairs with centroid distance <= radius and positive aligned
// overlap. Candidates come from grid binning of centroids by radius.
std::vector<MatchEdge> build_match_graph(const Segmentation& prev, const Segmentation& cur,
                                         double radius);

// Per-side argmin over incident edges, ties broken by smaller partner label.
Matching compute_best_matches(const std::vector<MatchEdge>& edges);

}  // namespace vseg
