#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "vseg/regionmatch.hpp"
#include "vseg/segmentation.hpp"

namespace vseg {

// Per-pixel optional seed labels. -1 means unseeded.
struct MarkerMap {
  int width = 0;
  int height = 0;
  std::vector<std::int64_t> seed;

  std::int64_t at(int x, int y) const {
    return seed[static_cast<std::size_t>(y) * width + x];
  }
};

// Stream-global monotone label source; never re-issues a label.
struct LabelAllocator {
  std::uint32_t next_label = 1;

  std::uint32_t fresh() { return next_label++; }
  void reserve_through(std::uint32_t bound) {
    if (bound > next_label) next_label = bound;
  }
};

enum class MarkerCase : std::uint8_t {
  kUniqueMatch = 1,   // one mutual match: propagate its label
  kMergedMatch = 2,   // several previous regions map here: translate their seeds
  kUnmatched = 3,     // no incident edge: fresh label
  kSubregion = 4,     // one-way match: fresh if small, else propagate
};

// Seeds the current independent segmentation from the matching. `stats`,
// when given, records which case each region fell in.
MarkerMap generate_markers(const Matching& m, const Segmentation& prev,
                           const Segmentation& cur_ind, LabelAllocator& alloc, int theta_new,
                           std::unordered_map<std::uint32_t, MarkerCase>* stats = nullptr);

struct RegionDominance {
  std::uint32_t region = 0;      // region label in cur_ind
  std::int64_t dominant = -1;    // most frequent seed label, -1 if unseeded
  int seeded = 0;
  int conflicts = 0;             // seeded pixels disagreeing with dominant
  bool flagged = false;          // local dominance below 1 - tau_safe
};

struct SafetyReport {
  bool pass = false;
  double disagreement = 0;  // conflicting / total seeded pixels
  std::vector<RegionDominance> regions;
};

// Global disagreement <= tau_safe passes; zero seeded pixels fails.
SafetyReport safety_check(const MarkerMap& markers, const Segmentation& cur_ind,
                          double tau_safe);

// Flagged regions get their seeds replaced by the eroded region mask
// (3x3 cross, `iterations` rounds) carrying the dominant label, or a fresh
// label when no seed existed. Empty erosion falls back to the pixel of the
// region nearest its centroid.
MarkerMap erode_correct(const MarkerMap& markers, const Segmentation& cur_ind,
                        const SafetyReport& report, int iterations, LabelAllocator& alloc);

}  // namespace vseg
