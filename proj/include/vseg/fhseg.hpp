#pragma once

#include <cstdint>
#include <vector>

#include "vseg/pixelgraph.hpp"
#include "vseg/segmentation.hpp"

namespace vseg {

// Union-find over pixels. Each root tracks component size and the largest
// edge weight merged inside the component (the internal difference).
class RegionForest {
 public:
  explicit RegionForest(int n);

  int find(int x);
  // Merges the components of a and b; returns the new root. Union by size,
  // equal sizes keep the smaller root id.
  int unite(int a, int b);

  int size(int root) const { return size_[root]; }
  float internal(int root) const { return internal_[root]; }
  void set_internal(int root, float w) { internal_[root] = w; }
  int node_count() const { return static_cast<int>(parent_.size()); }
  int region_count() const { return regions_; }

 private:
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> size_;
  std::vector<float> internal_;
  int regions_ = 0;
};

// Greedy merge pass over the sorted edges: for edge (a,b) between distinct
// components X, Y, merge iff w <= min(Int(X) + k/|X|, Int(Y) + k/|Y|).
RegionForest segment_fh(const SortedPixelGraph& g, double k);

// Second ascending pass merging any component smaller than delta into its
// cheapest neighbor.
void remove_small_regions(RegionForest& forest, const SortedPixelGraph& g, int delta);

// Root ids remapped to dense consecutive labels starting at `base`, in
// raster-scan order of first occurrence; region table from `frame`.
Segmentation forest_to_segmentation(RegionForest& forest, const Frame& frame,
                                    std::uint32_t base);

}  // namespace vseg
