#include "vseg/fhseg.hpp"

#include <stdexcept>

namespace vseg {

RegionForest::RegionForest(int n)
    : parent_(static_cast<std::size_t>(n)),
      size_(static_cast<std::size_t>(n), 1),
      internal_(static_cast<std::size_t>(n), 0.0f),
      regions_(n) {
  for (int i = 0; i < n; ++i) parent_[static_cast<std::size_t>(i)] = i;
}

int RegionForest::find(int x) {
  while (parent_[static_cast<std::size_t>(x)] != x) {
    parent_[static_cast<std::size_t>(x)] =
        parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
    x = parent_[static_cast<std::size_t>(x)];
  }
  return x;
}

int RegionForest::unite(int a, int b) {
  int root = a, child = b;
  if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)] ||
      (size_[static_cast<std::size_t>(a)] == size_[static_cast<std::size_t>(b)] && b < a)) {
    root = b;
    child = a;
  }
  parent_[static_cast<std::size_t>(child)] = root;
  size_[static_cast<std::size_t>(root)] += size_[static_cast<std::size_t>(child)];
  --regions_;
  return root;
}

RegionForest segment_fh(const SortedPixelGraph& g, double k) {
  if (k <= 0) throw std::invalid_argument("segment_fh: k must be positive");
  RegionForest forest(g.width * g.height);
  for (const PixelEdge& e : g.edges) {
    int ra = forest.find(e.a);
    int rb = forest.find(e.b);
    if (ra == rb) continue;
    double thresh_a = forest.internal(ra) + k / forest.size(ra);
    double thresh_b = forest.internal(rb) + k / forest.size(rb);
    if (e.weight <= thresh_a && e.weight <= thresh_b) {
      int root = forest.unite(ra, rb);
      forest.set_internal(root, e.weight);  // edges ascend, so this is the max
    }
  }
  return forest;
}

void remove_small_regions(RegionForest& forest, const SortedPixelGraph& g, int delta) {
  if (delta <= 0) return;
  for (const PixelEdge& e : g.edges) {
    int ra = forest.find(e.a);
    int rb = forest.find(e.b);
    if (ra == rb) continue;
    if (forest.size(ra) < delta || forest.size(rb) < delta) {
      int root = forest.unite(ra, rb);
      forest.set_internal(root, e.weight);
    }
  }
}

Segmentation forest_to_segmentation(RegionForest& forest, const Frame& frame,
                                    std::uint32_t base) {
  const int n = frame.pixel_count();
  std::vector<std::uint32_t> labels(static_cast<std::size_t>(n));
  std::unordered_map<int, std::uint32_t> dense;
  dense.reserve(static_cast<std::size_t>(forest.region_count()));
  std::uint32_t next = base;
  for (int i = 0; i < n; ++i) {
    int root = forest.find(i);
    auto [it, inserted] = dense.try_emplace(root, next);
    if (inserted) ++next;
    labels[static_cast<std::size_t>(i)] = it->second;
  }
  return make_segmentation(std::move(labels), frame.width, frame.height, frame);
}

}  // namespace vseg
