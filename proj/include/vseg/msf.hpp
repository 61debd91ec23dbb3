#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "vseg/markers.hpp"
#include "vseg/pixelgraph.hpp"

namespace vseg {

struct SeededLabeling {
  std::vector<std::uint32_t> labels;
  std::vector<std::uint8_t> propagated;  // 0 = seed pixel, 1 = propagated
};

// Seeded minimum-spanning-forest labeling over the frame's stored edge
// order. Edges joining two differently-labeled components are skipped
// (watershed-cut edges). Components untouched by any seed get fresh labels
// from the allocator.
SeededLabeling msf_label(const SortedPixelGraph& g, const MarkerMap& seeds,
                         LabelAllocator& alloc);

// Generic core over an arbitrary node set and a pre-sorted edge sequence.
// seeds[i] < 0 means unknown; `fresh` supplies labels for components no
// seed reaches.
std::vector<std::int64_t> msf_label_core(
    int nodes, const std::vector<std::pair<std::int32_t, std::int32_t>>& edges_ascending,
    const std::vector<std::int64_t>& seeds, const std::function<std::int64_t()>& fresh);

// Small weighted graph for the energy oracle.
struct SmallGraph {
  struct Edge {
    int u = 0, v = 0;
    double weight = 0;
  };
  int nodes = 0;
  std::vector<Edge> edges;
};

struct EnergyParams {
  double p = 20;
  double q = 1;
  double omega_max = 0;  // similarity = omega_max - weight; must exceed all weights
};

// Sum over edges of (omega_max - w)^p * |x_j - x_i|^q, plus an infinite
// unary term if any seeded node deviates from its seed. Labels are embedded
// as distinct integers.
double labeling_energy(const std::vector<std::int64_t>& x, const SmallGraph& g,
                       const std::vector<std::int64_t>& seeds, const EnergyParams& params);

struct BruteForceResult {
  std::vector<std::int64_t> labels;
  double energy = 0;
  bool tie = false;  // another partition reached the same minimum
};

// Exhaustive argmin over seed-consistent labelings. Refuses instances with
// more than 10 nodes or more than 3 distinct seed labels.
BruteForceResult brute_force_argmin(const SmallGraph& g, const std::vector<std::int64_t>& seeds,
                                    const EnergyParams& params);

}  // namespace vseg
