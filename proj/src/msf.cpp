#include "vseg/msf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vseg {

namespace {

struct LabelForest {
  std::vector<std::int32_t> parent;
  std::vector<std::int32_t> rank;
  std::vector<std::int64_t> label;  // per root, -1 unknown

  explicit LabelForest(int n, const std::vector<std::int64_t>& seeds)
      : parent(static_cast<std::size_t>(n)),
        rank(static_cast<std::size_t>(n), 0),
        label(seeds) {
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  }

  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }

  void unite(int a, int b) {
    std::int64_t merged = std::max(label[static_cast<std::size_t>(a)],
                                   label[static_cast<std::size_t>(b)]);
    if (rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
    if (rank[static_cast<std::size_t>(a)] == rank[static_cast<std::size_t>(b)])
      ++rank[static_cast<std::size_t>(a)];
    label[static_cast<std::size_t>(a)] = merged;
  }
};

}  // namespace

std::vector<std::int64_t> msf_label_core(
    int nodes, const std::vector<std::pair<std::int32_t, std::int32_t>>& edges_ascending,
    const std::vector<std::int64_t>& seeds, const std::function<std::int64_t()>& fresh) {
  LabelForest forest(nodes, seeds);
  for (const auto& [a, b] : edges_ascending) {
    int ra = forest.find(a);
    int rb = forest.find(b);
    if (ra == rb) continue;
    std::int64_t la = forest.label[static_cast<std::size_t>(ra)];
    std::int64_t lb = forest.label[static_cast<std::size_t>(rb)];
    if (la >= 0 && lb >= 0 && la != lb) continue;  // watershed-cut edge
    forest.unite(ra, rb);
  }
  // components no seed reached get fresh labels
  std::vector<std::int64_t> out(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) {
    int r = forest.find(i);
    if (forest.label[static_cast<std::size_t>(r)] < 0)
      forest.label[static_cast<std::size_t>(r)] = fresh();
    out[static_cast<std::size_t>(i)] = forest.label[static_cast<std::size_t>(r)];
  }
  return out;
}

SeededLabeling msf_label(const SortedPixelGraph& g, const MarkerMap& seeds,
                         LabelAllocator& alloc) {
  const int n = g.width * g.height;
  if (static_cast<int>(seeds.seed.size()) != n)
    throw std::invalid_argument("msf_label: marker map dimension mismatch");
  bool any = std::any_of(seeds.seed.begin(), seeds.seed.end(),
                         [](std::int64_t s) { return s >= 0; });
  if (!any) throw std::invalid_argument("msf_label: no seeds");

  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  edges.reserve(g.edges.size());
  for (const PixelEdge& e : g.edges) edges.emplace_back(e.a, e.b);

  std::vector<std::int64_t> labels =
      msf_label_core(n, edges, seeds.seed,
                     [&alloc]() { return static_cast<std::int64_t>(alloc.fresh()); });

  SeededLabeling result;
  result.labels.resize(static_cast<std::size_t>(n));
  result.propagated.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    result.labels[static_cast<std::size_t>(i)] =
        static_cast<std::uint32_t>(labels[static_cast<std::size_t>(i)]);
    result.propagated[static_cast<std::size_t>(i)] =
        seeds.seed[static_cast<std::size_t>(i)] >= 0 ? 0 : 1;
  }
  return result;
}

double labeling_energy(const std::vector<std::int64_t>& x, const SmallGraph& g,
                       const std::vector<std::int64_t>& seeds, const EnergyParams& params) {
  for (std::size_t i = 0; i < seeds.size(); ++i)
    if (seeds[i] >= 0 && x[i] != seeds[i]) return std::numeric_limits<double>::infinity();
  double e = 0;
  for (const SmallGraph::Edge& edge : g.edges) {
    double diff = std::abs(static_cast<double>(x[static_cast<std::size_t>(edge.u)] -
                                               x[static_cast<std::size_t>(edge.v)]));
    if (diff == 0) continue;
    e += std::pow(params.omega_max - edge.weight, params.p) * std::pow(diff, params.q);
  }
  return e;
}

BruteForceResult brute_force_argmin(const SmallGraph& g, const std::vector<std::int64_t>& seeds,
                                    const EnergyParams& params) {
  if (g.nodes > 10) throw std::invalid_argument("brute_force_argmin: instance too large");
  std::vector<std::int64_t> alphabet;
  for (std::int64_t s : seeds)
    if (s >= 0 && std::find(alphabet.begin(), alphabet.end(), s) == alphabet.end())
      alphabet.push_back(s);
  std::sort(alphabet.begin(), alphabet.end());
  if (alphabet.empty()) throw std::invalid_argument("brute_force_argmin: no seeds");
  if (alphabet.size() > 3)
    throw std::invalid_argument("brute_force_argmin: too many seed labels");

  std::vector<int> free_nodes;
  for (int i = 0; i < g.nodes; ++i)
    if (seeds[static_cast<std::size_t>(i)] < 0) free_nodes.push_back(i);

  std::vector<std::int64_t> x = seeds;
  BruteForceResult best;
  best.energy = std::numeric_limits<double>::infinity();

  std::uint64_t combos = 1;
  for (std::size_t i = 0; i < free_nodes.size(); ++i) combos *= alphabet.size();
  for (std::uint64_t c = 0; c < combos; ++c) {
    std::uint64_t code = c;
    for (int node : free_nodes) {
      x[static_cast<std::size_t>(node)] = alphabet[code % alphabet.size()];
      code /= alphabet.size();
    }
    double e = labeling_energy(x, g, seeds, params);
    if (e < best.energy) {
      best.energy = e;
      best.labels = x;
      best.tie = false;
    } else if (e == best.energy && x != best.labels) {
      best.tie = true;
    }
  }
  return best;
}

}  // namespace vseg
