#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <random>
#include <set>

#include "doctest.h"
#include "vseg/msf.hpp"
#include "vseg/synth.hpp"

using namespace vseg;

namespace {

MarkerMap empty_markers(int w, int h) {
  MarkerMap m;
  m.width = w;
  m.height = h;
  m.seed.assign(static_cast<std::size_t>(w) * h, -1);
  return m;
}

bool same_partition(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::map<std::int64_t, std::int64_t> a2b, b2a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [ia, oka] = a2b.try_emplace(a[i], b[i]);
    auto [ib, okb] = b2a.try_emplace(b[i], a[i]);
    if (ia->second != b[i] || ib->second != a[i]) return false;
  }
  return true;
}

// Random connected graph with multiplicatively separated distinct weights,
// so the finite-exponent energy ordering matches the limit exactly.
SmallGraph random_small_graph(int nodes, std::mt19937& rng, double& omega_max) {
  SmallGraph g;
  g.nodes = nodes;
  std::set<std::pair<int, int>> used;
  for (int v = 1; v < nodes; ++v) {
    int u = static_cast<int>(rng() % static_cast<unsigned>(v));
    used.insert({u, v});
  }
  int extra = static_cast<int>(rng() % 4);
  for (int i = 0; i < extra; ++i) {
    int u = static_cast<int>(rng() % static_cast<unsigned>(nodes));
    int v = static_cast<int>(rng() % static_cast<unsigned>(nodes));
    if (u == v) continue;
    used.insert({std::min(u, v), std::max(u, v)});
  }
  // distinct similarity values 1.15^e; omega = C - similarity.  The ratio is
  // chosen so that at p = 20 adjacent terms differ by 1.15^20 ~ 16 (> edge
  // count, so sums order lexicographically) while the extreme terms stay
  // within ~2e13 of each other (no absorption in double sums).
  std::vector<int> exponents(12);
  for (int i = 0; i < 12; ++i) exponents[static_cast<std::size_t>(i)] = i;
  std::shuffle(exponents.begin(), exponents.end(), rng);
  double max_sim = std::pow(1.15, 11);
  omega_max = max_sim + 1.0;
  int i = 0;
  for (auto [u, v] : used) {
    double sim = std::pow(1.15, exponents[static_cast<std::size_t>(i++)]);
    g.edges.push_back({u, v, omega_max - sim});
  }
  return g;
}

std::vector<std::int64_t> run_msf_on(const SmallGraph& g, const std::vector<std::int64_t>& seeds) {
  std::vector<SmallGraph::Edge> sorted = g.edges;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const SmallGraph::Edge& a, const SmallGraph::Edge& b) {
                     return a.weight < b.weight;
                   });
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  for (const auto& e : sorted) pairs.emplace_back(e.u, e.v);
  std::int64_t next = 1000;
  return msf_label_core(g.nodes, pairs, seeds, [&next]() { return next++; });
}

}  // namespace

TEST_CASE("single seed floods the whole image") {
  Frame f = random_frame(9, 7, 2);
  SortedPixelGraph g = build_graph(f);
  MarkerMap seeds = empty_markers(9, 7);
  seeds.seed[31] = 42;
  LabelAllocator alloc{100};
  SeededLabeling out = msf_label(g, seeds, alloc);
  for (std::uint32_t l : out.labels) CHECK(l == 42);
  CHECK(out.propagated[31] == 0);
  CHECK(out.propagated[0] == 1);
}

TEST_CASE("all pixels seeded: output equals the seeds") {
  Frame f = random_frame(6, 6, 3);
  SortedPixelGraph g = build_graph(f);
  MarkerMap seeds = empty_markers(6, 6);
  for (std::size_t i = 0; i < 36; ++i) seeds.seed[i] = static_cast<std::int64_t>(i % 5 + 1);
  LabelAllocator alloc{100};
  SeededLabeling out = msf_label(g, seeds, alloc);
  for (std::size_t i = 0; i < 36; ++i)
    CHECK(out.labels[i] == static_cast<std::uint32_t>(seeds.seed[i]));
}

TEST_CASE("no seeds is an error") {
  Frame f = random_frame(4, 4, 4);
  SortedPixelGraph g = build_graph(f);
  MarkerMap seeds = empty_markers(4, 4);
  LabelAllocator alloc{1};
  CHECK_THROWS_AS(msf_label(g, seeds, alloc), std::invalid_argument);
}

TEST_CASE("6-node path with distinct weights cuts at the maximum edge") {
  // path 0-1-2-3-4-5, seeds at both ends
  SmallGraph g;
  g.nodes = 6;
  double weights[5] = {3.0, 1.0, 7.0, 2.0, 5.0};  // max at edge (2,3)
  for (int i = 0; i < 5; ++i) g.edges.push_back({i, i + 1, weights[i]});
  std::vector<std::int64_t> seeds(6, -1);
  seeds[0] = 0;
  seeds[5] = 1;

  std::vector<std::int64_t> msf = run_msf_on(g, seeds);
  std::vector<std::int64_t> expected = {0, 0, 0, 1, 1, 1};
  CHECK(msf == expected);

  EnergyParams params{20.0, 1.0, 8.0};
  BruteForceResult brute = brute_force_argmin(g, seeds, params);
  CHECK(!brute.tie);
  CHECK(same_partition(msf, brute.labels));
}

TEST_CASE("energy arithmetic") {
  SmallGraph g;
  g.nodes = 3;
  g.edges.push_back({0, 1, 1.0});
  g.edges.push_back({1, 2, 2.0});
  EnergyParams params{1.0, 1.0, 3.0};
  std::vector<std::int64_t> seeds = {0, -1, 1};

  SUBCASE("constant labeling consistent with its seed has zero energy") {
    SmallGraph g1;
    g1.nodes = 2;
    g1.edges.push_back({0, 1, 1.0});
    std::vector<std::int64_t> s = {7, -1};
    CHECK(labeling_energy({7, 7}, g1, s, params) == 0.0);
  }
  SUBCASE("violating a seed costs infinity") {
    CHECK(std::isinf(labeling_energy({1, 0, 1}, g, seeds, params)));
  }
  SUBCASE("cut placement: (3-2)*1 = 1 vs (3-1)*1 = 2") {
    CHECK(labeling_energy({0, 0, 1}, g, seeds, params) == doctest::Approx(1.0));
    CHECK(labeling_energy({0, 1, 1}, g, seeds, params) == doctest::Approx(2.0));
    BruteForceResult brute = brute_force_argmin(g, seeds, params);
    CHECK(brute.labels == std::vector<std::int64_t>{0, 0, 1});
    CHECK(brute.energy == doctest::Approx(1.0));
  }
}

TEST_CASE("brute force: trivial cases") {
  SUBCASE("all nodes seeded returns the unique consistent labeling") {
    SmallGraph g;
    g.nodes = 2;
    g.edges.push_back({0, 1, 1.0});
    EnergyParams params{2.0, 1.0, 4.0};
    BruteForceResult r = brute_force_argmin(g, {5, 6}, params);
    CHECK(r.labels == std::vector<std::int64_t>{5, 6});
    CHECK(r.energy == doctest::Approx(std::pow(3.0, 2.0)));
  }
  SUBCASE("oversized instances are refused") {
    SmallGraph g;
    g.nodes = 11;
    CHECK_THROWS_AS(brute_force_argmin(g, std::vector<std::int64_t>(11, 0), EnergyParams{}),
                    std::invalid_argument);
  }
}

TEST_CASE("msf partition equals the exhaustive energy argmin on random graphs") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    double omega_max = 0;
    SmallGraph g = random_small_graph(7, rng, omega_max);
    std::vector<std::int64_t> seeds(7, -1);
    int s1 = static_cast<int>(rng() % 7);
    int s2 = static_cast<int>(rng() % 7);
    if (s1 == s2) s2 = (s2 + 1) % 7;
    seeds[static_cast<std::size_t>(s1)] = 0;
    seeds[static_cast<std::size_t>(s2)] = 1;

    std::vector<std::int64_t> msf = run_msf_on(g, seeds);
    BruteForceResult brute = brute_force_argmin(g, seeds, EnergyParams{20.0, 1.0, omega_max});
    CHECK(same_partition(msf, brute.labels));
  }
}

TEST_CASE("msf is invariant under strictly monotone weight transforms") {
  Frame f = random_frame(12, 10, 8);
  SortedPixelGraph g = build_graph(f);
  MarkerMap seeds = empty_markers(12, 10);
  seeds.seed[0] = 1;
  seeds.seed[119] = 2;
  seeds.seed[60] = 3;
  LabelAllocator alloc{10};
  SeededLabeling base = msf_label(g, seeds, alloc);

  SortedPixelGraph transformed = g;  // same order, transformed weights
  for (PixelEdge& e : transformed.edges) e.weight = std::sqrt(e.weight) * 3.0f + 1.0f;
  LabelAllocator alloc2{10};
  SeededLabeling t = msf_label(transformed, seeds, alloc2);
  CHECK(base.labels == t.labels);
}

TEST_CASE("msf consumes the stored order without sorting") {
  Frame f = random_frame(10, 10, 12);
  SortedPixelGraph g = build_graph(f);
  MarkerMap seeds = empty_markers(10, 10);
  seeds.seed[5] = 1;
  seeds.seed[95] = 2;
  LabelAllocator alloc{10};
  std::uint64_t sorts_before = sort_invocations();
  msf_label(g, seeds, alloc);
  CHECK(sort_invocations() == sorts_before);
}

TEST_CASE("unseeded connected components receive fresh labels") {
  // two components: a 4-node path and an isolated pair, seed only in the path
  SmallGraph g;
  g.nodes = 6;
  g.edges.push_back({0, 1, 1.0});
  g.edges.push_back({1, 2, 2.0});
  g.edges.push_back({2, 3, 3.0});
  g.edges.push_back({4, 5, 4.0});
  std::vector<std::int64_t> seeds(6, -1);
  seeds[0] = 9;
  std::vector<std::int64_t> out = run_msf_on(g, seeds);
  CHECK(out[0] == 9);
  CHECK(out[3] == 9);
  CHECK(out[4] >= 1000);  // fresh
  CHECK(out[4] == out[5]);
}

TEST_CASE("propagated pixels reach a seed of their label through merge-time edges") {
  // independent simulation with explicit component sets records the weight
  // at which each node's component became labeled; then BFS over edges of
  // weight <= that bound must reach a seed of the same label.
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    double omega_max = 0;
    SmallGraph g = random_small_graph(8, rng, omega_max);
    std::vector<std::int64_t> seeds(8, -1);
    seeds[0] = 1;
    seeds[7] = 2;
    std::vector<std::int64_t> labels = run_msf_on(g, seeds);

    std::vector<SmallGraph::Edge> sorted = g.edges;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const SmallGraph::Edge& a, const SmallGraph::Edge& b) {
                       return a.weight < b.weight;
                     });
    // simulate: explicit sets, record the weight at which each node's
    // component first became labeled
    std::vector<std::set<int>> comp(8);
    std::vector<int> comp_of(8);
    std::vector<std::int64_t> known(8, -1);
    std::vector<double> labeled_at(8, 0);
    std::vector<bool> has_label(8, false);
    for (int i = 0; i < 8; ++i) {
      comp[static_cast<std::size_t>(i)] = {i};
      comp_of[static_cast<std::size_t>(i)] = i;
      known[static_cast<std::size_t>(i)] = seeds[static_cast<std::size_t>(i)];
      has_label[static_cast<std::size_t>(i)] = seeds[static_cast<std::size_t>(i)] >= 0;
    }
    for (const auto& e : sorted) {
      int ca = comp_of[static_cast<std::size_t>(e.u)], cb = comp_of[static_cast<std::size_t>(e.v)];
      if (ca == cb) continue;
      std::int64_t la = known[static_cast<std::size_t>(ca)], lb = known[static_cast<std::size_t>(cb)];
      if (la >= 0 && lb >= 0 && la != lb) continue;
      for (int p : comp[static_cast<std::size_t>(cb)]) {
        comp[static_cast<std::size_t>(ca)].insert(p);
        comp_of[static_cast<std::size_t>(p)] = ca;
      }
      comp[static_cast<std::size_t>(cb)].clear();
      known[static_cast<std::size_t>(ca)] = std::max(la, lb);
      if (known[static_cast<std::size_t>(ca)] >= 0) {
        for (int p : comp[static_cast<std::size_t>(ca)]) {
          if (!has_label[static_cast<std::size_t>(p)]) {
            has_label[static_cast<std::size_t>(p)] = true;
            labeled_at[static_cast<std::size_t>(p)] = e.weight;
          }
        }
      }
    }

    for (int p = 0; p < 8; ++p) {
      if (seeds[static_cast<std::size_t>(p)] >= 0) continue;
      std::int64_t l = labels[static_cast<std::size_t>(p)];
      if (l >= 1000) continue;  // fresh label, no seed to reach
      double bound = labeled_at[static_cast<std::size_t>(p)];
      // BFS restricted to edges of weight <= bound
      std::vector<bool> visited(8, false);
      std::queue<int> queue;
      queue.push(p);
      visited[static_cast<std::size_t>(p)] = true;
      bool reached = false;
      while (!queue.empty() && !reached) {
        int u = queue.front();
        queue.pop();
        if (seeds[static_cast<std::size_t>(u)] == l) reached = true;
        for (const auto& e : g.edges) {
          if (e.weight > bound) continue;
          int other = e.u == u ? e.v : e.v == u ? e.u : -1;
          if (other >= 0 && !visited[static_cast<std::size_t>(other)]) {
            visited[static_cast<std::size_t>(other)] = true;
            queue.push(other);
          }
        }
      }
      CHECK(reached);
    }
  }
}
