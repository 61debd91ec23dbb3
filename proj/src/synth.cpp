#include "vseg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace vseg {

Scene render_scene(const SceneSpec& spec) {
  Scene scene;
  std::mt19937 rng(spec.seed);
  std::uniform_real_distribution<float> noise(-static_cast<float>(spec.noise_amp),
                                              static_cast<float>(spec.noise_amp));

  for (int t = 0; t < spec.frames; ++t) {
    Frame frame = make_frame(spec.width, spec.height, spec.background);
    std::vector<std::uint32_t> labels(frame.pixels.size(), 0);
    FlowMap flow;
    flow.entries.push_back({0, 0, 0, t > 0});

    for (std::size_t s = 0; s < spec.shapes.size(); ++s) {
      const ShapeSpec& shape = spec.shapes[s];
      const std::uint32_t id = static_cast<std::uint32_t>(s) + 1;
      int x0 = static_cast<int>(std::lround(shape.x + t * shape.vx));
      int y0 = static_cast<int>(std::lround(shape.y + t * shape.vy));
      for (int y = std::max(0, y0); y < std::min(spec.height, y0 + shape.h); ++y) {
        for (int x = std::max(0, x0); x < std::min(spec.width, x0 + shape.w); ++x) {
          frame.at(x, y) = shape.color;
          labels[static_cast<std::size_t>(y) * spec.width + x] = id;
        }
      }
      flow.entries.push_back({id, shape.vx, shape.vy, t > 0});
    }

    if (spec.noise_amp > 0) {
      for (Rgb& px : frame.pixels)
        for (int c = 0; c < 3; ++c)
          px[c] = std::clamp(px[c] + noise(rng), 0.0f, 255.0f);
    }

    SemanticMap sem;
    sem.width = spec.width;
    sem.height = spec.height;
    sem.classes.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
      sem.classes[i] = static_cast<std::uint8_t>(labels[i]);

    scene.frames.push_back(std::move(frame));
    scene.gt_labels.push_back(std::move(labels));
    scene.gt_flow.push_back(std::move(flow));
    scene.gt_semantics.push_back(std::move(sem));
  }
  return scene;
}

namespace {

Rgb parse_rgb(const std::string& v) {
  Rgb c{};
  std::istringstream ss(v);
  char comma;
  if (!(ss >> c[0] >> comma >> c[1] >> comma >> c[2]))
    throw std::runtime_error("bad color triple: " + v);
  return c;
}

}  // namespace

SceneSpec load_scene_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scene spec: " + path);
  SceneSpec spec;
  spec.shapes.clear();
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("bad scene line: " + line);
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    if (key == "width") spec.width = std::stoi(value);
    else if (key == "height") spec.height = std::stoi(value);
    else if (key == "frames") spec.frames = std::stoi(value);
    else if (key == "background") spec.background = parse_rgb(value);
    else if (key == "noise") spec.noise_amp = std::stod(value);
    else if (key == "seed") spec.seed = static_cast<std::uint32_t>(std::stoul(value));
    else if (key == "shape") {
      // x,y,w,h,r,g,b,vx,vy
      ShapeSpec s;
      std::istringstream ss(value);
      char c;
      if (!(ss >> s.x >> c >> s.y >> c >> s.w >> c >> s.h >> c >> s.color[0] >> c >>
            s.color[1] >> c >> s.color[2] >> c >> s.vx >> c >> s.vy))
        throw std::runtime_error("bad shape line: " + line);
      spec.shapes.push_back(s);
    } else {
      throw std::runtime_error("unknown scene key: " + key);
    }
  }
  return spec;
}

void save_scene_spec(const SceneSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scene spec: " + path);
  out << "width=" << spec.width << "\nheight=" << spec.height
      << "\nframes=" << spec.frames << "\nbackground=" << spec.background[0] << ","
      << spec.background[1] << "," << spec.background[2] << "\nnoise=" << spec.noise_amp
      << "\nseed=" << spec.seed << "\n";
  for (const ShapeSpec& s : spec.shapes)
    out << "shape=" << s.x << "," << s.y << "," << s.w << "," << s.h << "," << s.color[0]
        << "," << s.color[1] << "," << s.color[2] << "," << s.vx << "," << s.vy << "\n";
}

namespace {

// Explicit region sets; no union-find shared with the production path.
struct NaiveRegions {
  std::vector<std::vector<int>> members;  // by region id, empty if absorbed
  std::vector<int> region_of;             // pixel -> region id
  std::vector<float> internal;            // max merged edge weight

  explicit NaiveRegions(int n) : members(static_cast<std::size_t>(n)),
                                 region_of(static_cast<std::size_t>(n)),
                                 internal(static_cast<std::size_t>(n), 0.0f) {
    for (int i = 0; i < n; ++i) {
      members[static_cast<std::size_t>(i)] = {i};
      region_of[static_cast<std::size_t>(i)] = i;
    }
  }

  void merge(int ra, int rb, float w) {
    for (int p : members[static_cast<std::size_t>(rb)]) {
      region_of[static_cast<std::size_t>(p)] = ra;
      members[static_cast<std::size_t>(ra)].push_back(p);
    }
    members[static_cast<std::size_t>(rb)].clear();
    internal[static_cast<std::size_t>(ra)] = w;
  }
};

struct NaiveEdge {
  int a, b;
  float w;
};

// Same graph definition (8-connectivity, RGB distance, raster E/S/SE/SW
// construction order) built and ordered independently.
std::vector<NaiveEdge> naive_edges(const Frame& f) {
  std::vector<NaiveEdge> edges;
  auto dist = [&](int p, int q) {
    const Rgb& a = f.pixels[static_cast<std::size_t>(p)];
    const Rgb& b = f.pixels[static_cast<std::size_t>(q)];
    return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) +
                     (a[2] - b[2]) * (a[2] - b[2]));
  };
  for (int y = 0; y < f.height; ++y) {
    for (int x = 0; x < f.width; ++x) {
      int p = y * f.width + x;
      if (x + 1 < f.width) edges.push_back({p, p + 1, dist(p, p + 1)});
      if (y + 1 < f.height) edges.push_back({p, p + f.width, dist(p, p + f.width)});
      if (x + 1 < f.width && y + 1 < f.height)
        edges.push_back({p, p + f.width + 1, dist(p, p + f.width + 1)});
      if (x > 0 && y + 1 < f.height)
        edges.push_back({p, p + f.width - 1, dist(p, p + f.width - 1)});
    }
  }
  std::stable_sort(edges.begin(), edges.end(),
                   [](const NaiveEdge& a, const NaiveEdge& b) { return a.w < b.w; });
  return edges;
}

}  // namespace

std::vector<std::uint32_t> naive_fh(const Frame& frame, double k, int delta) {
  const int n = frame.pixel_count();
  std::vector<NaiveEdge> edges = naive_edges(frame);
  NaiveRegions regions(n);

  for (const NaiveEdge& e : edges) {
    int ra = regions.region_of[static_cast<std::size_t>(e.a)];
    int rb = regions.region_of[static_cast<std::size_t>(e.b)];
    if (ra == rb) continue;
    double sa = static_cast<double>(regions.members[static_cast<std::size_t>(ra)].size());
    double sb = static_cast<double>(regions.members[static_cast<std::size_t>(rb)].size());
    double mint = std::min(regions.internal[static_cast<std::size_t>(ra)] + k / sa,
                           regions.internal[static_cast<std::size_t>(rb)] + k / sb);
    if (e.w <= mint) regions.merge(ra, rb, e.w);
  }
  if (delta > 0) {
    for (const NaiveEdge& e : edges) {
      int ra = regions.region_of[static_cast<std::size_t>(e.a)];
      int rb = regions.region_of[static_cast<std::size_t>(e.b)];
      if (ra == rb) continue;
      if (static_cast<int>(regions.members[static_cast<std::size_t>(ra)].size()) < delta ||
          static_cast<int>(regions.members[static_cast<std::size_t>(rb)].size()) < delta)
        regions.merge(ra, rb, e.w);
    }
  }
  std::vector<std::uint32_t> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] =
        static_cast<std::uint32_t>(regions.region_of[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<SemanticMap> flicker_labels(const std::vector<SemanticMap>& gt_sem,
                                        const std::vector<std::vector<std::uint32_t>>& gt_labels,
                                        double error_rate, std::uint32_t seed) {
  std::set<int> alphabet;
  for (const SemanticMap& m : gt_sem)
    for (std::uint8_t c : m.classes) alphabet.insert(c);
  std::vector<int> classes(alphabet.begin(), alphabet.end());

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  std::vector<SemanticMap> out = gt_sem;
  for (std::size_t t = 0; t < out.size(); ++t) {
    std::set<std::uint32_t> regions(gt_labels[t].begin(), gt_labels[t].end());
    std::unordered_map<std::uint32_t, int> shift;  // region -> class override, -1 keep
    for (std::uint32_t r : regions) {
      bool flip = coin(rng) < error_rate;
      int pick = flip && classes.size() > 1
                     ? static_cast<int>(rng() % (classes.size() - 1))
                     : -1;
      shift[r] = pick;
    }
    for (std::size_t i = 0; i < out[t].classes.size(); ++i) {
      int pick = shift[gt_labels[t][i]];
      if (pick < 0) continue;
      // pick indexes the alphabet with the true class skipped
      int truth = out[t].classes[i];
      int j = 0;
      for (int cls : classes) {
        if (cls == truth) continue;
        if (j == pick) {
          out[t].classes[i] = static_cast<std::uint8_t>(cls);
          break;
        }
        ++j;
      }
    }
  }
  return out;
}

Frame random_frame(int width, int height, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<float> channel(0.0f, 255.0f);
  Frame f = make_frame(width, height);
  for (Rgb& px : f.pixels)
    for (int c = 0; c < 3; ++c) px[c] = channel(rng);
  return f;
}

}  // namespace vseg
