#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vseg/frame.hpp"
#include "vseg/segmentation.hpp"

namespace vseg {

struct ShapeSpec {
  double x = 0, y = 0;  // top-left at t=0
  int w = 1, h = 1;
  Rgb color{255.f, 255.f, 255.f};
  double vx = 0, vy = 0;  // pixels/frame
};

struct SceneSpec {
  int width = 64;
  int height = 48;
  int frames = 10;
  Rgb background{0.f, 0.f, 0.f};
  std::vector<ShapeSpec> shapes;
  double noise_amp = 0;  // uniform additive noise, intensity units
  std::uint32_t seed = 0;
};

struct Scene {
  std::vector<Frame> frames;
  std::vector<std::vector<std::uint32_t>> gt_labels;  // bg = 0, shape i = i+1
  std::vector<FlowMap> gt_flow;
  std::vector<SemanticMap> gt_semantics;  // classes = gt labels
};

// Deterministic given the spec (noise from the seed). Ground-truth label
// of each shape is constant over time; flow equals the spec velocities.
Scene render_scene(const SceneSpec& spec);

// Plain-text key=value format, one shape= line per shape.
SceneSpec load_scene_spec(const std::string& path);
void save_scene_spec(const SceneSpec& spec, const std::string& path);

// Literal region-set re-evaluation of the merge predicate, followed by the
// small-region pass. Independent of the production segmentation code; O(E*V).
// Returns a partition id per pixel.
std::vector<std::uint32_t> naive_fh(const Frame& frame, double k, int delta);

// Flips each ground-truth region's class independently per frame with
// probability error_rate (to a different class from the scene's alphabet).
std::vector<SemanticMap> flicker_labels(const std::vector<SemanticMap>& gt_sem,
                                        const std::vector<std::vector<std::uint32_t>>& gt_labels,
                                        double error_rate, std::uint32_t seed);

// Deterministic RGB frame with independently uniform channels, for
// randomized oracle comparisons.
Frame random_frame(int width, int height, std::uint32_t seed);

}  // namespace vseg
