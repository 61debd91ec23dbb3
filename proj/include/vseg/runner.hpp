#pragma once

#include <string>

#include "vseg/synth.hpp"
#include "vseg/temporal.hpp"

namespace vseg {

struct RunConfig {
  std::string input;       // directory of .ppm frames or printf-style pattern
  std::string output_dir;
  PipelineParams params;
  std::string semantics;   // optional PGM pattern/directory
  bool emit_labels = true;
  bool emit_color = false;
  bool emit_flow = true;
  bool emit_flow_viz = false;
  bool emit_semantics = true;
  bool emit_timings = true;
};

// Exit codes: 0 success, 2 no input frames, 3 mid-stream decode failure
// (artifacts up to the failure are retained).
int run_stream(const RunConfig& cfg);

struct BenchReport {
  int width = 0, height = 0;
  int frames = 0;
  double fps_median = 0;
  double ms_median = 0;
  double ms_p95 = 0;
};

// Runs the pipeline over a rendered scene `repetitions` times, warm-up
// frame excluded from the statistics.
BenchReport run_bench(const SceneSpec& scene, const PipelineParams& params, int repetitions);

}  // namespace vseg
