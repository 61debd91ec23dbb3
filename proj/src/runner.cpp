#include "vseg/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <vector>

#include "vseg/imageio.hpp"

namespace fs = std::filesystem;

namespace vseg {

namespace {

bool is_pattern(const std::string& s) { return s.find('%') != std::string::npos; }

std::string expand_pattern(const std::string& pattern, int index) {
  char buf[1024];
  std::snprintf(buf, sizeof(buf), pattern.c_str(), index);
  return buf;
}

// Directory of files sorted by name, or a printf-style pattern probed from
// index 0 (falling back to 1) until the first missing file.
std::vector<std::string> resolve_inputs(const std::string& input, const std::string& ext) {
  std::vector<std::string> paths;
  if (is_pattern(input)) {
    int start = fs::exists(expand_pattern(input, 0)) ? 0 : 1;
    for (int i = start;; ++i) {
      std::string p = expand_pattern(input, i);
      if (!fs::exists(p)) break;
      paths.push_back(p);
    }
  } else if (fs::is_directory(input)) {
    for (const auto& entry : fs::directory_iterator(input))
      if (entry.is_regular_file() && entry.path().extension() == ext)
        paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
  } else if (fs::exists(input)) {
    paths.push_back(input);
  }
  return paths;
}

std::string frame_name(const char* prefix, int index, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_%06d.%s", prefix, index, ext);
  return buf;
}

}  // namespace

int run_stream(const RunConfig& cfg) {
  cfg.params.validate();
  std::vector<std::string> frames = resolve_inputs(cfg.input, ".ppm");
  if (frames.empty()) {
    std::cerr << "error: no input frames found at " << cfg.input << "\n";
    return 2;
  }
  std::vector<std::string> sem_paths;
  if (!cfg.semantics.empty()) {
    sem_paths = resolve_inputs(cfg.semantics, ".pgm");
    if (sem_paths.size() < frames.size()) {
      std::cerr << "error: " << frames.size() << " frames but only " << sem_paths.size()
                << " semantic maps\n";
      return 2;
    }
  }

  fs::create_directories(cfg.output_dir);
  std::ofstream timings;
  if (cfg.emit_timings) {
    timings.open(fs::path(cfg.output_dir) / "timings.csv");
    timings << "frame,stage,ms\n";
  }

  StreamState state(cfg.params);
  auto stream_start = std::chrono::steady_clock::now();
  for (std::size_t t = 0; t < frames.size(); ++t) {
    Frame frame;
    SemanticMap sem;
    try {
      frame = load_ppm(frames[t]);
      if (!sem_paths.empty()) sem = load_pgm(sem_paths[t]);
    } catch (const std::exception& e) {
      std::cerr << "error: decode failed at frame " << t << ": " << e.what() << "\n";
      return 3;
    }

    FrameResult result =
        state.process_frame(frame, sem_paths.empty() ? nullptr : &sem);

    const fs::path out(cfg.output_dir);
    int idx = static_cast<int>(t);
    if (cfg.emit_labels)
      write_label_map(result.seg, (out / frame_name("labels", idx, "segl")).string());
    if (cfg.emit_color)
      write_label_colors(result.seg, (out / frame_name("labels", idx, "ppm")).string());
    if (cfg.emit_flow)
      write_flow(result.flow, (out / frame_name("flow", idx, "csv")).string());
    if (cfg.emit_flow_viz)
      write_flow_viz(result.flow, result.seg, (out / frame_name("flow", idx, "ppm")).string());
    if (cfg.emit_semantics && result.semantics)
      save_pgm(*result.semantics, (out / frame_name("semantics", idx, "pgm")).string());
    if (cfg.emit_timings)
      for (const StageTiming& st : result.timings)
        timings << t << "," << st.stage << "," << st.ms << "\n";
  }
  if (cfg.emit_timings) {
    double total_s = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                   stream_start)
                         .count();
    timings << "all,fps," << (total_s > 0 ? frames.size() / total_s : 0.0) << "\n";
  }
  return 0;
}

BenchReport run_bench(const SceneSpec& scene_spec, const PipelineParams& params,
                      int repetitions) {
  params.validate();
  Scene scene = render_scene(scene_spec);

  std::vector<double> per_frame_ms;
  for (int rep = 0; rep < std::max(1, repetitions); ++rep) {
    StreamState state(params);
    for (std::size_t t = 0; t < scene.frames.size(); ++t) {
      auto start = std::chrono::steady_clock::now();
      state.process_frame(scene.frames[t]);
      double ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
      if (t == 0) continue;  // warm-up frame of each repetition
      per_frame_ms.push_back(ms);
    }
  }

  std::sort(per_frame_ms.begin(), per_frame_ms.end());
  BenchReport report;
  report.width = scene_spec.width;
  report.height = scene_spec.height;
  report.frames = static_cast<int>(per_frame_ms.size());
  if (!per_frame_ms.empty()) {
    report.ms_median = per_frame_ms[per_frame_ms.size() / 2];
    report.ms_p95 = per_frame_ms[std::min(per_frame_ms.size() - 1,
                                          static_cast<std::size_t>(per_frame_ms.size() * 0.95))];
    report.fps_median = report.ms_median > 0 ? 1000.0 / report.ms_median : 0.0;
  }
  return report;
}

}  // namespace vseg
