// Command-line front end: stream runner, benchmark mode, synthetic-scene
// generator.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>

#ifdef __linux__
#include <sched.h>
#endif

#include "CLI11.hpp"
#include "vseg/imageio.hpp"
#include "vseg/runner.hpp"
#include "vseg/synth.hpp"

namespace fs = std::filesystem;

namespace {

void add_param_flags(CLI::App* cmd, vseg::PipelineParams& p) {
  cmd->add_option("--k", p.k, "scale of observation k (merge threshold term k/|X|)")
      ->capture_default_str();
  cmd->add_option("--delta", p.delta, "minimum region size delta")->capture_default_str();
  cmd->add_option("--sigma", p.sigma, "Gaussian pre-smoothing sigma, pixels")
      ->capture_default_str();
  cmd->add_option("--radius-frac", p.match_radius_frac,
                  "match candidate radius, fraction of image diagonal")
      ->capture_default_str();
  cmd->add_option("--tau-safe", p.tau_safe, "max tolerated marker/segment disagreement")
      ->capture_default_str();
  cmd->add_option("--erode-iters", p.erosion_iters, "erosion rounds for marker correction")
      ->capture_default_str();
  cmd->add_option("--theta-new", p.theta_new,
                  "size below which a one-way match gets a fresh label (-1: use delta)")
      ->capture_default_str();
  cmd->add_option("--c-sem", p.c_sem, "edge weight bonus on semantic contours")
      ->capture_default_str();
  cmd->add_option("--flow-max-frac", p.flow_max_frac,
                  "max trusted flow magnitude, fraction of image diagonal")
      ->capture_default_str();
}

void pin_to_one_core() {
#ifdef __linux__
  cpu_set_t set;
  CPU_ZERO(&set);
  CPU_SET(0, &set);
  sched_setaffinity(0, sizeof(set), &set);
#endif
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal streaming superpixel segmentation"};
  app.require_subcommand(1);

  // run
  vseg::RunConfig cfg;
  std::string emit = "labels,flow,semantics,timings";
  auto* run = app.add_subcommand("run", "Segment a frame stream");
  run->add_option("input", cfg.input, "frame directory or printf-style .ppm pattern")
      ->required();
  run->add_option("-o,--output", cfg.output_dir, "output directory")->required();
  add_param_flags(run, cfg.params);
  run->add_option("--semantics", cfg.semantics,
                  "per-frame semantic class maps (.pgm directory or pattern)");
  run->add_option("--emit", emit,
                  "comma list of labels,colorized,flow,flow-viz,semantics,timings")
      ->capture_default_str();

  // bench
  vseg::PipelineParams bench_params;
  int repetitions = 3;
  int bench_frames = 20;
  bool single_core = false;
  auto* bench = app.add_subcommand("bench", "Throughput benchmark on synthetic streams");
  add_param_flags(bench, bench_params);
  bench->add_option("--reps", repetitions, "stream repetitions")->capture_default_str();
  bench->add_option("--frames", bench_frames, "frames per stream")->capture_default_str();
  bench->add_flag("--single-core", single_core, "pin the process to one core");

  // synth
  std::string scene_path, synth_out;
  double flicker_rate = 0;
  auto* synth = app.add_subcommand("synth", "Render a synthetic scene to PPM frames");
  synth->add_option("scene", scene_path, "scene spec file (key=value)")->required();
  synth->add_option("-o,--output", synth_out, "output directory")->required();
  synth->add_option("--flicker", flicker_rate,
                    "per-region semantic flip probability for noisy predictions")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (const char* threads = std::getenv("SEG_THREADS")) {
    // the pipeline is single-threaded; a cap of 1 additionally pins the core
    if (std::string(threads) == "1") pin_to_one_core();
  }

  try {
    if (run->parsed()) {
      std::set<std::string> wanted;
      for (std::size_t pos = 0; pos <= emit.size();) {
        std::size_t comma = emit.find(',', pos);
        if (comma == std::string::npos) comma = emit.size();
        if (comma > pos) wanted.insert(emit.substr(pos, comma - pos));
        pos = comma + 1;
      }
      cfg.emit_labels = wanted.contains("labels");
      cfg.emit_color = wanted.contains("colorized");
      cfg.emit_flow = wanted.contains("flow");
      cfg.emit_flow_viz = wanted.contains("flow-viz");
      cfg.emit_semantics = wanted.contains("semantics");
      cfg.emit_timings = wanted.contains("timings");
      return vseg::run_stream(cfg);
    }

    if (bench->parsed()) {
      if (single_core) pin_to_one_core();
      for (auto [w, h] : {std::pair{320, 240}, std::pair{640, 380}}) {
        vseg::SceneSpec spec;
        spec.width = w;
        spec.height = h;
        spec.frames = bench_frames;
        spec.background = {40.f, 40.f, 60.f};
        spec.noise_amp = 4;
        spec.seed = 7;
        spec.shapes.push_back({w * 0.1, h * 0.2, w / 5, h / 5, {200.f, 80.f, 60.f}, 1.5, 0});
        spec.shapes.push_back({w * 0.5, h * 0.5, w / 6, h / 4, {70.f, 180.f, 90.f}, -1, 0.5});
        spec.shapes.push_back({w * 0.3, h * 0.1, w / 8, h / 8, {230.f, 220.f, 90.f}, 0, 1});
        vseg::BenchReport r = vseg::run_bench(spec, bench_params, repetitions);
        std::printf("%dx%d: fps_median=%.2f, ms_p95=%.2f (frames=%d)\n", r.width, r.height,
                    r.fps_median, r.ms_p95, r.frames);
      }
      std::printf("# reference single-core baseline: 10.5 fps at 320x240, 0.4 s/frame at "
                  "640x380\n");
      return 0;
    }

    if (synth->parsed()) {
      vseg::SceneSpec spec = vseg::load_scene_spec(scene_path);
      vseg::Scene scene = vseg::render_scene(spec);
      fs::create_directories(synth_out);
      std::vector<vseg::SemanticMap> noisy =
          flicker_rate > 0
              ? vseg::flicker_labels(scene.gt_semantics, scene.gt_labels, flicker_rate,
                                     spec.seed + 1)
              : scene.gt_semantics;
      for (std::size_t t = 0; t < scene.frames.size(); ++t) {
        char name[64];
        std::snprintf(name, sizeof(name), "frame_%06d.ppm", static_cast<int>(t));
        vseg::save_ppm(scene.frames[t], (fs::path(synth_out) / name).string());
        std::snprintf(name, sizeof(name), "sem_%06d.pgm", static_cast<int>(t));
        vseg::save_pgm(noisy[t], (fs::path(synth_out) / name).string());
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
