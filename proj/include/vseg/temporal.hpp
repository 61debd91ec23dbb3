#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "vseg/frame.hpp"
#include "vseg/markers.hpp"
#include "vseg/segmentation.hpp"

namespace vseg {

struct PipelineParams {
  double k = 200;
  double delta = 400;
  double sigma = 0.5;
  double match_radius_frac = 0.1;  // of the image diagonal
  double tau_safe = 0.3;
  int erosion_iters = 2;
  int theta_new = -1;  // < 0: use delta
  double c_sem = 50;
  double flow_max_frac = 0.1;  // of the image diagonal

  int theta() const { return theta_new < 0 ? static_cast<int>(delta) : theta_new; }
  void validate() const;  // throws std::invalid_argument
};

struct StageTiming {
  std::string stage;
  double ms = 0;
};

struct FrameResult {
  Segmentation seg;
  FlowMap flow;
  std::optional<SemanticMap> semantics;
  std::vector<StageTiming> timings;
};

// Causal per-stream state: previous segmentation, the label allocator and
// per-region semantic classes. Advanced strictly sequentially.
class StreamState {
 public:
  explicit StreamState(PipelineParams params);

  FrameResult process_frame(const Frame& frame, const SemanticMap* sem_pred = nullptr);

  const std::optional<Segmentation>& previous() const { return prev_; }
  const LabelAllocator& allocator() const { return alloc_; }
  int frames_processed() const { return frame_index_; }

 private:
  PipelineParams params_;
  std::optional<Segmentation> prev_;
  LabelAllocator alloc_;
  std::unordered_map<std::uint32_t, int> prev_sem_;
  int frame_index_ = 0;
  int width_ = 0, height_ = 0;
};

// Region-level optical flow: centroid displacement for every label of cur
// that already existed in prev; (0,0,invalid) otherwise. Entries ordered by
// cur's region table.
FlowMap compute_flow(const Segmentation& prev, const Segmentation& cur);

// Propagated labels with ||flow|| <= flow_max keep their previous class;
// everything else takes the majority vote of sem_pred inside the region.
// region_classes, when given, receives the per-region class decisions.
SemanticMap propagate_semantics(const Segmentation& cur, const FlowMap& flow,
                                const std::unordered_map<std::uint32_t, int>& prev_sem,
                                const SemanticMap& sem_pred, double flow_max,
                                std::unordered_map<std::uint32_t, int>* region_classes);

}  // namespace vseg
