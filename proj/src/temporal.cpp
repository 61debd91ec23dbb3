#include "vseg/temporal.hpp"

#include <chrono>
#include <cmath>
#include <iterator>
#include <map>
#include <stdexcept>

#include "vseg/fhseg.hpp"
#include "vseg/imageio.hpp"
#include "vseg/msf.hpp"
#include "vseg/pixelgraph.hpp"
#include "vseg/regionmatch.hpp"

namespace vseg {

void PipelineParams::validate() const {
  if (k <= 0) throw std::invalid_argument("k must be > 0");
  if (delta < 0) throw std::invalid_argument("delta must be >= 0");
  if (sigma < 0) throw std::invalid_argument("sigma must be >= 0");
  if (match_radius_frac <= 0 || match_radius_frac > 1)
    throw std::invalid_argument("match_radius_frac must be in (0,1]");
  if (flow_max_frac <= 0 || flow_max_frac > 1)
    throw std::invalid_argument("flow_max_frac must be in (0,1]");
  if (tau_safe < 0 || tau_safe > 1) throw std::invalid_argument("tau_safe must be in [0,1]");
  if (erosion_iters < 0) throw std::invalid_argument("erosion_iters must be >= 0");
  if (c_sem < 0) throw std::invalid_argument("c_sem must be >= 0");
}

StreamState::StreamState(PipelineParams params) : params_(params) { params_.validate(); }

namespace {

using Clock = std::chrono::steady_clock;

struct StageTimer {
  std::vector<StageTiming>& out;
  Clock::time_point last = Clock::now();
  void lap(const char* stage) {
    auto now = Clock::now();
    out.push_back({stage, std::chrono::duration<double, std::milli>(now - last).count()});
    last = now;
  }
};

int majority_class(const Segmentation& seg, const Region& r, const SemanticMap& pred) {
  std::map<int, int> votes;
  for (int y = r.y0; y <= r.y1; ++y)
    for (int x = r.x0; x <= r.x1; ++x)
      if (seg.label_at(x, y) == r.label) ++votes[pred.at(x, y)];
  int best_class = 0, best_count = -1;
  for (auto [cls, n] : votes)
    if (n > best_count) {
      best_class = cls;
      best_count = n;
    }
  return best_class;
}

}  // namespace

FlowMap compute_flow(const Segmentation& prev, const Segmentation& cur) {
  FlowMap flow;
  flow.entries.reserve(cur.regions.size());
  for (const Region& r : cur.regions) {
    FlowEntry e;
    e.label = r.label;
    if (const Region* s = prev.find(r.label)) {
      e.dx = r.cx - s->cx;
      e.dy = r.cy - s->cy;
      e.valid = true;
    }
    flow.entries.push_back(e);
  }
  return flow;
}

SemanticMap propagate_semantics(const Segmentation& cur, const FlowMap& flow,
                                const std::unordered_map<std::uint32_t, int>& prev_sem,
                                const SemanticMap& sem_pred, double flow_max,
                                std::unordered_map<std::uint32_t, int>* region_classes) {
  std::unordered_map<std::uint32_t, const FlowEntry*> flow_by_label;
  for (const FlowEntry& e : flow.entries) flow_by_label[e.label] = &e;

  std::unordered_map<std::uint32_t, int> classes;
  for (const Region& r : cur.regions) {
    auto fit = flow_by_label.find(r.label);
    auto pit = prev_sem.find(r.label);
    bool propagated = fit != flow_by_label.end() && fit->second->valid &&
                      pit != prev_sem.end() &&
                      std::hypot(fit->second->dx, fit->second->dy) <= flow_max;
    classes[r.label] = propagated ? pit->second : majority_class(cur, r, sem_pred);
  }

  SemanticMap out;
  out.width = cur.width;
  out.height = cur.height;
  out.classes.resize(cur.labels.size());
  for (std::size_t i = 0; i < cur.labels.size(); ++i)
    out.classes[i] = static_cast<std::uint8_t>(classes[cur.labels[i]]);
  if (region_classes) *region_classes = std::move(classes);
  return out;
}

FrameResult StreamState::process_frame(const Frame& frame, const SemanticMap* sem_pred) {
  if (frame_index_ == 0) {
    width_ = frame.width;
    height_ = frame.height;
  } else if (frame.width != width_ || frame.height != height_) {
    throw std::runtime_error("frame dimensions changed mid-stream");
  }
  if (sem_pred && (sem_pred->width != frame.width || sem_pred->height != frame.height))
    throw std::runtime_error("semantic map dimensions do not match the frame");

  FrameResult result;
  StageTimer timer{result.timings};

  Frame smoothed = gaussian_smooth(frame, params_.sigma);
  timer.lap("smooth");

  SortedPixelGraph graph = build_graph(smoothed);
  if (sem_pred && params_.c_sem > 0)
    graph = add_semantic_contour_bonus(graph, *sem_pred, static_cast<float>(params_.c_sem));
  timer.lap("graph");

  RegionForest forest = segment_fh(graph, params_.k);
  timer.lap("fh");
  remove_small_regions(forest, graph, static_cast<int>(params_.delta));
  timer.lap("small");

  const double diag = std::hypot(width_, height_);

  if (frame_index_ == 0) {
    // first frame: the independent segmentation is the stream result
    result.seg = forest_to_segmentation(forest, smoothed, alloc_.next_label);
    alloc_.reserve_through(alloc_.next_label +
                           static_cast<std::uint32_t>(result.seg.regions.size()));
    timer.lap("regions");
    if (sem_pred) {
      std::unordered_map<std::uint32_t, int> classes;
      result.semantics = propagate_semantics(result.seg, result.flow, {}, *sem_pred,
                                             params_.flow_max_frac * diag, &classes);
      prev_sem_ = std::move(classes);
    }
    timer.lap("semantics");
  } else {
    // independent segmentation uses scratch labels; stream labels come from the seeds
    Segmentation cur_ind = forest_to_segmentation(forest, smoothed, 0);
    timer.lap("regions");

    std::vector<MatchEdge> edges =
        build_match_graph(*prev_, cur_ind, params_.match_radius_frac * diag);
    Matching matching = compute_best_matches(edges);
    timer.lap("match");

    MarkerMap markers =
        generate_markers(matching, *prev_, cur_ind, alloc_, params_.theta());
    SafetyReport report = safety_check(markers, cur_ind, params_.tau_safe);
    if (!report.pass)
      markers = erode_correct(markers, cur_ind, report, params_.erosion_iters, alloc_);
    timer.lap("markers");

    SeededLabeling labeling = msf_label(graph, markers, alloc_);
    result.seg = make_segmentation(std::move(labeling.labels), width_, height_, smoothed);
    timer.lap("msf");

    result.flow = compute_flow(*prev_, result.seg);
    timer.lap("flow");

    if (sem_pred) {
      std::unordered_map<std::uint32_t, int> classes;
      result.semantics = propagate_semantics(result.seg, result.flow, prev_sem_, *sem_pred,
                                             params_.flow_max_frac * diag, &classes);
      prev_sem_ = std::move(classes);
    }
    timer.lap("semantics");
  }

  // drop semantic entries for labels that left the stream
  if (!prev_sem_.empty()) {
    for (auto it = prev_sem_.begin(); it != prev_sem_.end();)
      it = result.seg.region_index.contains(it->first) ? std::next(it) : prev_sem_.erase(it);
  }

  prev_ = result.seg;
  ++frame_index_;
  return result;
}

}  // namespace vseg
