#pragma once

#include <string>

#include "vseg/frame.hpp"
#include "vseg/segmentation.hpp"

namespace vseg {

// Binary PPM (P6). 16-bit samples are rescaled to [0,255].
Frame load_ppm(const std::string& path);
void save_ppm(const Frame& frame, const std::string& path);

// Binary PGM (P5), 8-bit, used for semantic class maps.
SemanticMap load_pgm(const std::string& path);
void save_pgm(const SemanticMap& map, const std::string& path);

// Separable Gaussian, kernel radius ceil(3*sigma), clamp-to-edge borders.
// sigma < 0.01 returns the input unchanged.
Frame gaussian_smooth(const Frame& frame, double sigma);

// Raw label format: "SEGL" + u16 width + u16 height + u32 labels, all
// little-endian, row-major.
void write_label_map(const Segmentation& seg, const std::string& path);
Segmentation read_label_map(const std::string& path, const Frame* frame = nullptr);

// Deterministic pseudo-random color for a label id.
Rgb label_color(std::uint32_t label);
void write_label_colors(const Segmentation& seg, const std::string& path);

// CSV lines "label,dx,dy,valid", one header line.
void write_flow(const FlowMap& flow, const std::string& path);
// Per-region color-wheel visualization of the flow.
void write_flow_viz(const FlowMap& flow, const Segmentation& seg, const std::string& path);

}  // namespace vseg
