#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace vseg {

using Rgb = std::array<float, 3>;

// Dense RGB raster, channels in [0,255], row-major.
struct Frame {
  int width = 0;
  int height = 0;
  std::vector<Rgb> pixels;

  Rgb& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  const Rgb& at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
  int pixel_count() const { return width * height; }
};

Frame make_frame(int width, int height, Rgb fill = {0.f, 0.f, 0.f});

// Per-pixel class ids over a small alphabet.
struct SemanticMap {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> classes;

  std::uint8_t at(int x, int y) const {
    return classes[static_cast<std::size_t>(y) * width + x];
  }
};

}  // namespace vseg
