#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "vseg/imageio.hpp"

using namespace vseg;
namespace fs = std::filesystem;

namespace {

std::string tmp_path(const char* name) {
  return (fs::temp_directory_path() / name).string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_CASE("ppm decode: 2x2 all black") {
  std::string p = tmp_path("io_black.ppm");
  write_file(p, std::string("P6\n2 2\n255\n") + std::string(12, '\0'));
  Frame f = load_ppm(p);
  CHECK(f.width == 2);
  CHECK(f.height == 2);
  for (const Rgb& px : f.pixels)
    for (int c = 0; c < 3; ++c) CHECK(px[c] == 0.0f);
}

TEST_CASE("ppm decode: distinct pixels keep row-major order") {
  std::string p = tmp_path("io_order.ppm");
  unsigned char payload[12] = {10, 11, 12, 20, 21, 22, 30, 31, 32, 40, 41, 42};
  write_file(p, std::string("P6\n2 2\n255\n") +
                    std::string(reinterpret_cast<char*>(payload), 12));
  Frame f = load_ppm(p);
  CHECK(f.at(0, 0)[0] == 10.0f);
  CHECK(f.at(1, 0)[0] == 20.0f);
  CHECK(f.at(0, 1)[0] == 30.0f);
  CHECK(f.at(1, 1)[2] == 42.0f);
}

TEST_CASE("ppm decode: truncated header is a format error") {
  std::string p = tmp_path("io_trunc.ppm");
  write_file(p, "P6\n2 ");
  CHECK_THROWS(load_ppm(p));
}

TEST_CASE("ppm decode: unsupported magic names the format") {
  std::string p = tmp_path("io_p3.ppm");
  write_file(p, "P3\n2 2\n255\n0 0 0 0 0 0 0 0 0 0 0 0\n");
  CHECK_THROWS_WITH_AS(load_ppm(p), doctest::Contains("P3"), std::runtime_error);
}

TEST_CASE("ppm round trip") {
  Frame f = make_frame(3, 2);
  for (int i = 0; i < 6; ++i) f.pixels[static_cast<std::size_t>(i)] = {float(i), float(i * 2), float(255 - i)};
  std::string p = tmp_path("io_rt.ppm");
  save_ppm(f, p);
  Frame g = load_ppm(p);
  CHECK(g.pixels == f.pixels);
}

TEST_CASE("gaussian: constant image unchanged for any sigma") {
  Frame f = make_frame(7, 5, {120.f, 60.f, 30.f});
  for (double sigma : {0.0, 0.5, 2.0}) {
    Frame g = gaussian_smooth(f, sigma);
    for (const Rgb& px : g.pixels)
      for (int c = 0; c < 3; ++c) CHECK(px[c] == doctest::Approx(f.pixels[0][c]).epsilon(1e-6));
  }
}

TEST_CASE("gaussian: sigma zero is the identity") {
  Frame f = make_frame(4, 4);
  f.at(1, 2) = {200.f, 10.f, 50.f};
  Frame g = gaussian_smooth(f, 0.0);
  CHECK(g.pixels == f.pixels);
}

TEST_CASE("gaussian: impulse response matches a dense convolution oracle") {
  const double sigma = 0.8;
  const int w = 16, h = 16;
  Frame f = make_frame(w, h);
  f.at(8, 8) = {100.f, 100.f, 100.f};
  Frame g = gaussian_smooth(f, sigma);

  // dense oracle: normalized separable kernel applied directly
  const int radius = static_cast<int>(std::ceil(3 * sigma));
  std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
  double norm = 0;
  for (int i = -radius; i <= radius; ++i)
    norm += kernel[static_cast<std::size_t>(i + radius)] =
        std::exp(-i * i / (2 * sigma * sigma));
  for (double& v : kernel) v /= norm;

  double sum_out = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double expected = 0;
      int dx = x - 8, dy = y - 8;
      if (std::abs(dx) <= radius && std::abs(dy) <= radius)
        expected = 100.0 * kernel[static_cast<std::size_t>(dx + radius)] *
                   kernel[static_cast<std::size_t>(dy + radius)];
      CHECK(g.at(x, y)[0] == doctest::Approx(expected).epsilon(1e-5));
      sum_out += g.at(x, y)[0];
    }
  }
  CHECK(sum_out == doctest::Approx(100.0).epsilon(1e-6));
}

TEST_CASE("label map: header plus payload size, determinism, round trip") {
  Frame f = make_frame(2, 2);
  Segmentation seg = make_segmentation({1, 1, 2, 2}, 2, 2, f);
  std::string p1 = tmp_path("io_seg1.segl"), p2 = tmp_path("io_seg2.segl");
  write_label_map(seg, p1);
  write_label_map(seg, p2);
  std::string bytes = read_file(p1);
  CHECK(bytes.size() == 8 + 16);
  CHECK(bytes.substr(0, 4) == "SEGL");
  CHECK(bytes == read_file(p2));

  Segmentation back = read_label_map(p1);
  CHECK(back.labels == seg.labels);
  CHECK(back.width == 2);
  CHECK(back.height == 2);
}

TEST_CASE("colorization is a pure function of the label id") {
  CHECK(label_color(7) == label_color(7));
  CHECK(label_color(7) != label_color(8));
}

TEST_CASE("flow csv format") {
  std::string p = tmp_path("io_flow.csv");

  SUBCASE("valid entry") {
    FlowMap flow;
    flow.entries.push_back({7, 3.0, 0.0, true});
    write_flow(flow, p);
    CHECK(read_file(p) == "label,dx,dy,valid\n7,3.0,0.0,1\n");
  }
  SUBCASE("invalid entries are written as zero flow") {
    FlowMap flow;
    flow.entries.push_back({9, 5.5, -2.0, false});
    write_flow(flow, p);
    CHECK(read_file(p) == "label,dx,dy,valid\n9,0.0,0.0,0\n");
  }
  SUBCASE("empty map is header-only") {
    write_flow(FlowMap{}, p);
    CHECK(read_file(p) == "label,dx,dy,valid\n");
  }
}

TEST_CASE("pgm round trip") {
  SemanticMap m;
  m.width = 3;
  m.height = 2;
  m.classes = {0, 1, 2, 2, 1, 0};
  std::string p = tmp_path("io_sem.pgm");
  save_pgm(m, p);
  SemanticMap back = load_pgm(p);
  CHECK(back.classes == m.classes);
  CHECK(back.width == 3);
}
