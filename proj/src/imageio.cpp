#include "vseg/imageio.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace vseg {

Frame make_frame(int width, int height, Rgb fill) {
  Frame f;
  f.width = width;
  f.height = height;
  f.pixels.assign(static_cast<std::size_t>(width) * height, fill);
  return f;
}

namespace {

// Skips whitespace and '#' comments between PNM header tokens.
int next_pnm_int(std::istream& in, const std::string& path) {
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (!std::isspace(c)) {
      break;
    }
    c = in.get();
  }
  if (c == EOF || !std::isdigit(c))
    throw std::runtime_error("malformed PNM header: " + path);
  int value = 0;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    c = in.get();
  }
  return value;
}

void put_u16le(std::ostream& out, std::uint16_t v) {
  char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
  out.write(b, 2);
}

std::uint16_t get_u16le(std::istream& in) {
  unsigned char b[2];
  in.read(reinterpret_cast<char*>(b), 2);
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

}  // namespace

Frame load_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  char magic[2];
  in.read(magic, 2);
  if (!in || magic[0] != 'P') throw std::runtime_error("not a PNM file: " + path);
  if (magic[1] != '6')
    throw std::runtime_error("unsupported format P" + std::string(1, magic[1]) + ": " + path);
  const int w = next_pnm_int(in, path);
  const int h = next_pnm_int(in, path);
  const int maxval = next_pnm_int(in, path);
  if (w < 1 || h < 1 || maxval < 1 || maxval > 65535)
    throw std::runtime_error("malformed PPM dimensions: " + path);
  // single whitespace after maxval already consumed by next_pnm_int

  Frame f = make_frame(w, h);
  const std::size_t n = f.pixels.size() * 3;
  const int bytes_per_sample = maxval > 255 ? 2 : 1;
  std::vector<unsigned char> raw(n * bytes_per_sample);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size())
    throw std::runtime_error("truncated PPM payload: " + path);

  const float scale = 255.0f / static_cast<float>(maxval);
  for (std::size_t i = 0; i < f.pixels.size(); ++i) {
    for (int c = 0; c < 3; ++c) {
      std::size_t k = i * 3 + c;
      int v = bytes_per_sample == 1 ? raw[k] : (raw[2 * k] << 8) | raw[2 * k + 1];
      f.pixels[i][c] = maxval == 255 ? static_cast<float>(v) : v * scale;
    }
  }
  return f;
}

void save_ppm(const Frame& frame, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << "P6\n" << frame.width << " " << frame.height << "\n255\n";
  std::vector<unsigned char> raw;
  raw.reserve(frame.pixels.size() * 3);
  for (const Rgb& px : frame.pixels)
    for (int c = 0; c < 3; ++c)
      raw.push_back(static_cast<unsigned char>(
          std::clamp(std::lround(px[c]), 0L, 255L)));
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

SemanticMap load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  char magic[2];
  in.read(magic, 2);
  if (!in || magic[0] != 'P') throw std::runtime_error("not a PNM file: " + path);
  if (magic[1] != '5')
    throw std::runtime_error("unsupported format P" + std::string(1, magic[1]) + ": " + path);
  const int w = next_pnm_int(in, path);
  const int h = next_pnm_int(in, path);
  const int maxval = next_pnm_int(in, path);
  if (w < 1 || h < 1 || maxval < 1 || maxval > 255)
    throw std::runtime_error("malformed PGM header: " + path);
  SemanticMap m;
  m.width = w;
  m.height = h;
  m.classes.resize(static_cast<std::size_t>(w) * h);
  in.read(reinterpret_cast<char*>(m.classes.data()),
          static_cast<std::streamsize>(m.classes.size()));
  if (static_cast<std::size_t>(in.gcount()) != m.classes.size())
    throw std::runtime_error("truncated PGM payload: " + path);
  return m;
}

void save_pgm(const SemanticMap& map, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << "P5\n" << map.width << " " << map.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(map.classes.data()),
            static_cast<std::streamsize>(map.classes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

Frame gaussian_smooth(const Frame& frame, double sigma) {
  if (sigma < 0.01) return frame;
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<float> kernel(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0;
  for (int i = -radius; i <= radius; ++i) {
    double v = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
    kernel[static_cast<std::size_t>(i + radius)] = static_cast<float>(v);
    sum += v;
  }
  for (float& v : kernel) v = static_cast<float>(v / sum);

  const int w = frame.width, h = frame.height;
  Frame tmp = make_frame(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      Rgb acc{0, 0, 0};
      for (int i = -radius; i <= radius; ++i) {
        int xi = std::clamp(x + i, 0, w - 1);
        const Rgb& px = frame.at(xi, y);
        float kv = kernel[static_cast<std::size_t>(i + radius)];
        for (int c = 0; c < 3; ++c) acc[c] += kv * px[c];
      }
      tmp.at(x, y) = acc;
    }
  }
  Frame out = make_frame(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      Rgb acc{0, 0, 0};
      for (int i = -radius; i <= radius; ++i) {
        int yi = std::clamp(y + i, 0, h - 1);
        const Rgb& px = tmp.at(x, yi);
        float kv = kernel[static_cast<std::size_t>(i + radius)];
        for (int c = 0; c < 3; ++c) acc[c] += kv * px[c];
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

void write_label_map(const Segmentation& seg, const std::string& path) {
  if (seg.width > 0xffff || seg.height > 0xffff)
    throw std::runtime_error("label map dimensions exceed u16");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out.write("SEGL", 4);
  put_u16le(out, static_cast<std::uint16_t>(seg.width));
  put_u16le(out, static_cast<std::uint16_t>(seg.height));
  for (std::uint32_t label : seg.labels) {
    char b[4] = {static_cast<char>(label & 0xff), static_cast<char>((label >> 8) & 0xff),
                 static_cast<char>((label >> 16) & 0xff),
                 static_cast<char>((label >> 24) & 0xff)};
    out.write(b, 4);
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

Segmentation read_label_map(const std::string& path, const Frame* frame) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "SEGL", 4) != 0)
    throw std::runtime_error("not a SEGL file: " + path);
  const int w = get_u16le(in);
  const int h = get_u16le(in);
  std::vector<std::uint32_t> labels(static_cast<std::size_t>(w) * h);
  for (std::uint32_t& label : labels) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    label = static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
            (static_cast<std::uint32_t>(b[2]) << 16) |
            (static_cast<std::uint32_t>(b[3]) << 24);
  }
  if (!in) throw std::runtime_error("truncated SEGL payload: " + path);
  Frame blank;
  if (!frame) {
    blank = make_frame(w, h);
    frame = &blank;
  }
  return make_segmentation(std::move(labels), w, h, *frame);
}

Rgb label_color(std::uint32_t label) {
  // splitmix64 of the label id
  std::uint64_t z = static_cast<std::uint64_t>(label) + 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  z = z ^ (z >> 31);
  return {static_cast<float>(z & 0xff), static_cast<float>((z >> 8) & 0xff),
          static_cast<float>((z >> 16) & 0xff)};
}

void write_label_colors(const Segmentation& seg, const std::string& path) {
  Frame img = make_frame(seg.width, seg.height);
  for (std::size_t i = 0; i < seg.labels.size(); ++i)
    img.pixels[i] = label_color(seg.labels[i]);
  save_ppm(img, path);
}

namespace {

// %g, but always with a decimal point so "3" reads as "3.0".
std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  std::string s(buf);
  if (s.find_first_of(".einf") == std::string::npos) s += ".0";
  return s;
}

}  // namespace

void write_flow(const FlowMap& flow, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << "label,dx,dy,valid\n";
  std::vector<FlowEntry> sorted = flow.entries;
  std::sort(sorted.begin(), sorted.end(),
            [](const FlowEntry& a, const FlowEntry& b) { return a.label < b.label; });
  for (const FlowEntry& e : sorted)
    out << e.label << "," << fmt_real(e.valid ? e.dx : 0.0) << ","
        << fmt_real(e.valid ? e.dy : 0.0) << "," << (e.valid ? 1 : 0) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_flow_viz(const FlowMap& flow, const Segmentation& seg, const std::string& path) {
  double max_mag = 1e-9;
  for (const FlowEntry& e : flow.entries)
    if (e.valid) max_mag = std::max(max_mag, std::hypot(e.dx, e.dy));
  std::unordered_map<std::uint32_t, Rgb> colors;
  for (const FlowEntry& e : flow.entries) {
    if (!e.valid) {
      colors[e.label] = {64.f, 64.f, 64.f};
      continue;
    }
    // hue from direction, saturation from magnitude
    double angle = std::atan2(e.dy, e.dx);  // [-pi, pi]
    double mag = std::hypot(e.dx, e.dy) / max_mag;
    double hue = (angle + M_PI) / (2 * M_PI) * 6.0;
    int sector = static_cast<int>(hue) % 6;
    double f = hue - std::floor(hue);
    double p = 1.0 - mag, qv = 1.0 - mag * f, t = 1.0 - mag * (1.0 - f);
    double r, g, b;
    switch (sector) {
      case 0: r = 1; g = t; b = p; break;
      case 1: r = qv; g = 1; b = p; break;
      case 2: r = p; g = 1; b = t; break;
      case 3: r = p; g = qv; b = 1; break;
      case 4: r = t; g = p; b = 1; break;
      default: r = 1; g = p; b = qv; break;
    }
    colors[e.label] = {static_cast<float>(255 * r), static_cast<float>(255 * g),
                       static_cast<float>(255 * b)};
  }
  Frame img = make_frame(seg.width, seg.height);
  for (std::size_t i = 0; i < seg.labels.size(); ++i) {
    auto it = colors.find(seg.labels[i]);
    img.pixels[i] = it == colors.end() ? Rgb{0.f, 0.f, 0.f} : it->second;
  }
  save_ppm(img, path);
}

}  // namespace vseg
