#include "sktext/image.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace sktext {

GrayImage to_grayscale(const ColorImage& img) {
  GrayImage out(img.width(), img.height());
  const auto& src = img.pixels();
  auto& dst = out.pixels();
  const auto n = static_cast<long long>(src.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) {
    const Rgb p = src[i];
    // Fixed-point BT.601 with weights scaled by 1000; exact for byte inputs.
    const int luma = 299 * p.r + 587 * p.g + 114 * p.b;
    dst[i] = static_cast<std::uint8_t>(std::clamp((luma + 500) / 1000, 0, 255));
  }
  return out;
}

namespace {

inline int clamp_index(int v, int hi) { return std::clamp(v, 0, hi - 1); }

}  // namespace

// Sliding per-row histogram: add the entering column, drop the leaving one.
GrayImage median_filter(const GrayImage& img, int radius) {
  if (radius < 1 || radius >= std::min(img.width(), img.height())) {
    throw std::invalid_argument("median radius must be in [1, min(width,height)), got " +
                                std::to_string(radius));
  }
  const int w = img.width();
  const int h = img.height();
  const int window = 2 * radius + 1;
  const int half = (window * window) / 2;
  GrayImage out(w, h);

#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    std::array<int, 256> hist{};
    auto add_column = [&](int cx, int delta) {
      const int sx = clamp_index(cx, w);
      for (int dy = -radius; dy <= radius; ++dy) {
        hist[img(sx, clamp_index(y + dy, h))] += delta;
      }
    };
    for (int dx = -radius; dx <= radius; ++dx) add_column(dx, +1);
    for (int x = 0; x < w; ++x) {
      if (x > 0) {
        add_column(x - radius - 1, -1);
        add_column(x + radius, +1);
      }
      int seen = 0;
      int v = 0;
      for (; v < 256; ++v) {
        seen += hist[v];
        if (seen > half) break;
      }
      out(x, y) = static_cast<std::uint8_t>(v);
    }
  }
  return out;
}

GrayImage resize_area(const GrayImage& img, int width, int height) {
  GrayImage out(width, height);
  const double sx = static_cast<double>(img.width()) / width;
  const double sy = static_cast<double>(img.height()) / height;
  for (int oy = 0; oy < height; ++oy) {
    const double y0 = oy * sy;
    const double y1 = y0 + sy;
    for (int ox = 0; ox < width; ++ox) {
      const double x0 = ox * sx;
      const double x1 = x0 + sx;
      double acc = 0.0;
      double wsum = 0.0;
      for (int y = static_cast<int>(y0); y < std::min<int>(img.height(), std::ceil(y1)); ++y) {
        const double wy = std::min<double>(y + 1, y1) - std::max<double>(y, y0);
        if (wy <= 0) continue;
        for (int x = static_cast<int>(x0); x < std::min<int>(img.width(), std::ceil(x1)); ++x) {
          const double wx = std::min<double>(x + 1, x1) - std::max<double>(x, x0);
          if (wx <= 0) continue;
          acc += wx * wy * img(x, y);
          wsum += wx * wy;
        }
      }
      out(ox, oy) = static_cast<std::uint8_t>(
          std::clamp(std::lround(wsum > 0 ? acc / wsum : 0.0), 0L, 255L));
    }
  }
  return out;
}

std::size_t count_foreground(const BinaryImage& img) {
  return static_cast<std::size_t>(
      std::count_if(img.pixels().begin(), img.pixels().end(), [](auto v) { return v != 0; }));
}

}  // namespace sktext
