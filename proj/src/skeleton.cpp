#include "sktext/skeleton.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace sktext {

Template::Template(BinaryImage grid, std::optional<char> label)
    : grid_(std::move(grid)), label_(label) {
  if (grid_.width() != kTemplateCols || grid_.height() != kTemplateRows) {
    throw std::invalid_argument("template grid must be 42 rows x 24 columns, got " +
                                std::to_string(grid_.height()) + "x" +
                                std::to_string(grid_.width()));
  }
  for (auto v : grid_.pixels()) {
    if (v > 1) throw std::invalid_argument("template grid values must be 0 or 1");
  }
}

namespace {

// Neighbours in Zhang-Suen order: P2 (north) clockwise to P9 (north-west).
constexpr std::array<int, 8> kDx{0, 1, 1, 1, 0, -1, -1, -1};
constexpr std::array<int, 8> kDy{-1, -1, 0, 1, 1, 1, 0, -1};

std::array<int, 8> neighbours(const BinaryImage& img, int x, int y) {
  std::array<int, 8> n{};
  for (int k = 0; k < 8; ++k) {
    const int nx = x + kDx[k];
    const int ny = y + kDy[k];
    n[k] = img.contains(nx, ny) && img(nx, ny) != 0 ? 1 : 0;
  }
  return n;
}

bool deletable(const BinaryImage& img, int x, int y, int pass) {
  const auto p = neighbours(img, x, y);
  const int b = p[0] + p[1] + p[2] + p[3] + p[4] + p[5] + p[6] + p[7];
  if (b < 2 || b > 6) return false;
  int a = 0;
  for (int k = 0; k < 8; ++k) a += (p[k] == 0 && p[(k + 1) % 8] == 1) ? 1 : 0;
  if (a != 1) return false;
  // p[0]=P2 N, p[2]=P4 E, p[4]=P6 S, p[6]=P8 W
  if (pass == 0) return p[0] * p[2] * p[4] == 0 && p[2] * p[4] * p[6] == 0;
  return p[0] * p[2] * p[6] == 0 && p[0] * p[4] * p[6] == 0;
}

// Yokoi connectivity number for 8-connected foreground; 1 means simple.
int connectivity_number(const BinaryImage& img, int x, int y) {
  const auto p = neighbours(img, x, y);
  int c = 0;
  for (int k = 0; k < 8; k += 2) {
    const int a = 1 - p[k];
    const int b = 1 - p[(k + 1) % 8];
    const int d = 1 - p[(k + 2) % 8];
    c += a - a * b * d;
  }
  return c;
}

bool thinning_pass(BinaryImage& img, int pass) {
  const int w = img.width();
  const int h = img.height();
  std::vector<std::uint8_t> marked(img.size(), 0);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (img(x, y) != 0 && deletable(img, x, y, pass)) {
        marked[static_cast<std::size_t>(y) * w + x] = 1;
      }
    }
  }
  bool changed = false;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (marked[static_cast<std::size_t>(y) * w + x] == 0) continue;
      if (!deletable(img, x, y, pass)) continue;
      img(x, y) = 0;
      changed = true;
    }
  }
  return changed;
}

bool break_square_blocks(BinaryImage& img) {
  bool changed = false;
  for (int y = 0; y + 1 < img.height(); ++y) {
    for (int x = 0; x + 1 < img.width(); ++x) {
      if (!(img(x, y) && img(x + 1, y) && img(x, y + 1) && img(x + 1, y + 1))) continue;
      constexpr std::array<std::array<int, 2>, 4> kOrder{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}};
      for (const auto& [ox, oy] : kOrder) {
        if (connectivity_number(img, x + ox, y + oy) == 1) {
          img(x + ox, y + oy) = 0;
          changed = true;
          break;
        }
      }
    }
  }
  return changed;
}

}  // namespace

BinaryImage skeletonize(const BinaryImage& crop) {
  if (count_foreground(crop) == 0) {
    throw std::invalid_argument("cannot skeletonize an empty image");
  }
  BinaryImage img = crop;
  for (auto& v : img.pixels()) v = v ? 1 : 0;
  do {
    bool changed = true;
    while (changed) {
      changed = thinning_pass(img, 0);
      changed = thinning_pass(img, 1) || changed;
    }
  } while (break_square_blocks(img));
  return img;
}

BinaryImage tight_crop(const BinaryImage& img) {
  int x0 = img.width(), y0 = img.height(), x1 = -1, y1 = -1;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (img(x, y) == 0) continue;
      x0 = std::min(x0, x);
      y0 = std::min(y0, y);
      x1 = std::max(x1, x);
      y1 = std::max(y1, y);
    }
  }
  if (x1 < 0) throw std::invalid_argument("cannot crop an empty image");
  return crop(img, Box{x0, y0, x1 - x0 + 1, y1 - y0 + 1});
}

BinaryImage resample_coverage(const BinaryImage& img, int width, int height) {
  const double fx = static_cast<double>(img.width()) / width;
  const double fy = static_cast<double>(img.height()) / height;
  const double threshold = 0.5 / std::max({1.0, fx, fy});
  BinaryImage out(width, height, 0);
  double best_cov = -1.0;
  int best_x = 0, best_y = 0;
  for (int oy = 0; oy < height; ++oy) {
    const double y0 = oy * fy;
    const double y1 = y0 + fy;
    for (int ox = 0; ox < width; ++ox) {
      const double x0 = ox * fx;
      const double x1 = x0 + fx;
      double covered = 0.0;
      for (int y = static_cast<int>(y0); y < img.height() && y < y1; ++y) {
        const double wy = std::min<double>(y + 1, y1) - std::max<double>(y, y0);
        for (int x = static_cast<int>(x0); x < img.width() && x < x1; ++x) {
          if (img(x, y) == 0) continue;
          covered += wy * (std::min<double>(x + 1, x1) - std::max<double>(x, x0));
        }
      }
      const double cov = covered / (fx * fy);
      if (cov >= threshold - 1e-12) out(ox, oy) = 1;
      if (cov > best_cov) {
        best_cov = cov;
        best_x = ox;
        best_y = oy;
      }
    }
  }
  if (count_foreground(out) > 0) return out;

  for (int oy = 0; oy < height; ++oy) {
    const int sy = std::min(img.height() - 1, static_cast<int>((oy + 0.5) * fy));
    for (int ox = 0; ox < width; ++ox) {
      const int sx = std::min(img.width() - 1, static_cast<int>((ox + 0.5) * fx));
      out(ox, oy) = img(sx, sy) ? 1 : 0;
    }
  }
  if (count_foreground(out) == 0 && best_cov > 0.0) out(best_x, best_y) = 1;
  return out;
}

Template normalize_template(const BinaryImage& shape) {
  const BinaryImage cropped = tight_crop(shape);
  const BinaryImage scaled = resample_coverage(cropped, kTemplateCols, kTemplateRows);
  return Template(skeletonize(scaled));
}

}  // namespace sktext
