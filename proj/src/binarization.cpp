#include "sktext/binarization.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace sktext {

void BinarizationConfig::validate() const {
  if (window < 3 || window % 2 == 0) {
    throw std::invalid_argument("binarization window must be odd and >= 3, got " +
                                std::to_string(window));
  }
  if (global_threshold && (*global_threshold < 0 || *global_threshold > 255)) {
    throw std::invalid_argument("global threshold must be in [0,255]");
  }
  if (!(uniformity_cutoff >= 0.0)) {
    throw std::invalid_argument("uniformity cutoff must be non-negative");
  }
}

int otsu_threshold(const GrayImage& img) {
  std::array<long long, 256> hist{};
  for (auto v : img.pixels()) ++hist[v];
  const auto distinct = std::count_if(hist.begin(), hist.end(), [](auto c) { return c > 0; });
  if (distinct <= 1) {
    return static_cast<int>(std::find_if(hist.begin(), hist.end(), [](auto c) { return c > 0; }) -
                            hist.begin());
  }

  const long long total = static_cast<long long>(img.size());
  long long sum_all = 0;
  for (int v = 0; v < 256; ++v) sum_all += static_cast<long long>(v) * hist[v];

  // Between-class variance up to the constant 1/total^2:
  // (sum_all * n0 - sum0 * total)^2 / (n0 * n1). The difference is exact.
  long double best = -1.0L;
  int best_t = 0;
  long long n0 = 0;
  long long sum0 = 0;
  for (int t = 0; t < 256; ++t) {
    n0 += hist[t];
    sum0 += static_cast<long long>(t) * hist[t];
    const long long n1 = total - n0;
    if (n0 == 0 || n1 == 0) continue;
    const auto d = static_cast<long double>(sum_all * n0 - sum0 * total);
    const long double var = d * d / (static_cast<long double>(n0) * static_cast<long double>(n1));
    if (var > best) {
      best = var;
      best_t = t;
    }
  }
  return best_t;
}

namespace {

BinaryImage pick_minority(BinaryImage dark, BinaryImage light, Polarity polarity) {
  switch (polarity) {
    case Polarity::DarkText:
      return dark;
    case Polarity::LightText:
      return light;
    case Polarity::Auto:
      break;
  }
  return count_foreground(light) < count_foreground(dark) ? std::move(light) : std::move(dark);
}

}  // namespace

BinaryImage global_binarize(const GrayImage& img, int t, Polarity polarity) {
  if (t < 0 || t > 255) {
    throw std::invalid_argument("global threshold must be in [0,255], got " + std::to_string(t));
  }
  BinaryImage dark(img.width(), img.height());
  BinaryImage light(img.width(), img.height());
  const auto& src = img.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const bool below = src[i] < t;
    dark.pixels()[i] = below ? 1 : 0;
    light.pixels()[i] = below ? 0 : 1;
  }
  return pick_minority(std::move(dark), std::move(light), polarity);
}

BinaryImage adaptive_binarize(const GrayImage& img, const BinarizationConfig& cfg) {
  cfg.validate();
  const int w = img.width();
  const int h = img.height();
  if (cfg.window > w && cfg.window > h) {
    throw std::invalid_argument("adaptive window " + std::to_string(cfg.window) +
                                " exceeds both image dimensions");
  }
  const int r = cfg.window / 2;
  const int pw = w + 2 * r;
  const int ph = h + 2 * r;

  // Integral image over the edge-replicated padding, one extra leading row/column.
  std::vector<long long> integral(static_cast<std::size_t>(pw + 1) * (ph + 1), 0);
  auto at = [&](int x, int y) -> long long& {
    return integral[static_cast<std::size_t>(y) * (pw + 1) + x];
  };
  for (int y = 0; y < ph; ++y) {
    const int sy = std::clamp(y - r, 0, h - 1);
    long long row_sum = 0;
    for (int x = 0; x < pw; ++x) {
      row_sum += img(std::clamp(x - r, 0, w - 1), sy);
      at(x + 1, y + 1) = at(x + 1, y) + row_sum;
    }
  }

  const long long n = static_cast<long long>(cfg.window) * cfg.window;
  const long long cn = static_cast<long long>(cfg.offset_c) * n;
  BinaryImage dark(w, h);
  BinaryImage light(w, h);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      // Window centred on (x, y) spans padded [x, x + window) x [y, y + window).
      const long long sum = at(x + cfg.window, y + cfg.window) - at(x, y + cfg.window) -
                            at(x + cfg.window, y) + at(x, y);
      const long long scaled = static_cast<long long>(img(x, y)) * n;
      dark(x, y) = scaled + cn < sum ? 1 : 0;
      light(x, y) = scaled - cn > sum ? 1 : 0;
    }
  }
  return pick_minority(std::move(dark), std::move(light), cfg.polarity);
}

double cell_mean_deviation(const GrayImage& img) {
  constexpr int kCells = 4;
  std::vector<double> means;
  means.reserve(kCells * kCells);
  for (int cy = 0; cy < kCells; ++cy) {
    const int y0 = cy * img.height() / kCells;
    const int y1 = (cy + 1) * img.height() / kCells;
    for (int cx = 0; cx < kCells; ++cx) {
      const int x0 = cx * img.width() / kCells;
      const int x1 = (cx + 1) * img.width() / kCells;
      if (x1 <= x0 || y1 <= y0) continue;
      double sum = 0.0;
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) sum += img(x, y);
      }
      means.push_back(sum / (static_cast<double>(x1 - x0) * (y1 - y0)));
    }
  }
  double mean = 0.0;
  for (double m : means) mean += m;
  mean /= static_cast<double>(means.size());
  double var = 0.0;
  for (double m : means) var += (m - mean) * (m - mean);
  return std::sqrt(var / static_cast<double>(means.size()));
}

BinarizationMode select_mode(const GrayImage& img, const BinarizationConfig& cfg) {
  return cell_mean_deviation(img) > cfg.uniformity_cutoff ? BinarizationMode::Adaptive
                                                          : BinarizationMode::Global;
}

BinaryImage binarize(const GrayImage& img, const BinarizationConfig& cfg) {
  cfg.validate();
  BinarizationMode mode = cfg.mode;
  if (mode == BinarizationMode::Auto) mode = select_mode(img, cfg);
  if (mode == BinarizationMode::Adaptive) return adaptive_binarize(img, cfg);
  // Otsu's split puts t itself in the dark class; global_binarize is strict.
  const int t = cfg.global_threshold ? *cfg.global_threshold
                                     : std::min(otsu_threshold(img) + 1, 255);
  return global_binarize(img, t, cfg.polarity);
}

}  // namespace sktext
