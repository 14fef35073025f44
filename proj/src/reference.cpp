#include "sktext/reference.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace sktext::reference {

GrayImage to_grayscale(const ColorImage& img) {
  GrayImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const Rgb p = img(x, y);
      const double v = 0.299 * p.r + 0.587 * p.g + 0.114 * p.b;
      out(x, y) = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5 + 1e-9), 0.0, 255.0));
    }
  }
  return out;
}

GrayImage median_filter(const GrayImage& img, int radius) {
  GrayImage out(img.width(), img.height());
  std::vector<std::uint8_t> window;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      window.clear();
      for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
          window.push_back(img(std::clamp(x + dx, 0, img.width() - 1),
                               std::clamp(y + dy, 0, img.height() - 1)));
        }
      }
      std::sort(window.begin(), window.end());
      out(x, y) = window[window.size() / 2];
    }
  }
  return out;
}

BinaryImage adaptive_binarize(const GrayImage& img, const BinarizationConfig& cfg) {
  const int r = cfg.window / 2;
  BinaryImage dark(img.width(), img.height()), light(img.width(), img.height());
  const long long n = static_cast<long long>(cfg.window) * cfg.window;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      long long sum = 0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          sum += img(std::clamp(x + dx, 0, img.width() - 1), std::clamp(y + dy, 0, img.height() - 1));
        }
      }
      // mean - C > v  <=>  sum > n * (v + C)
      dark(x, y) = sum > n * (img(x, y) + cfg.offset_c) ? 1 : 0;
      light(x, y) = sum < n * (img(x, y) - cfg.offset_c) ? 1 : 0;
    }
  }
  if (cfg.polarity == Polarity::DarkText) return dark;
  if (cfg.polarity == Polarity::LightText) return light;
  return count_foreground(light) < count_foreground(dark) ? light : dark;
}

MatchResult best_match(const Template& query, const TemplateDatabase& db) {
  std::vector<double> q(query.grid().pixels().begin(), query.grid().pixels().end());
  MatchResult best;
  bool first = true;
  for (std::size_t i = 0; i < db.size(); ++i) {
    const auto& e = db.entries()[i];
    std::vector<double> t(e.glyph.grid().pixels().begin(), e.glyph.grid().pixels().end());
    double mq = 0, mt = 0;
    for (std::size_t k = 0; k < q.size(); ++k) {
      mq += q[k];
      mt += t[k];
    }
    mq /= static_cast<double>(q.size());
    mt /= static_cast<double>(t.size());
    double num = 0, sq = 0, st = 0;
    for (int row = 0; row < kTemplateRows; ++row) {
      for (int col = 0; col < kTemplateCols; ++col) {
        const std::size_t k = static_cast<std::size_t>(row) * kTemplateCols + col;
        num += (q[k] - mq) * (t[k] - mt);
        sq += (q[k] - mq) * (q[k] - mq);
        st += (t[k] - mt) * (t[k] - mt);
      }
    }
    const bool degenerate = sq == 0 || st == 0;
    const double score = degenerate ? 0.0 : num / std::sqrt(sq * st);
    if (first || score > best.score) {
      best = MatchResult{*e.glyph.label(), e.font_tag, score, degenerate, i};
      first = false;
    }
  }
  return best;
}

BinaryImage dilate(const BinaryImage& img, int width, int height) {
  BinaryImage out(img.width(), img.height(), 0);
  const int bx = width / 2, ax = width - 1 - bx;
  const int by = height / 2, ay = height - 1 - by;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      bool any = false;
      for (int dy = -by; dy <= ay && !any; ++dy) {
        for (int dx = -bx; dx <= ax && !any; ++dx) {
          any = img.contains(x + dx, y + dy) && img(x + dx, y + dy);
        }
      }
      out(x, y) = any ? 1 : 0;
    }
  }
  return out;
}

}  // namespace sktext::reference
