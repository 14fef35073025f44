#include "sktext/localizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "sktext/disjoint_set.hpp"

namespace sktext {

RuleThresholds compute_thresholds(const std::vector<ComponentBlock>& blocks,
                                  ThresholdPairing pairing) {
  if (blocks.empty()) throw std::invalid_argument("thresholds need at least one block");
  const double n = static_cast<double>(blocks.size());
  auto mean_of = [&](auto field) {
    double s = 0.0;
    for (const auto& b : blocks) s += field(b);
    return s / n;
  };
  auto stddev_of = [&](auto field) {
    const double m = mean_of(field);
    double s = 0.0;
    for (const auto& b : blocks) s += (field(b) - m) * (field(b) - m);
    return std::sqrt(s / n);
  };
  auto aspect = [](const ComponentBlock& b) { return b.aspect_ratio; };
  auto density = [](const ComponentBlock& b) { return b.density; };
  if (pairing == ThresholdPairing::MeanAspectStdDensity) {
    return {mean_of(aspect), stddev_of(density)};
  }
  return {mean_of(density), stddev_of(aspect)};
}

RuleLimits RuleLimits::scaled(double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("rule scale must be positive");
  return {50 * scale, 6 * scale, 5 * scale, 24 * scale * scale};
}

bool rejected(const ComponentBlock& block, const RuleThresholds& th, const RuleLimits& limits) {
  const double h = block.bbox.height;
  const double w = block.bbox.width;
  if (block.aspect_ratio < th.t1 || block.density < th.t2) return true;
  if (h > limits.max_height || h < limits.min_height) return true;
  if (w < limits.min_width || h * w < limits.min_area) return true;
  return false;
}

std::vector<ComponentBlock> geometric_filter(const std::vector<ComponentBlock>& blocks,
                                             const RuleThresholds& th, const RuleLimits& limits) {
  std::vector<ComponentBlock> kept;
  for (const auto& b : blocks) {
    if (!rejected(b, th, limits)) kept.push_back(b);
  }
  return kept;
}

void LocalizerConfig::validate() const {
  if (!(dilation_width_factor > 0.0)) {
    throw std::invalid_argument("dilation width factor must be positive");
  }
  if (dilation_height < 1) throw std::invalid_argument("dilation height must be >= 1");
}

namespace {

// out[x] = max of in[x - before .. x + after].
void dilate_rows(const BinaryImage& src, BinaryImage& dst, int length) {
  const int before = length / 2;
  const int after = length - 1 - before;
  const int w = src.width();
#pragma omp parallel for schedule(static)
  for (int y = 0; y < src.height(); ++y) {
    const std::uint8_t* in = src.row(y);
    std::uint8_t* out = dst.row(y);
    // Distance-to-last-foreground sweep from both sides keeps this O(w).
    int last = -1'000'000;
    for (int x = 0; x < w; ++x) {
      if (in[x]) last = x;
      out[x] = (x - last) <= before ? 1 : 0;
    }
    last = 1'000'000;
    for (int x = w - 1; x >= 0; --x) {
      if (in[x]) last = x;
      if (last - x <= after) out[x] = 1;
    }
  }
}

BinaryImage transpose(const BinaryImage& img) {
  BinaryImage t(img.height(), img.width());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) t(y, x) = img(x, y);
  }
  return t;
}

}  // namespace

BinaryImage dilate(const BinaryImage& img, int width, int height) {
  if (width < 1 || height < 1) throw std::invalid_argument("structuring element must be >= 1x1");
  BinaryImage horizontal(img.width(), img.height());
  dilate_rows(img, horizontal, width);
  const BinaryImage cols = transpose(horizontal);
  BinaryImage vertical(cols.width(), cols.height());
  dilate_rows(cols, vertical, height);
  return transpose(vertical);
}

std::vector<TextBox> merge_text_regions(const std::vector<ScoredBlock>& survivors, int image_width,
                                        int image_height, const LocalizerConfig& cfg) {
  cfg.validate();
  if (survivors.empty()) return {};

  BinaryImage canvas(image_width, image_height, 0);
  std::vector<int> heights;
  for (const auto& s : survivors) {
    const auto& b = s.block;
    heights.push_back(b.bbox.height);
    for (int y = 0; y < b.bbox.height; ++y) {
      for (int x = 0; x < b.bbox.width; ++x) {
        if (b.crop(x, y)) canvas(b.bbox.x + x, b.bbox.y + y) = 1;
      }
    }
  }
  std::sort(heights.begin(), heights.end());
  const std::size_t mid = heights.size() / 2;
  const double median = heights.size() % 2 == 1 ? heights[mid]
                                                 : 0.5 * (heights[mid - 1] + heights[mid]);
  const int element_width =
      std::max(3, static_cast<int>(std::lround(cfg.dilation_width_factor * median)));

  const Labeling groups =
      label_components(dilate(canvas, element_width, cfg.dilation_height), Connectivity::Four);

  // A survivor is 8-connected, so a short element may leave it straddling
  // several 4-connected groups; those groups are merged.
  DisjointSet merged(groups.blocks.size() + 1);
  std::vector<int> group_of(survivors.size(), 0);
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    const auto& b = survivors[i].block;
    for (int y = 0; y < b.bbox.height; ++y) {
      for (int x = 0; x < b.bbox.width; ++x) {
        if (!b.crop(x, y)) continue;
        const int g = groups.labels(b.bbox.x + x, b.bbox.y + y);
        if (group_of[i] == 0) {
          group_of[i] = g;
        } else {
          merged.unite(static_cast<std::uint32_t>(group_of[i]), static_cast<std::uint32_t>(g));
        }
      }
    }
  }

  struct Accum {
    int x0, y0, x1, y1;
    double score_sum;
    int members;
  };
  std::map<std::uint32_t, Accum> boxes;  // keyed by smallest member label
  std::map<std::uint32_t, std::uint32_t> key_of_root;
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    const auto root = merged.find(static_cast<std::uint32_t>(group_of[i]));
    auto [it, inserted] = key_of_root.try_emplace(root, static_cast<std::uint32_t>(group_of[i]));
    if (!inserted) it->second = std::min(it->second, static_cast<std::uint32_t>(group_of[i]));
  }
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    const auto& b = survivors[i].block.bbox;
    const auto key = key_of_root[merged.find(static_cast<std::uint32_t>(group_of[i]))];
    auto [it, inserted] =
        boxes.try_emplace(key, Accum{b.x, b.y, b.right(), b.bottom(), 0.0, 0});
    Accum& a = it->second;
    a.x0 = std::min(a.x0, b.x);
    a.y0 = std::min(a.y0, b.y);
    a.x1 = std::max(a.x1, b.right());
    a.y1 = std::max(a.y1, b.bottom());
    a.score_sum += survivors[i].score;
    ++a.members;
  }

  std::vector<TextBox> out;
  out.reserve(boxes.size());
  for (const auto& [key, a] : boxes) {
    out.push_back(TextBox{Box{a.x0, a.y0, a.x1 - a.x0, a.y1 - a.y0}, a.score_sum / a.members,
                          cfg.granularity});
  }
  return out;
}

}  // namespace sktext
