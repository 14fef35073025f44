#pragma once

#include <optional>

#include "sktext/image.hpp"

namespace sktext {

inline constexpr int kTemplateRows = 42;
inline constexpr int kTemplateCols = 24;
inline constexpr int kTemplateCells = kTemplateRows * kTemplateCols;

/// A 42x24 binary skeleton, optionally tagged with the character it depicts.
class Template {
 public:
  /// Throws std::invalid_argument unless `grid` is 24 wide, 42 tall, {0,1}.
  explicit Template(BinaryImage grid, std::optional<char> label = std::nullopt);

  const BinaryImage& grid() const { return grid_; }
  std::optional<char> label() const { return label_; }
  void set_label(std::optional<char> label) { label_ = label; }

  friend bool operator==(const Template&, const Template&) = default;

 private:
  BinaryImage grid_;
  std::optional<char> label_;
};

/// Zhang-Suen two-subcycle thinning run to convergence. Each marked pixel is
/// re-checked against the partially thinned image before removal, and any
/// 2x2 block left at convergence loses a simple pixel; both keep the
/// 8-connected component count intact. Throws on an all-background input.
BinaryImage skeletonize(const BinaryImage& crop);

/// Minimal bounding-box crop of the foreground. Throws on empty input.
BinaryImage tight_crop(const BinaryImage& img);

/// Binary resampling by footprint coverage. An output pixel is set when the
/// foreground share of its source footprint reaches 0.5 / max(1, fx, fy),
/// fx and fy being the footprint extents in source pixels; that is plain 50%
/// coverage when upscaling and the share a one-pixel stroke occupies when
/// shrinking. Falls back to nearest-neighbour if nothing survives.
BinaryImage resample_coverage(const BinaryImage& img, int width, int height);

/// tight_crop -> resample_coverage to 42x24 -> skeletonize. Accepts filled
/// glyphs as well as skeletons. Throws on empty input.
Template normalize_template(const BinaryImage& shape);

}  // namespace sktext
