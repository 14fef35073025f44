#pragma once

#include <vector>

#include "sktext/components.hpp"
#include "sktext/image.hpp"

namespace sktext {

/// Which statistic feeds which threshold of rule i.
enum class ThresholdPairing {
  /// T1 = mean aspect ratio, T2 = population stddev of density.
  MeanAspectStdDensity,
  /// T1 = mean density, T2 = population stddev of aspect ratio.
  MeanDensityStdAspect,
};

struct RuleThresholds {
  double t1 = 0.0;
  double t2 = 0.0;
};

/// Throws std::invalid_argument on an empty list.
RuleThresholds compute_thresholds(const std::vector<ComponentBlock>& blocks,
                                  ThresholdPairing pairing = ThresholdPairing::MeanAspectStdDensity);

/// Pixel limits of rules ii and iii. `scale` multiplies the lengths and,
/// squared, the area.
struct RuleLimits {
  double max_height = 50;
  double min_height = 6;
  double min_width = 5;
  double min_area = 24;

  static RuleLimits scaled(double scale);
};

/// True when any rejection rule fires:
///   i)   AR < T1 or density < T2
///   ii)  height > 50 or height < 6
///   iii) width < 5 or height * width < 24
bool rejected(const ComponentBlock& block, const RuleThresholds& th, const RuleLimits& limits = {});

/// Blocks no rule rejects, in input order.
std::vector<ComponentBlock> geometric_filter(const std::vector<ComponentBlock>& blocks,
                                             const RuleThresholds& th,
                                             const RuleLimits& limits = {});

enum class Granularity { Word, Line };

struct LocalizerConfig {
  Granularity granularity = Granularity::Word;
  double dilation_width_factor = 0.5;  // times the median survivor height
  int dilation_height = 3;

  static LocalizerConfig word() { return {Granularity::Word, 0.5, 3}; }
  static LocalizerConfig line() { return {Granularity::Line, 1.5, 3}; }
  void validate() const;
};

struct TextBox {
  Box box;
  double score = 0.0;
  Granularity granularity = Granularity::Word;
  friend bool operator==(const TextBox&, const TextBox&) = default;
};

/// A survivor block with its match score.
struct ScoredBlock {
  ComponentBlock block;
  double score = 0.0;
};

/// Binary dilation by a centred width x height rectangle.
BinaryImage dilate(const BinaryImage& img, int width, int height);

/// Paints the survivors, dilates them, relabels with 4-connectivity and
/// boxes each group. A box is the union of its members' bounding boxes and
/// scores their mean match score; groups are ordered by label.
std::vector<TextBox> merge_text_regions(const std::vector<ScoredBlock>& survivors, int image_width,
                                        int image_height, const LocalizerConfig& cfg);

}  // namespace sktext
