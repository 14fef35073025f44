#pragma once

#include <cstdint>
#include <optional>

#include "sktext/image.hpp"

namespace sktext {

enum class BinarizationMode { Auto, Global, Adaptive };

/// Which intensity side becomes foreground. `Auto` picks whichever side
/// produces fewer foreground pixels (ties keep dark text).
enum class Polarity { Auto, DarkText, LightText };

struct BinarizationConfig {
  BinarizationMode mode = BinarizationMode::Auto;
  std::optional<int> global_threshold;  // Otsu when absent
  int window = 15;                      // odd, >= 3
  int offset_c = 7;
  double uniformity_cutoff = 18.0;
  Polarity polarity = Polarity::Auto;

  /// Throws std::invalid_argument on a malformed configuration.
  void validate() const;
};

/// Intensity t maximizing between-class variance of the split {<= t, > t}.
/// Ties go to the smaller t; images with a single intensity return it.
int otsu_threshold(const GrayImage& img);

/// Foreground where intensity < t (DarkText), or the complement (LightText).
BinaryImage global_binarize(const GrayImage& img, int t, Polarity polarity = Polarity::Auto);

/// Foreground where intensity < windowed mean - C (DarkText) or
/// intensity > windowed mean + C (LightText). Means are exact; borders
/// replicate the edge.
BinaryImage adaptive_binarize(const GrayImage& img, const BinarizationConfig& cfg);

/// Standard deviation of the 16 cell means of a 4x4 grid over the image.
double cell_mean_deviation(const GrayImage& img);

/// Global when the background looks uniform, adaptive otherwise.
BinarizationMode select_mode(const GrayImage& img, const BinarizationConfig& cfg);

/// Full front end: resolves Auto mode, picks Otsu when no global threshold
/// is configured.
BinaryImage binarize(const GrayImage& img, const BinarizationConfig& cfg);

}  // namespace sktext
