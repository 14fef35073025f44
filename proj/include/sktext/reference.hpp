#pragma once

// Straightforward serial versions of the parallel kernels. They share no
// code with the optimized paths and exist for cross-checking and benchmarks.

#include "sktext/binarization.hpp"
#include "sktext/image.hpp"
#include "sktext/matcher.hpp"

namespace sktext::reference {

GrayImage to_grayscale(const ColorImage& img);
/// Sorts every window.
GrayImage median_filter(const GrayImage& img, int radius);
/// Sums every window directly; same polarity rule as the fast path.
BinaryImage adaptive_binarize(const GrayImage& img, const BinarizationConfig& cfg);
/// Double-loop correlation against every entry, serially.
MatchResult best_match(const Template& query, const TemplateDatabase& db);
/// Scans the full structuring element at every pixel.
BinaryImage dilate(const BinaryImage& img, int width, int height);

}  // namespace sktext::reference
