#pragma once

#include <cstdint>
#include <vector>

#include "sktext/image.hpp"

namespace sktext {

enum class Connectivity { Four = 4, Eight = 8 };

/// 0 is background; components are numbered 1..K in first-touch raster order.
using LabelMap = Image<std::int32_t>;

/// One connected component with the geometry the localizer rules consume.
struct ComponentBlock {
  int label = 0;
  Box bbox;
  long long area = 0;   // foreground pixel count
  BinaryImage crop;     // bbox-sized; other components masked out
  double aspect_ratio = 0.0;  // bbox width / height
  long long edge_area = 0;    // boundary pixel count
  double density = 0.0;       // edge_area / (width * height)
};

struct Labeling {
  LabelMap labels;
  std::vector<ComponentBlock> blocks;  // blocks[i].label == i + 1
};

Labeling label_components(const BinaryImage& bin, Connectivity connectivity);

/// Foreground pixels with at least one 4-neighbour that is background or
/// outside the crop.
long long compute_edge_area(const BinaryImage& crop);

/// Fills area, aspect ratio, edge area and density from `crop` and `bbox`.
ComponentBlock make_block(int label, const Box& bbox, BinaryImage crop);

}  // namespace sktext
