#include "sktext/components.hpp"

#include <algorithm>
#include <limits>

#include "sktext/disjoint_set.hpp"

namespace sktext {

long long compute_edge_area(const BinaryImage& crop) {
  const int w = crop.width();
  const int h = crop.height();
  auto fg = [&](int x, int y) { return crop.contains(x, y) && crop(x, y) != 0; };
  long long edges = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!fg(x, y)) continue;
      if (!fg(x - 1, y) || !fg(x + 1, y) || !fg(x, y - 1) || !fg(x, y + 1)) ++edges;
    }
  }
  return edges;
}

ComponentBlock make_block(int label, const Box& bbox, BinaryImage crop) {
  ComponentBlock block;
  block.label = label;
  block.bbox = bbox;
  block.area = static_cast<long long>(count_foreground(crop));
  block.edge_area = compute_edge_area(crop);
  block.aspect_ratio = static_cast<double>(bbox.width) / bbox.height;
  block.density = static_cast<double>(block.edge_area) / static_cast<double>(bbox.area());
  block.crop = std::move(crop);
  return block;
}

Labeling label_components(const BinaryImage& bin, Connectivity connectivity) {
  const int w = bin.width();
  const int h = bin.height();
  LabelMap provisional(w, h, 0);
  DisjointSet sets(1);  // slot 0 is background

  // Pass 1: provisional labels, recording equivalences with the already
  // scanned neighbours (W, N and, for 8-connectivity, NW and NE).
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (bin(x, y) == 0) continue;
      std::int32_t current = 0;
      auto visit = [&](int nx, int ny) {
        if (!bin.contains(nx, ny)) return;
        const std::int32_t l = provisional(nx, ny);
        if (l == 0) return;
        if (current == 0) {
          current = l;
        } else if (l != current) {
          sets.unite(static_cast<std::uint32_t>(current), static_cast<std::uint32_t>(l));
        }
      };
      visit(x - 1, y);
      visit(x, y - 1);
      if (connectivity == Connectivity::Eight) {
        visit(x - 1, y - 1);
        visit(x + 1, y - 1);
      }
      if (current == 0) current = static_cast<std::int32_t>(sets.add());
      provisional(x, y) = current;
    }
  }

  // Pass 2: resolve to final labels in first-touch raster order.
  std::vector<std::int32_t> final_of(sets.size(), 0);
  std::int32_t next = 0;
  Labeling out{LabelMap(w, h, 0), {}};
  struct Extent {
    int x0 = std::numeric_limits<int>::max(), y0 = std::numeric_limits<int>::max();
    int x1 = -1, y1 = -1;
  };
  std::vector<Extent> extents;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::int32_t p = provisional(x, y);
      if (p == 0) continue;
      const auto root = sets.find(static_cast<std::uint32_t>(p));
      if (final_of[root] == 0) {
        final_of[root] = ++next;
        extents.emplace_back();
      }
      const std::int32_t label = final_of[root];
      out.labels(x, y) = label;
      Extent& e = extents[label - 1];
      e.x0 = std::min(e.x0, x);
      e.y0 = std::min(e.y0, y);
      e.x1 = std::max(e.x1, x);
      e.y1 = std::max(e.y1, y);
    }
  }

  out.blocks.reserve(extents.size());
  for (std::int32_t label = 1; label <= next; ++label) {
    const Extent& e = extents[label - 1];
    const Box bbox{e.x0, e.y0, e.x1 - e.x0 + 1, e.y1 - e.y0 + 1};
    BinaryImage crop(bbox.width, bbox.height, 0);
    for (int y = 0; y < bbox.height; ++y) {
      for (int x = 0; x < bbox.width; ++x) {
        crop(x, y) = out.labels(bbox.x + x, bbox.y + y) == label ? 1 : 0;
      }
    }
    out.blocks.push_back(make_block(label, bbox, std::move(crop)));
  }
  return out;
}

}  // namespace sktext
