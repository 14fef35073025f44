#include <doctest.h>

#include <map>
#include <random>

#include "sktext/components.hpp"
#include "test_support.hpp"

using namespace sktext;

namespace {

std::set<testing::PixelSet> partition_of(const Labeling& lab) {
  std::map<int, testing::PixelSet> groups;
  for (int y = 0; y < lab.labels.height(); ++y) {
    for (int x = 0; x < lab.labels.width(); ++x) {
      if (lab.labels(x, y) != 0) groups[lab.labels(x, y)].insert({x, y});
    }
  }
  std::set<testing::PixelSet> out;
  for (auto& [label, pixels] : groups) out.insert(std::move(pixels));
  return out;
}

}  // namespace

TEST_CASE("all-background image has no components") {
  const Labeling lab = label_components(BinaryImage(9, 4, 0), Connectivity::Eight);
  CHECK(lab.blocks.empty());
  for (auto v : lab.labels.pixels()) CHECK(v == 0);
}

TEST_CASE("diagonal neighbours depend on connectivity") {
  BinaryImage img(2, 2, 0);
  img(0, 0) = img(1, 1) = 1;
  CHECK(label_components(img, Connectivity::Four).blocks.size() == 2);
  CHECK(label_components(img, Connectivity::Eight).blocks.size() == 1);
}

TEST_CASE("labels equal the flood-fill partition on random images") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const double p = 0.2 + 0.02 * trial;
    const BinaryImage img = testing::random_binary(rng, 64, 64, p);
    for (bool eight : {false, true}) {
      const Labeling lab = label_components(img, eight ? Connectivity::Eight : Connectivity::Four);
      REQUIRE(partition_of(lab) == testing::flood_fill_partition(img, eight));
      REQUIRE(lab.blocks.size() == testing::flood_fill_count(img, eight));
    }
  }
}

TEST_CASE("labels are contiguous in first-touch raster order") {
  std::mt19937_64 rng(4);
  const BinaryImage img = testing::random_binary(rng, 40, 30, 0.4);
  const Labeling lab = label_components(img, Connectivity::Four);
  int next = 1;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const int l = lab.labels(x, y);
      if (l == 0) continue;
      REQUIRE(l <= next);
      if (l == next) ++next;
    }
  }
  CHECK(next - 1 == static_cast<int>(lab.blocks.size()));
  for (std::size_t i = 0; i < lab.blocks.size(); ++i) CHECK(lab.blocks[i].label == static_cast<int>(i) + 1);
  CHECK(label_components(img, Connectivity::Four).labels == lab.labels);
}

TEST_CASE("block geometry and masked crops") {
  BinaryImage img(10, 6, 0);
  // An L shape and a separate pixel inside its bounding box.
  for (int y = 0; y < 5; ++y) img(1, y) = 1;
  for (int x = 1; x < 6; ++x) img(x, 4) = 1;
  img(4, 1) = 1;
  const Labeling lab = label_components(img, Connectivity::Eight);
  REQUIRE(lab.blocks.size() == 2);
  const ComponentBlock& l = lab.blocks[0];
  CHECK(l.bbox == Box{1, 0, 5, 5});
  CHECK(l.area == 9);
  CHECK(l.crop.width() == 5);
  CHECK(l.crop.height() == 5);
  CHECK(l.crop(3, 1) == 0);  // the other component is masked out
  CHECK(l.aspect_ratio == doctest::Approx(1.0));
  CHECK(l.edge_area == 9);
  CHECK(l.density == doctest::Approx(9.0 / 25.0));
  CHECK(lab.blocks[1].bbox == Box{4, 1, 1, 1});
}

TEST_CASE("edge area examples") {
  CHECK(compute_edge_area(BinaryImage(1, 1, 1)) == 1);
  CHECK(compute_edge_area(BinaryImage(4, 4, 1)) == 12);
  CHECK(compute_edge_area(BinaryImage(17, 1, 1)) == 17);
  CHECK(compute_edge_area(BinaryImage(1, 9, 1)) == 9);
  BinaryImage ring(5, 5, 1);
  ring(2, 2) = 0;
  CHECK(compute_edge_area(ring) == 20);
}

TEST_CASE("component invariants on random images") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const BinaryImage img = testing::random_binary(rng, 48, 40, 0.45);
    const Labeling four = label_components(img, Connectivity::Four);
    const Labeling eight = label_components(img, Connectivity::Eight);
    CHECK(eight.blocks.size() <= four.blocks.size());
    long long total = 0;
    for (const auto& b : eight.blocks) {
      total += b.area;
      REQUIRE(b.area >= 1);
      REQUIRE(b.edge_area >= 1);
      REQUIRE(b.edge_area <= b.area);
      REQUIRE(b.density >= 0.0);
      REQUIRE(b.density <= 1.0);
      REQUIRE(b.aspect_ratio > 0.0);
      REQUIRE(b.crop.width() == b.bbox.width);
      REQUIRE(b.crop.height() == b.bbox.height);
      REQUIRE(b.bbox.right() <= img.width());
      REQUIRE(b.bbox.bottom() <= img.height());
      REQUIRE(static_cast<long long>(count_foreground(b.crop)) == b.area);
    }
    CHECK(total == static_cast<long long>(count_foreground(img)));
  }
}
