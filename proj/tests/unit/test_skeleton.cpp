#include <doctest.h>

#include <random>

#include "sktext/skeleton.hpp"
#include "test_support.hpp"

using namespace sktext;

namespace {

bool subset_of(const BinaryImage& a, const BinaryImage& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.pixels()[i] && !b.pixels()[i]) return false;
  }
  return true;
}

// One-pixel frame plus widely spaced interior lines: already thin and
// spanning the full box, so its bounding box survives thinning.
BinaryImage line_drawing(std::mt19937_64& rng, int w, int h) {
  BinaryImage img(w, h, 0);
  for (int x = 0; x < w; ++x) img(x, 0) = img(x, h - 1) = 1;
  for (int y = 0; y < h; ++y) img(0, y) = img(w - 1, y) = 1;
  std::uniform_int_distribution<int> step(3, 8);
  std::bernoulli_distribution keep(0.5);
  for (int x = step(rng); x < w - 2; x += step(rng)) {
    if (!keep(rng)) continue;
    for (int y = 0; y < h; ++y) img(x, y) = 1;
  }
  for (int y = step(rng); y < h - 2; y += step(rng)) {
    if (!keep(rng)) continue;
    for (int x = 0; x < w; ++x) img(x, y) = 1;
  }
  return img;
}

std::size_t background_count(const BinaryImage& img) {
  // Pad by one so every outside pixel joins a single background component.
  BinaryImage inv(img.width() + 2, img.height() + 2, 1);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) inv(x + 1, y + 1) = img(x, y) ? 0 : 1;
  }
  return testing::flood_fill_count(inv, false);
}

// Removing a simple pixel changes neither the 8-connected foreground nor the
// 4-connected background component count.
bool is_simple(const BinaryImage& img, int x, int y) {
  BinaryImage without = img;
  without(x, y) = 0;
  return testing::flood_fill_count(without, true) == testing::flood_fill_count(img, true) &&
         background_count(without) == background_count(img);
}

}  // namespace

TEST_CASE("single pixel is a fixed point") {
  BinaryImage img(5, 5, 0);
  img(2, 3) = 1;
  CHECK(skeletonize(img) == img);
}

TEST_CASE("empty input is rejected") {
  CHECK_THROWS_AS(skeletonize(BinaryImage(4, 4, 0)), std::invalid_argument);
  CHECK_THROWS_AS(tight_crop(BinaryImage(4, 4, 0)), std::invalid_argument);
  CHECK_THROWS_AS(normalize_template(BinaryImage(4, 4, 0)), std::invalid_argument);
}

TEST_CASE("solid bar thins to its centerline") {
  BinaryImage bar(40, 5, 1);
  const BinaryImage skel = skeletonize(bar);
  int x0 = 40, x1 = -1;
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 40; ++x) {
      if (!skel(x, y)) continue;
      CHECK(y == 2);
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
    }
  }
  CHECK(x0 <= 2);
  CHECK(x1 >= 37);
  CHECK(count_foreground(skel) == static_cast<std::size_t>(x1 - x0 + 1));
}

TEST_CASE("thinning properties on random blobs") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const BinaryImage blob = testing::random_blob(rng, 40, 36);
    if (count_foreground(blob) == 0) continue;
    const BinaryImage skel = skeletonize(blob);
    REQUIRE(subset_of(skel, blob));
    REQUIRE_FALSE(testing::has_2x2_block(skel));
    REQUIRE(testing::flood_fill_count(skel, true) == testing::flood_fill_count(blob, true));
    REQUIRE(skeletonize(skel) == skel);
  }
}

TEST_CASE("thinning handles noisy inputs with many components") {
  // Noise can build 2x2 blocks whose every pixel anchors a diagonal arm;
  // those cannot be thinned without changing topology, so they may remain.
  std::mt19937_64 rng(78);
  for (int trial = 0; trial < 20; ++trial) {
    const BinaryImage img = testing::random_binary(rng, 30, 30, 0.55);
    const BinaryImage skel = skeletonize(img);
    REQUIRE(subset_of(skel, img));
    REQUIRE(testing::flood_fill_count(skel, true) == testing::flood_fill_count(img, true));
    REQUIRE(skeletonize(skel) == skel);
    for (int y = 0; y + 1 < skel.height(); ++y) {
      for (int x = 0; x + 1 < skel.width(); ++x) {
        if (!(skel(x, y) && skel(x + 1, y) && skel(x, y + 1) && skel(x + 1, y + 1))) continue;
        for (auto [px, py] : {std::pair{x, y}, {x + 1, y}, {x, y + 1}, {x + 1, y + 1}}) {
          REQUIRE_FALSE(is_simple(skel, px, py));
        }
      }
    }
  }
}

TEST_CASE("tight crop examples") {
  CHECK(tight_crop(BinaryImage(6, 4, 1)) == BinaryImage(6, 4, 1));
  BinaryImage dot(20, 8, 0);
  dot(10, 3) = 1;
  CHECK(tight_crop(dot) == BinaryImage(1, 1, 1));

  BinaryImage l(30, 20, 0);
  for (int y = 4; y < 15; ++y) l(7, y) = 1;
  for (int x = 7; x < 19; ++x) l(x, 14) = 1;
  int x0 = 99, y0 = 99, x1 = -1, y1 = -1;
  for (int y = 0; y < l.height(); ++y) {
    for (int x = 0; x < l.width(); ++x) {
      if (!l(x, y)) continue;
      x0 = std::min(x0, x);
      y0 = std::min(y0, y);
      x1 = std::max(x1, x);
      y1 = std::max(y1, y);
    }
  }
  const BinaryImage c = tight_crop(l);
  CHECK(c == crop(l, Box{x0, y0, x1 - x0 + 1, y1 - y0 + 1}));
}

TEST_CASE("normalizing an exact-size thinned skeleton is the identity") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const BinaryImage skel = skeletonize(line_drawing(rng, kTemplateCols, kTemplateRows));
    REQUIRE(tight_crop(skel).width() == kTemplateCols);
    REQUIRE(tight_crop(skel).height() == kTemplateRows);
    CHECK(normalize_template(skel).grid() == skel);
  }
}

TEST_CASE("2x downscale agrees with a decimation oracle") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const BinaryImage skel = skeletonize(line_drawing(rng, 2 * kTemplateCols, 2 * kTemplateRows));
    REQUIRE(tight_crop(skel).width() == 2 * kTemplateCols);
    REQUIRE(tight_crop(skel).height() == 2 * kTemplateRows);
    // Oracle: keep a cell when any of its four source pixels is set, then thin.
    BinaryImage oracle(kTemplateCols, kTemplateRows, 0);
    for (int y = 0; y < kTemplateRows; ++y) {
      for (int x = 0; x < kTemplateCols; ++x) {
        oracle(x, y) = skel(2 * x, 2 * y) | skel(2 * x + 1, 2 * y) | skel(2 * x, 2 * y + 1) |
                       skel(2 * x + 1, 2 * y + 1);
      }
    }
    const BinaryImage expected = skeletonize(oracle);
    const BinaryImage got = normalize_template(skel).grid();
    std::size_t diff = 0;
    for (std::size_t i = 0; i < got.size(); ++i) diff += got.pixels()[i] != expected.pixels()[i];
    CHECK(diff <= kTemplateCells / 20);
  }
}

TEST_CASE("normalize always yields a non-empty 42x24 grid") {
  std::mt19937_64 rng(8);
  for (auto [w, h] : std::vector<std::pair<int, int>>{{1, 1}, {1, 60}, {90, 1}, {3, 200}, {300, 7}, {5, 5}}) {
    BinaryImage img(w, h, 1);
    const Template t = normalize_template(img);
    CHECK(t.grid().width() == kTemplateCols);
    CHECK(t.grid().height() == kTemplateRows);
    CHECK(count_foreground(t.grid()) > 0);
  }
  for (int trial = 0; trial < 30; ++trial) {
    const BinaryImage img = testing::random_binary(rng, 1 + trial * 3, 2 + trial * 2, 0.05);
    if (count_foreground(img) == 0) continue;
    const Template t = normalize_template(img);
    REQUIRE(count_foreground(t.grid()) > 0);
    REQUIRE_FALSE(testing::has_2x2_block(t.grid()));
  }
}

TEST_CASE("thin strokes survive heavy downscaling") {
  BinaryImage diag(240, 420, 0);
  for (int y = 0; y < 420; ++y) diag(y * 239 / 419, y) = 1;
  const Template t = normalize_template(diag);
  // A one-pixel diagonal must still cross most rows after a 10x shrink.
  int rows = 0;
  for (int y = 0; y < kTemplateRows; ++y) {
    for (int x = 0; x < kTemplateCols; ++x) {
      if (t.grid()(x, y)) {
        ++rows;
        break;
      }
    }
  }
  CHECK(rows >= kTemplateRows - 2);
}

TEST_CASE("coverage resampling when enlarging uses half coverage") {
  BinaryImage img(2, 1, 0);
  img(0, 0) = 1;
  const BinaryImage up = resample_coverage(img, 4, 2);
  for (int y = 0; y < 2; ++y) {
    CHECK(up(0, y) == 1);
    CHECK(up(1, y) == 1);
    CHECK(up(2, y) == 0);
    CHECK(up(3, y) == 0);
  }
}

TEST_CASE("template checks its dimensions and values") {
  CHECK_NOTHROW(Template(BinaryImage(kTemplateCols, kTemplateRows, 0)));
  CHECK_THROWS_AS(Template(BinaryImage(kTemplateRows, kTemplateCols, 0)), std::invalid_argument);
  CHECK_THROWS_AS(Template(BinaryImage(kTemplateCols, kTemplateRows, 2)), std::invalid_argument);
  Template t(BinaryImage(kTemplateCols, kTemplateRows, 1), 'x');
  CHECK(t.label() == 'x');
}
