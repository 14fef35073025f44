#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "sktext/localizer.hpp"
#include "sktext/reference.hpp"
#include "test_support.hpp"

using namespace sktext;

namespace {

ComponentBlock stats_block(int w, int h, double ar, double density) {
  ComponentBlock b;
  b.label = 1;
  b.bbox = Box{0, 0, w, h};
  b.area = static_cast<long long>(w) * h;
  b.aspect_ratio = ar;
  b.density = density;
  return b;
}

ScoredBlock glyph(int x, int y, int w, int h, double score = 0.8) {
  return ScoredBlock{make_block(1, Box{x, y, w, h}, BinaryImage(w, h, 1)), score};
}

// Output pixel (x, y) is set when any input pixel within x - w/2 .. x + (w-1-w/2)
// (same split vertically) is set.
BinaryImage brute_dilate(const BinaryImage& img, int w, int h) {
  BinaryImage out(img.width(), img.height(), 0);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      for (int sy = y - h / 2; sy <= y + (h - 1 - h / 2); ++sy) {
        for (int sx = x - w / 2; sx <= x + (w - 1 - w / 2); ++sx) {
          if (img.contains(sx, sy) && img(sx, sy)) out(x, y) = 1;
        }
      }
    }
  }
  return out;
}

bool contains(const Box& outer, const Box& inner) {
  return inner.x >= outer.x && inner.y >= outer.y && inner.right() <= outer.right() &&
         inner.bottom() <= outer.bottom();
}

}  // namespace

TEST_CASE("thresholds of a single block") {
  const RuleThresholds th = compute_thresholds({stats_block(5, 10, 0.5, 0.3)});
  CHECK(th.t1 == doctest::Approx(0.5));
  CHECK(th.t2 == doctest::Approx(0.0));
}

TEST_CASE("thresholds of two blocks") {
  const RuleThresholds th =
      compute_thresholds({stats_block(4, 10, 0.4, 0.2), stats_block(8, 10, 0.8, 0.6)});
  CHECK(th.t1 == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(th.t2 == doctest::Approx(0.2).epsilon(1e-12));
  const RuleThresholds alt = compute_thresholds(
      {stats_block(4, 10, 0.4, 0.2), stats_block(8, 10, 0.8, 0.6)}, ThresholdPairing::MeanDensityStdAspect);
  CHECK(alt.t1 == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(alt.t2 == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("thresholds match a direct mean and stddev") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> ar(0.1, 3.0), dens(0.05, 1.0);
  std::vector<ComponentBlock> blocks;
  long double sa = 0, sd = 0;
  for (int i = 0; i < 20; ++i) {
    blocks.push_back(stats_block(10, 10, ar(rng), dens(rng)));
    sa += blocks.back().aspect_ratio;
    sd += blocks.back().density;
  }
  const long double ma = sa / 20, md = sd / 20;
  long double va = 0;
  for (const auto& b : blocks) va += (b.density - md) * (b.density - md);
  const RuleThresholds th = compute_thresholds(blocks);
  CHECK(std::abs(th.t1 - static_cast<double>(ma)) <= 1e-12);
  CHECK(std::abs(th.t2 - static_cast<double>(std::sqrt(va / 20))) <= 1e-12);
  CHECK_THROWS_AS(compute_thresholds({}), std::invalid_argument);
}

TEST_CASE("rule examples") {
  const RuleThresholds th{0.5, 0.1};
  CHECK(rejected(stats_block(30, 60, 0.5, 0.5), th));      // rule ii regardless
  CHECK(rejected(stats_block(4, 10, 0.9, 0.5), {0.1, 0.1}));  // rule iii
  CHECK_FALSE(rejected(stats_block(12, 20, 0.6, 0.3), th));
  CHECK(rejected(stats_block(12, 20, 0.4, 0.3), th));   // AR below T1
  CHECK(rejected(stats_block(12, 20, 0.6, 0.05), th));  // density below T2
  CHECK(rejected(stats_block(12, 5, 2.4, 0.3), th));    // too short
  CHECK(rejected(stats_block(5, 4, 1.25, 0.3), th));    // short and small
}

TEST_CASE("rule limits scale lengths linearly and area quadratically") {
  const RuleLimits l = RuleLimits::scaled(2.0);
  CHECK(l.max_height == 100);
  CHECK(l.min_height == 12);
  CHECK(l.min_width == 10);
  CHECK(l.min_area == 96);
  CHECK_THROWS_AS(RuleLimits::scaled(0), std::invalid_argument);
  CHECK(rejected(stats_block(30, 60, 1, 1), {0, 0}));
  CHECK_FALSE(rejected(stats_block(30, 60, 1, 1), {0, 0}, l));
}

TEST_CASE("filtering is idempotent and order independent") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(2, 70);
  std::uniform_real_distribution<double> dens(0.0, 1.0);
  std::vector<ComponentBlock> blocks;
  for (int i = 0; i < 60; ++i) {
    const int w = dim(rng), h = dim(rng);
    ComponentBlock b = stats_block(w, h, static_cast<double>(w) / h, dens(rng));
    b.label = i + 1;
    blocks.push_back(b);
  }
  const RuleThresholds th = compute_thresholds(blocks);
  const auto once = geometric_filter(blocks, th);
  const auto twice = geometric_filter(once, th);
  REQUIRE(once.size() == twice.size());
  for (std::size_t i = 0; i < once.size(); ++i) CHECK(once[i].label == twice[i].label);

  auto shuffled = blocks;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  std::vector<int> a, b;
  for (const auto& k : once) a.push_back(k.label);
  for (const auto& k : geometric_filter(shuffled, th)) b.push_back(k.label);
  std::vector<int> expected_order;
  for (const auto& k : shuffled) {
    if (std::find(a.begin(), a.end(), k.label) != a.end()) expected_order.push_back(k.label);
  }
  CHECK(b == expected_order);
}

TEST_CASE("dilation matches brute force and is extensive") {
  std::mt19937_64 rng(12);
  for (auto [w, h] : std::vector<std::pair<int, int>>{{1, 1}, {3, 3}, {10, 3}, {4, 2}, {7, 5}, {15, 1}}) {
    const BinaryImage img = testing::random_binary(rng, 37, 23, 0.04);
    const BinaryImage d = dilate(img, w, h);
    REQUIRE(d == brute_dilate(img, w, h));
    REQUIRE(d == reference::dilate(img, w, h));
    for (std::size_t i = 0; i < img.size(); ++i) {
      if (img.pixels()[i]) REQUIRE(d.pixels()[i]);
    }
  }
}

TEST_CASE("dilation is monotone") {
  std::mt19937_64 rng(13);
  BinaryImage small = testing::random_binary(rng, 40, 30, 0.03);
  BinaryImage big = small;
  for (int i = 0; i < 30; ++i) big.pixels()[rng() % big.size()] = 1;
  const BinaryImage ds = dilate(small, 9, 3), db = dilate(big, 9, 3);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds.pixels()[i]) REQUIRE(db.pixels()[i]);
  }
}

TEST_CASE("empty survivor list gives no boxes") {
  CHECK(merge_text_regions({}, 50, 50, LocalizerConfig::word()).empty());
}

TEST_CASE("glyphs closer than the element merge into one box") {
  const auto boxes =
      merge_text_regions({glyph(10, 5, 10, 20, 0.6), glyph(24, 5, 10, 20, 0.8)}, 60, 40,
                         LocalizerConfig::word());
  REQUIRE(boxes.size() == 1);
  CHECK(boxes[0].box == Box{10, 5, 24, 20});
  CHECK(boxes[0].score == doctest::Approx(0.7));
  CHECK(boxes[0].granularity == Granularity::Word);
}

TEST_CASE("word gaps separate in word mode and join in line mode") {
  std::vector<ScoredBlock> s;
  // Two three-glyph words, glyph gap 3 px, word gap 40 px, glyph height 30.
  for (int k = 0; k < 3; ++k) s.push_back(glyph(10 + k * 15, 20, 12, 30));
  for (int k = 0; k < 3; ++k) s.push_back(glyph(10 + 42 + 40 + k * 15, 20, 12, 30));
  const auto words = merge_text_regions(s, 200, 80, LocalizerConfig::word());
  REQUIRE(words.size() == 2);
  CHECK(words[0].box == Box{10, 20, 42, 30});
  CHECK(words[1].box == Box{92, 20, 42, 30});
  const auto lines = merge_text_regions(s, 200, 80, LocalizerConfig::line());
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].box == Box{10, 20, 124, 30});
  CHECK(lines[0].granularity == Granularity::Line);
}

TEST_CASE("every box contains a whole survivor and stays in the image") {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<int> px(0, 180), py(0, 100), dim(6, 30);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<ScoredBlock> s;
    for (int i = 0; i < 15; ++i) {
      const int w = dim(rng), h = dim(rng);
      s.push_back(glyph(std::min(px(rng), 200 - w), std::min(py(rng), 120 - h), w, h));
    }
    const auto boxes = merge_text_regions(s, 200, 120, LocalizerConfig::word());
    for (const auto& b : boxes) {
      CHECK(b.box.x >= 0);
      CHECK(b.box.y >= 0);
      CHECK(b.box.right() <= 200);
      CHECK(b.box.bottom() <= 120);
      const bool has_member = std::any_of(s.begin(), s.end(), [&](const auto& g) {
        return contains(b.box, g.block.bbox);
      });
      CHECK(has_member);
    }
    for (const auto& g : s) {
      const bool covered = std::any_of(boxes.begin(), boxes.end(),
                                       [&](const auto& b) { return contains(b.box, g.block.bbox); });
      CHECK(covered);
    }
  }
}

TEST_CASE("more survivors never shrink the covered area") {
  std::vector<ScoredBlock> s{glyph(10, 10, 10, 20), glyph(60, 10, 10, 20)};
  auto covered = [](const std::vector<TextBox>& boxes) {
    BinaryImage m(120, 50, 0);
    for (const auto& b : boxes) {
      for (int y = b.box.y; y < b.box.bottom(); ++y) {
        for (int x = b.box.x; x < b.box.right(); ++x) m(x, y) = 1;
      }
    }
    return m;
  };
  const BinaryImage before = covered(merge_text_regions(s, 120, 50, LocalizerConfig::word()));
  s.push_back(glyph(30, 12, 12, 18));
  const BinaryImage after = covered(merge_text_regions(s, 120, 50, LocalizerConfig::word()));
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (before.pixels()[i]) REQUIRE(after.pixels()[i]);
  }
}

TEST_CASE("localizer config validation") {
  LocalizerConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.dilation_width_factor = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.dilation_height = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  CHECK(LocalizerConfig::line().dilation_width_factor == 1.5);
}
