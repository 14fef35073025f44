#include <doctest.h>

#include <algorithm>

#include "sktext/synth.hpp"
#include "test_support.hpp"

using namespace sktext;

namespace {

const GlyphAtlas& atlas() {
  static const GlyphAtlas a(testing::bundled_sheet());
  return a;
}

}  // namespace

TEST_CASE("atlas covers the sheet") {
  CHECK(atlas().glyphs().size() == 62);
  CHECK(atlas().cap_height() > 40);
  CHECK(atlas().cap_height() <= atlas().cell_height());
}

TEST_CASE("scenes are deterministic per seed") {
  SceneSpec spec;
  spec.seed = 17;
  const Scene a = generate_scene(atlas(), spec, "s");
  const Scene b = generate_scene(atlas(), spec, "s");
  CHECK(a.image == b.image);
  REQUIRE(a.truth.boxes.size() == b.truth.boxes.size());
  for (std::size_t i = 0; i < a.truth.boxes.size(); ++i) {
    CHECK(a.truth.boxes[i].box == b.truth.boxes[i].box);
    CHECK(a.truth.boxes[i].transcription == b.truth.boxes[i].transcription);
  }
  spec.seed = 18;
  CHECK_FALSE(generate_scene(atlas(), spec, "s").image == a.image);
}

TEST_CASE("truth boxes lie inside the image and keep apart") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SceneSpec spec;
    spec.seed = seed;
    const Scene s = generate_scene(atlas(), spec, "s");
    CHECK(s.image.width() == spec.width);
    CHECK(s.image.height() == spec.height);
    CHECK(s.truth.boxes.size() >= 1);
    for (std::size_t i = 0; i < s.truth.boxes.size(); ++i) {
      const Box& b = s.truth.boxes[i].box;
      CHECK(b.x >= 0);
      CHECK(b.y >= 0);
      CHECK(b.right() <= spec.width);
      CHECK(b.bottom() <= spec.height);
      const auto& t = s.truth.boxes[i].transcription;
      CHECK(t.size() >= 3);
      CHECK(t.size() <= 8);
      for (std::size_t j = i + 1; j < s.truth.boxes.size(); ++j) {
        const Box& c = s.truth.boxes[j].box;
        const bool apart = b.right() + 4 <= c.x || c.right() + 4 <= b.x || b.bottom() + 4 <= c.y ||
                           c.bottom() + 4 <= b.y;
        CHECK(apart);
      }
    }
  }
}

TEST_CASE("truth box is tight around the inked pixels") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    SceneSpec spec;
    spec.seed = seed;
    spec.min_words = spec.max_words = 1;
    spec.backgrounds = {Background::Flat};
    spec.max_noise_sigma = 0.0;
    spec.light_text_probability = 0.0;
    spec.min_glyph_height = 20;
    spec.max_glyph_height = 40;
    const Scene s = generate_scene(atlas(), spec, "s");
    REQUIRE(s.truth.boxes.size() == 1);
    // Oracle: pixels darker than halfway between background and darkest ink.
    const int bg = s.image(0, 0).r;
    int ink = 255;
    for (const auto& px : s.image.pixels()) ink = std::min<int>(ink, px.r);
    const int mid = (bg + ink) / 2;
    int x0 = spec.width, y0 = spec.height, x1 = -1, y1 = -1;
    for (int y = 0; y < spec.height; ++y) {
      for (int x = 0; x < spec.width; ++x) {
        if (s.image(x, y).r > mid) continue;
        x0 = std::min(x0, x);
        y0 = std::min(y0, y);
        x1 = std::max(x1, x);
        y1 = std::max(y1, y);
      }
    }
    const Box& t = s.truth.boxes[0].box;
    CHECK(std::abs(t.x - x0) <= 1);
    CHECK(std::abs(t.y - y0) <= 1);
    CHECK(std::abs(t.right() - 1 - x1) <= 1);
    CHECK(std::abs(t.bottom() - 1 - y1) <= 1);
  }
}

TEST_CASE("overflowing layouts name the seed") {
  SceneSpec spec;
  spec.seed = 7;
  spec.width = 120;
  spec.height = 80;
  spec.min_words = spec.max_words = 6;
  spec.min_glyph_height = spec.max_glyph_height = 30;
  CHECK_THROWS_WITH_AS(generate_scene(atlas(), spec, "s"), doctest::Contains("seed 7"), LayoutOverflow);
  spec.backgrounds.clear();
  CHECK_THROWS_AS(generate_scene(atlas(), spec, "s"), std::invalid_argument);
}
