#include "sktext/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <string>

namespace sktext {

GlyphAtlas::GlyphAtlas(const GlyphSheet& sheet) : cell_height_(sheet.layout.cell_height) {
  int tallest = 0;
  for (const auto& cell : sheet.layout.cells) {
    const Box box = sheet.layout.cell_box(cell);
    if (box.right() > sheet.image.width() || box.bottom() > sheet.image.height()) continue;
    const GrayImage gray = crop(sheet.image, box);
    const auto [lo, hi] = std::minmax_element(gray.pixels().begin(), gray.pixels().end());
    if (*hi - *lo < 32) continue;
    // Sheets are dark ink on a light field; coverage is the normalized darkness.
    GrayImage alpha(gray.width(), gray.height());
    int x0 = gray.width(), x1 = -1, y0 = gray.height(), y1 = -1;
    for (int y = 0; y < gray.height(); ++y) {
      for (int x = 0; x < gray.width(); ++x) {
        const int a = (*hi - gray(x, y)) * 255 / (*hi - *lo);
        alpha(x, y) = static_cast<std::uint8_t>(a);
        if (a > 0) {
          x0 = std::min(x0, x);
          x1 = std::max(x1, x);
        }
        if (a >= 128) {
          y0 = std::min(y0, y);
          y1 = std::max(y1, y);
        }
      }
    }
    if (x1 < 0 || y1 < 0) continue;
    const int ink_height = y1 - y0 + 1;
    if (cell.label == 'H') cap_height_ = ink_height;
    tallest = std::max(tallest, ink_height);
    glyphs_[cell.label] = Glyph{crop(alpha, Box{x0, 0, x1 - x0 + 1, gray.height()})};
  }
  if (glyphs_.empty()) throw std::invalid_argument("font sheet '" + sheet.name + "' has no glyphs");
  if (cap_height_ == 0) cap_height_ = tallest;
}

std::vector<char> GlyphAtlas::labels() const {
  std::vector<char> out;
  for (const auto& [label, glyph] : glyphs_) out.push_back(label);
  return out;
}

namespace {

// Distribution helpers written against raw engine output so scenes are
// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal() {
    const double u1 = std::max(uniform(), 1e-300);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

struct Word {
  std::string text;
  GrayImage alpha;
  Box ink;  // bounding box of coverage >= 128 within `alpha`
  int glyph_height = 0;
};

Word render_word(const GlyphAtlas& atlas, const std::string& text, int glyph_height) {
  const double scale = static_cast<double>(glyph_height) / atlas.cap_height();
  const int height = std::max(1, static_cast<int>(std::lround(atlas.cell_height() * scale)));
  const int gap = std::max(1, static_cast<int>(std::lround(0.1 * glyph_height)));
  std::vector<GrayImage> parts;
  int width = 0;
  for (char c : text) {
    const GrayImage& src = atlas.glyphs().at(c).alpha;
    const int w = std::max(1, static_cast<int>(std::lround(src.width() * scale)));
    parts.push_back(resize_area(src, w, height));
    width += w;
  }
  width += gap * static_cast<int>(parts.size() - 1);

  Word word{text, GrayImage(width, height, 0), {}, glyph_height};
  int x = 0;
  for (const auto& p : parts) {
    for (int y = 0; y < height; ++y) {
      for (int px = 0; px < p.width(); ++px) word.alpha(x + px, y) = p(px, y);
    }
    x += p.width() + gap;
  }
  int x0 = width, y0 = height, x1 = -1, y1 = -1;
  for (int y = 0; y < height; ++y) {
    for (int px = 0; px < width; ++px) {
      if (word.alpha(px, y) < 128) continue;
      x0 = std::min(x0, px);
      y0 = std::min(y0, y);
      x1 = std::max(x1, px);
      y1 = std::max(y1, y);
    }
  }
  if (x1 >= 0) word.ink = Box{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
  return word;
}

Box expanded(const Box& b, int margin) {
  return Box{b.x - margin, b.y - margin, b.width + 2 * margin, b.height + 2 * margin};
}

bool overlaps(const Box& a, const Box& b) {
  return a.x < b.right() && b.x < a.right() && a.y < b.bottom() && b.y < a.bottom();
}

std::uint8_t clamp_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

struct Palette {
  double text = 0.0;
  double bg_a = 0.0;
  double bg_b = 0.0;
  std::array<double, 3> text_tint{};
  std::array<double, 3> bg_tint{};
};

}  // namespace

Scene generate_scene(const GlyphAtlas& atlas, const SceneSpec& spec, const std::string& image_id) {
  if (spec.backgrounds.empty()) throw std::invalid_argument("scene spec lists no backgrounds");
  Rng rng(spec.seed);
  const auto context = [&] { return "seed " + std::to_string(spec.seed); };

  const Background background =
      spec.backgrounds[rng.uniform_int(0, static_cast<int>(spec.backgrounds.size()) - 1)];
  const bool light_text = rng.uniform() < spec.light_text_probability;
  Palette pal;
  // Levels are drawn for dark text and mirrored for light text.
  pal.text = rng.uniform(0, 70);
  pal.bg_a = rng.uniform(pal.text + 110, 250);
  pal.bg_b = background == Background::Gradient ? rng.uniform(pal.text + 100, 255) : pal.bg_a;
  if (background == Background::Gradient && std::abs(pal.bg_a - pal.bg_b) < 40) {
    pal.bg_b = pal.bg_a > pal.text + 150 ? pal.bg_a - 40 : pal.bg_a + 40;
  }
  if (light_text) {
    pal.text = 255 - pal.text;
    pal.bg_a = 255 - pal.bg_a;
    pal.bg_b = 255 - pal.bg_b;
  }
  for (int c = 0; c < 3; ++c) {
    pal.text_tint[c] = rng.uniform(-12, 12);
    pal.bg_tint[c] = rng.uniform(-15, 15);
  }
  const double angle = rng.uniform(0, 2.0 * std::numbers::pi);
  const double noise_sigma = rng.uniform(0, spec.max_noise_sigma);

  // Coarse value-noise lattice for textured backgrounds.
  constexpr int kLattice = 8;
  std::vector<double> lattice((kLattice + 1) * (kLattice + 1));
  for (auto& v : lattice) v = rng.uniform(-1, 1);

  const std::vector<char> labels = atlas.labels();
  const int word_count = rng.uniform_int(spec.min_words, spec.max_words);
  GrayImage coverage(spec.width, spec.height, 0);
  struct Placed {
    Box ink;
    int margin;
  };
  std::vector<Placed> placed;
  GroundTruth truth{image_id, {}};
  for (int w = 0; w < word_count; ++w) {
    const int length = rng.uniform_int(spec.min_chars, spec.max_chars);
    std::string text;
    for (int i = 0; i < length; ++i) {
      text.push_back(labels[rng.uniform_int(0, static_cast<int>(labels.size()) - 1)]);
    }
    const int glyph_height = rng.uniform_int(spec.min_glyph_height, spec.max_glyph_height);
    const Word word = render_word(atlas, text, glyph_height);
    if (word.ink.width == 0) continue;

    const int margin = std::max(4, static_cast<int>(std::lround(0.8 * glyph_height)));
    const int max_x = spec.width - word.ink.width - 4;
    const int max_y = spec.height - word.ink.height - 4;
    if (max_x < 4 || max_y < 4) {
      throw LayoutOverflow(context() + ": word '" + text + "' is larger than the image");
    }
    std::optional<Box> spot;
    for (int attempt = 0; attempt < 500 && !spot; ++attempt) {
      const Box ink{rng.uniform_int(4, max_x), rng.uniform_int(4, max_y), word.ink.width,
                    word.ink.height};
      // Neighbouring words keep a gap of at least the larger of their margins.
      if (std::none_of(placed.begin(), placed.end(), [&](const Placed& other) {
            return overlaps(expanded(ink, std::max(margin, other.margin)), other.ink);
          })) {
        spot = ink;
      }
    }
    if (!spot) throw LayoutOverflow(context() + ": no free space for word '" + text + "'");
    placed.push_back({*spot, margin});

    const int ox = spot->x - word.ink.x;
    const int oy = spot->y - word.ink.y;
    for (int y = 0; y < word.alpha.height(); ++y) {
      for (int x = 0; x < word.alpha.width(); ++x) {
        if (!coverage.contains(ox + x, oy + y)) continue;
        auto& dst = coverage(ox + x, oy + y);
        dst = std::max(dst, word.alpha(x, y));
      }
    }
    truth.boxes.push_back(TruthBox{*spot, text});
  }

  ColorImage image(spec.width, spec.height);
  const double dx = std::cos(angle);
  const double dy = std::sin(angle);
  const double extent = std::abs(dx) * spec.width + std::abs(dy) * spec.height;
  const double origin = std::min(0.0, dx * spec.width) + std::min(0.0, dy * spec.height);
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      double level = pal.bg_a;
      if (background == Background::Gradient) {
        const double t = (dx * x + dy * y - origin) / extent;
        level = pal.bg_a + (pal.bg_b - pal.bg_a) * t;
      } else if (background == Background::Texture) {
        const double gx = static_cast<double>(x) * kLattice / spec.width;
        const double gy = static_cast<double>(y) * kLattice / spec.height;
        const int ix = static_cast<int>(gx);
        const int iy = static_cast<int>(gy);
        const double fx = gx - ix;
        const double fy = gy - iy;
        auto at = [&](int i, int j) { return lattice[j * (kLattice + 1) + i]; };
        const double v = (1 - fy) * ((1 - fx) * at(ix, iy) + fx * at(ix + 1, iy)) +
                         fy * ((1 - fx) * at(ix, iy + 1) + fx * at(ix + 1, iy + 1));
        level = pal.bg_a + 25.0 * v * (light_text ? 1.0 : -1.0);
      }
      const double a = coverage(x, y) / 255.0;
      Rgb& px = image(x, y);
      std::array<double, 3> out{};
      for (int c = 0; c < 3; ++c) {
        const double bg = level + pal.bg_tint[c];
        const double fg = pal.text + pal.text_tint[c];
        out[c] = bg * (1 - a) + fg * a + (noise_sigma > 0 ? noise_sigma * rng.normal() : 0.0);
      }
      px = Rgb{clamp_byte(out[0]), clamp_byte(out[1]), clamp_byte(out[2])};
    }
  }
  return Scene{std::move(image), std::move(truth)};
}

}  // namespace sktext
