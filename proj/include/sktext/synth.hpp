#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "sktext/evaluator.hpp"
#include "sktext/image.hpp"
#include "sktext/template_db.hpp"

namespace sktext {

/// Glyph coverage masks cut from a font sheet, all sharing the sheet's
/// baseline so words can be assembled by scaling whole cells.
class GlyphAtlas {
 public:
  struct Glyph {
    GrayImage alpha;  // 255 = full ink; cell height, cropped to the ink columns
  };

  /// Throws std::invalid_argument when the sheet has no usable glyphs.
  explicit GlyphAtlas(const GlyphSheet& sheet);

  const std::map<char, Glyph>& glyphs() const { return glyphs_; }
  std::vector<char> labels() const;
  /// Ink height of 'H' in sheet pixels (tallest glyph when 'H' is missing).
  int cap_height() const { return cap_height_; }
  int cell_height() const { return cell_height_; }

 private:
  std::map<char, Glyph> glyphs_;
  int cap_height_ = 0;
  int cell_height_ = 0;
};

enum class Background { Flat, Gradient, Texture };

struct SceneSpec {
  std::uint64_t seed = 0;
  int width = 640;
  int height = 480;
  std::vector<Background> backgrounds{Background::Flat, Background::Gradient};
  int min_words = 1;
  int max_words = 6;
  int min_chars = 3;
  int max_chars = 8;
  int min_glyph_height = 12;  // cap height in pixels
  int max_glyph_height = 48;
  double max_noise_sigma = 4.0;  // additive Gaussian, sigma drawn from [0, max]
  double light_text_probability = 0.25;
};

struct Scene {
  ColorImage image;
  GroundTruth truth;
};

class LayoutOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deterministic for a fixed (atlas, spec). Truth boxes bound the pixels
/// whose glyph coverage is at least one half. Throws LayoutOverflow when a
/// word cannot be placed without touching another.
Scene generate_scene(const GlyphAtlas& atlas, const SceneSpec& spec, const std::string& image_id);

}  // namespace sktext
