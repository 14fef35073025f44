#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sktext {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Row-major 2-D pixel grid. Width and height are always >= 1.
template <typename Pixel>
class Image {
 public:
  using value_type = Pixel;

  Image() = default;
  Image(int width, int height, Pixel fill = Pixel{})
      : width_(width), height_(height) {
    if (width < 1 || height < 1) {
      throw std::invalid_argument("image dimensions must be >= 1, got " +
                                  std::to_string(width) + "x" +
                                  std::to_string(height));
    }
    pixels_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return pixels_.size(); }
  bool empty() const { return pixels_.empty(); }

  Pixel& operator()(int x, int y) { return pixels_[index(x, y)]; }
  const Pixel& operator()(int x, int y) const { return pixels_[index(x, y)]; }

  bool contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  Pixel* row(int y) { return pixels_.data() + static_cast<std::size_t>(y) * width_; }
  const Pixel* row(int y) const {
    return pixels_.data() + static_cast<std::size_t>(y) * width_;
  }

  std::vector<Pixel>& pixels() { return pixels_; }
  const std::vector<Pixel>& pixels() const { return pixels_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Pixel> pixels_;
};

using ColorImage = Image<Rgb>;
using GrayImage = Image<std::uint8_t>;
/// Values are 0 (background) or 1 (foreground); text is always foreground.
using BinaryImage = Image<std::uint8_t>;

/// Axis-aligned pixel rectangle.
struct Box {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  long long area() const { return static_cast<long long>(width) * height; }
  int right() const { return x + width; }
  int bottom() const { return y + height; }
  friend bool operator==(const Box&, const Box&) = default;
};

/// BT.601 luma, rounded and clamped.
GrayImage to_grayscale(const ColorImage& img);

/// Median of the (2r+1)^2 window, edge-replicated borders.
/// Throws std::invalid_argument unless 1 <= radius < min(width, height).
GrayImage median_filter(const GrayImage& img, int radius = 1);

/// Box-filter (area-average) resampling to the given size.
GrayImage resize_area(const GrayImage& img, int width, int height);

/// Copy of the sub-rectangle `box`, which must lie inside the image.
template <typename Pixel>
Image<Pixel> crop(const Image<Pixel>& img, const Box& box) {
  if (box.x < 0 || box.y < 0 || box.width < 1 || box.height < 1 ||
      box.right() > img.width() || box.bottom() > img.height()) {
    throw std::out_of_range("crop box outside image");
  }
  Image<Pixel> out(box.width, box.height);
  for (int y = 0; y < box.height; ++y) {
    for (int x = 0; x < box.width; ++x) out(x, y) = img(box.x + x, box.y + y);
  }
  return out;
}

std::size_t count_foreground(const BinaryImage& img);

}  // namespace sktext
