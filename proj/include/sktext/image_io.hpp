#pragma once

#include <filesystem>

#include "sktext/image.hpp"

namespace sktext {

/// Decodes any raster format OpenCV understands (PNG at minimum), 8-bit
/// gray or RGB. Gray sources come back with r == g == b.
/// Throws std::runtime_error naming the path on failure.
ColorImage read_image(const std::filesystem::path& path);

void write_png(const std::filesystem::path& path, const ColorImage& img);
void write_png(const std::filesystem::path& path, const GrayImage& img);

}  // namespace sktext
