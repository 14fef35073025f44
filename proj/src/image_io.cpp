#include "sktext/image_io.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace sktext {

ColorImage read_image(const std::filesystem::path& path) {
  const cv::Mat mat = cv::imread(path.string(), cv::IMREAD_COLOR);
  if (mat.empty()) {
    throw std::runtime_error("cannot decode image: " + path.string());
  }
  ColorImage out(mat.cols, mat.rows);
  for (int y = 0; y < mat.rows; ++y) {
    const auto* src = mat.ptr<cv::Vec3b>(y);
    Rgb* dst = out.row(y);
    for (int x = 0; x < mat.cols; ++x) dst[x] = Rgb{src[x][2], src[x][1], src[x][0]};
  }
  return out;
}

namespace {

void encode(const std::filesystem::path& path, const cv::Mat& mat) {
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), mat, {cv::IMWRITE_PNG_COMPRESSION, 6});
  } catch (const cv::Exception& e) {
    throw std::runtime_error("cannot write " + path.string() + ": " + e.what());
  }
  if (!ok) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

void write_png(const std::filesystem::path& path, const ColorImage& img) {
  cv::Mat mat(img.height(), img.width(), CV_8UC3);
  for (int y = 0; y < img.height(); ++y) {
    auto* dst = mat.ptr<cv::Vec3b>(y);
    const Rgb* src = img.row(y);
    for (int x = 0; x < img.width(); ++x) dst[x] = cv::Vec3b(src[x].b, src[x].g, src[x].r);
  }
  encode(path, mat);
}

void write_png(const std::filesystem::path& path, const GrayImage& img) {
  cv::Mat mat(img.height(), img.width(), CV_8UC1);
  for (int y = 0; y < img.height(); ++y) {
    std::copy(img.row(y), img.row(y) + img.width(), mat.ptr<std::uint8_t>(y));
  }
  encode(path, mat);
}

}  // namespace sktext
