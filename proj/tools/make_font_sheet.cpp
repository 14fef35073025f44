// Renders an A-Z, a-z, 0-9 glyph sheet and its layout file from one of
// OpenCV's built-in Hershey fonts.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"Render a glyph sheet for template building and scene synthesis"};
  std::string font = "simplex";
  std::string png_path;
  std::string layout_path;
  int cap_height = 56;
  int cell_width = 72;
  int cell_height = 96;
  int columns = 8;
  double stroke = 0.11;
  app.add_option("--font", font, "Hershey face")
      ->check(CLI::IsMember({"simplex", "duplex", "complex", "triplex"}));
  app.add_option("--png", png_path, "output sheet image")->required();
  app.add_option("--layout", layout_path, "output layout descriptor")->required();
  app.add_option("--cap-height", cap_height, "height of 'H' in pixels");
  app.add_option("--cell", cell_width, "cell width");
  app.add_option("--cell-height", cell_height, "cell height");
  app.add_option("--columns", columns, "cells per row");
  app.add_option("--stroke", stroke, "stroke thickness as a fraction of the cap height");
  CLI11_PARSE(app, argc, argv);

  const std::map<std::string, int> faces{{"simplex", cv::FONT_HERSHEY_SIMPLEX},
                                         {"duplex", cv::FONT_HERSHEY_DUPLEX},
                                         {"complex", cv::FONT_HERSHEY_COMPLEX},
                                         {"triplex", cv::FONT_HERSHEY_TRIPLEX}};
  const int face = faces.at(font);
  const std::string charset =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
  const int thickness = std::max(1, static_cast<int>(std::lround(stroke * cap_height)));
  int base = 0;
  const cv::Size unit = cv::getTextSize("H", face, 1.0, thickness, &base);
  // getTextSize includes the stroke; solve for the scale whose ink height hits cap_height.
  const double scale = static_cast<double>(cap_height - thickness) / (unit.height - thickness);

  const int rows = (static_cast<int>(charset.size()) + columns - 1) / columns;
  cv::Mat sheet(rows * cell_height, columns * cell_width, CV_8UC1, cv::Scalar(255));
  std::ofstream layout(layout_path);
  layout << "# Hershey " << font << ", cap height " << cap_height << "\n";
  layout << "cell " << cell_width << ' ' << cell_height << " origin 0 0\n";
  const int baseline = static_cast<int>(cell_height * 0.70);
  for (std::size_t i = 0; i < charset.size(); ++i) {
    const int row = static_cast<int>(i) / columns;
    const int col = static_cast<int>(i) % columns;
    const std::string glyph(1, charset[i]);
    const cv::Size size = cv::getTextSize(glyph, face, scale, thickness, &base);
    const cv::Point origin(col * cell_width + (cell_width - size.width) / 2,
                           row * cell_height + baseline);
    cv::putText(sheet, glyph, origin, face, scale, cv::Scalar(0), thickness, cv::LINE_AA);
    layout << row << ' ' << col << ' ' << charset[i] << '\n';
  }
  if (!cv::imwrite(png_path, sheet)) {
    std::cerr << "cannot write " << png_path << '\n';
    return 2;
  }
  std::cout << "wrote " << charset.size() << " glyphs to " << png_path << '\n';
  return 0;
}
