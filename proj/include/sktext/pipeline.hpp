#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sktext/binarization.hpp"
#include "sktext/components.hpp"
#include "sktext/image.hpp"
#include "sktext/localizer.hpp"
#include "sktext/matcher.hpp"
#include "sktext/template_db.hpp"

namespace sktext {

struct PipelineConfig {
  int median_radius = 1;
  BinarizationConfig binarization;
  ClassifierConfig classifier;
  LocalizerConfig localizer;
  ThresholdPairing pairing = ThresholdPairing::MeanAspectStdDensity;
  double rule_scale = 1.0;
  std::filesystem::path db_path;
  int threads = 0;  // 0 = all available

  void validate() const;
};

/// Reads a JSON config; keys mirror the struct fields (see README).
/// Unknown keys are rejected so typos do not pass silently.
PipelineConfig load_config(const std::filesystem::path& path);
PipelineConfig parse_config(const std::string& json_text);
std::string dump_config(const PipelineConfig& cfg);

struct DetectionStats {
  std::size_t components = 0;
  std::size_t text_blocks = 0;
  std::size_t survivors = 0;
  BinarizationMode mode = BinarizationMode::Global;
};

struct DetectionResult {
  std::vector<TextBox> boxes;
  DetectionStats stats;
};

/// gray -> median -> binarize -> 8-connected blocks -> classify ->
/// thresholds over the text blocks -> geometric filter -> merge.
DetectionResult detect_text(const ColorImage& image, const TemplateDatabase& db,
                            const PipelineConfig& cfg);

/// Copy of `image` with a 2-pixel outline around each box.
ColorImage annotate(const ColorImage& image, const std::vector<TextBox>& boxes,
                    Rgb color = Rgb{255, 0, 0});

}  // namespace sktext
