#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sktext/evaluator.hpp"
#include "sktext/pipeline.hpp"
#include "sktext/synth.hpp"

namespace sktext::cli {

enum ExitCode : int { kOk = 0, kPartialFailure = 1, kFatal = 2 };

struct SheetInput {
  std::filesystem::path image;
  std::filesystem::path layout;
  std::string font_tag;
};

/// Loads a sheet image as gray plus its layout.
GlyphSheet load_sheet(const SheetInput& input);

struct BuildTemplatesArgs {
  std::vector<SheetInput> sheets;
  std::filesystem::path out_db;
};

struct DetectArgs {
  std::vector<std::filesystem::path> images;  // files or directories
  PipelineConfig config;
  std::filesystem::path out_dir;
  bool annotate = true;
};

struct EvaluateArgs {
  std::filesystem::path detections;
  std::filesystem::path truth;
  bool icdar_xml = false;
  std::optional<std::filesystem::path> summary;
  EvalOptions options;
};

struct SynthArgs {
  std::uint64_t first_seed = 0;
  std::uint64_t last_seed = 0;
  SheetInput sheet;
  std::filesystem::path out_dir;
  SceneSpec scene;  // seed field is overwritten per scene
};

int cmd_build_templates(const BuildTemplatesArgs& args, std::ostream& out, std::ostream& err);
/// Writes detections.txt (input order), <id>.txt and, optionally, <id>.png.
int cmd_detect(const DetectArgs& args, std::ostream& out, std::ostream& err);
int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err);
/// Writes <id>.png per scene and one truth.txt.
int cmd_synth(const SynthArgs& args, std::ostream& out, std::ostream& err);

/// Scene image id for a seed.
std::string scene_id(std::uint64_t seed);

/// Parses argv and dispatches to a subcommand.
int run(int argc, char** argv);

}  // namespace sktext::cli
