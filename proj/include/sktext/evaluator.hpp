#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sktext/image.hpp"

namespace sktext {

struct TruthBox {
  Box box;
  std::string transcription;
};

struct GroundTruth {
  std::string image_id;
  std::vector<TruthBox> boxes;
};

struct Detection {
  Box box;
  double score = 0.0;
};

struct ImageDetections {
  std::string image_id;
  std::vector<Detection> boxes;
};

/// Harmonic area overlap 2|a n b| / (|a| + |b|); 0 for disjoint or empty boxes.
double match_score(const Box& a, const Box& b);

/// Intersection over union; 0 for disjoint or empty boxes.
double iou(const Box& a, const Box& b);

enum class MatchMode {
  /// Each box scores its best harmonic-area overlap on the other side.
  SoftArea,
  /// One-to-one greedy pairing at IoU >= 0.5, counted.
  StrictIou,
};

enum class Aggregation {
  BoxWeighted,  // corpus P/R pool box-level sums over all images
  PerImage,     // plain mean of per-image P/R
};

struct EvalOptions {
  MatchMode mode = MatchMode::SoftArea;
  Aggregation aggregation = Aggregation::BoxWeighted;
};

struct MatchedPair {
  int detection = 0;  // index into that image's detections
  int truth = 0;      // index into that image's truth boxes
  double score = 0.0;
};

struct ImageReport {
  std::string image_id;
  std::vector<MatchedPair> matches;  // best truth partner for each detection
  double precision = 0.0;
  double recall = 0.0;
  std::size_t detections = 0;
  std::size_t truths = 0;
};

struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  std::vector<ImageReport> per_image;  // ordered by image id
};

double f_measure(double precision, double recall);

/// Scores detections against truth. Images present only in the truth list
/// count as having no detections; a detection image id missing from the
/// truth throws std::invalid_argument.
EvalReport evaluate(const std::vector<ImageDetections>& detections,
                    const std::vector<GroundTruth>& truth, const EvalOptions& options = {});

/// `image_id x y w h [transcription]` per line; a line holding only an image
/// id declares an image without boxes. Order of first appearance is kept.
/// Throws std::runtime_error naming the line number on malformed input.
std::vector<GroundTruth> parse_truth(std::istream& in);
std::vector<GroundTruth> load_truth(const std::filesystem::path& path);
void write_truth(std::ostream& out, const std::vector<GroundTruth>& truth);

/// `image_id x y w h score` per line.
std::vector<ImageDetections> parse_detections(std::istream& in);
std::vector<ImageDetections> load_detections(const std::filesystem::path& path);
void write_detections(std::ostream& out, const ImageDetections& dets);

/// ICDAR 2003 `tagged-rectangles` XML (imageName / taggedRectangle
/// elements). Image ids are the file stems of imageName.
std::vector<GroundTruth> load_icdar2003_xml(const std::filesystem::path& path);

/// `key: value` lines.
void write_report_text(std::ostream& out, const EvalReport& report);
/// JSON object with precision, recall, f_measure and image/box counts.
void write_report_json(std::ostream& out, const EvalReport& report);

}  // namespace sktext
