#include "sktext/pipeline.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sktext {

using nlohmann::json;

void PipelineConfig::validate() const {
  if (median_radius < 1) throw std::invalid_argument("median_radius must be >= 1");
  binarization.validate();
  classifier.validate();
  localizer.validate();
  if (!(rule_scale > 0.0)) throw std::invalid_argument("rule_scale must be positive");
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
}

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw std::invalid_argument(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw std::invalid_argument("unknown config key '" + where + key + "'");
  }
}

template <typename Enum>
Enum parse_enum(const json& v, const std::vector<std::pair<std::string, Enum>>& names,
                const std::string& key) {
  const auto s = v.get<std::string>();
  for (const auto& [name, value] : names) {
    if (name == s) return value;
  }
  throw std::invalid_argument("invalid value '" + s + "' for " + key);
}

template <typename Enum>
std::string enum_name(Enum value, const std::vector<std::pair<std::string, Enum>>& names) {
  for (const auto& [name, v] : names) {
    if (v == value) return name;
  }
  return "?";
}

const std::vector<std::pair<std::string, BinarizationMode>> kModes{
    {"auto", BinarizationMode::Auto},
    {"global", BinarizationMode::Global},
    {"adaptive", BinarizationMode::Adaptive}};
const std::vector<std::pair<std::string, Polarity>> kPolarities{
    {"auto", Polarity::Auto}, {"dark", Polarity::DarkText}, {"light", Polarity::LightText}};
const std::vector<std::pair<std::string, NccVariant>> kVariants{
    {"standard", NccVariant::Standard}, {"single_sum", NccVariant::SingleSum}};
const std::vector<std::pair<std::string, Granularity>> kGranularities{
    {"word", Granularity::Word}, {"line", Granularity::Line}};
const std::vector<std::pair<std::string, ThresholdPairing>> kPairings{
    {"mean_aspect_std_density", ThresholdPairing::MeanAspectStdDensity},
    {"mean_density_std_aspect", ThresholdPairing::MeanDensityStdAspect}};

}  // namespace

PipelineConfig parse_config(const std::string& json_text) {
  PipelineConfig cfg;
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    reject_unknown(root,
                   {"median_radius", "binarization", "classifier", "localizer",
                    "threshold_pairing", "rule_scale", "db_path", "threads"},
                   "");
    if (root.contains("median_radius")) cfg.median_radius = root["median_radius"].get<int>();
    if (root.contains("binarization")) {
      const json& b = root["binarization"];
      reject_unknown(b,
                     {"mode", "global_threshold", "window", "offset_c", "uniformity_cutoff",
                      "polarity"},
                     "binarization.");
      auto& out = cfg.binarization;
      if (b.contains("mode")) out.mode = parse_enum(b["mode"], kModes, "binarization.mode");
      if (b.contains("global_threshold") && !b["global_threshold"].is_null()) {
        out.global_threshold = b["global_threshold"].get<int>();
      }
      if (b.contains("window")) out.window = b["window"].get<int>();
      if (b.contains("offset_c")) out.offset_c = b["offset_c"].get<int>();
      if (b.contains("uniformity_cutoff")) out.uniformity_cutoff = b["uniformity_cutoff"].get<double>();
      if (b.contains("polarity")) {
        out.polarity = parse_enum(b["polarity"], kPolarities, "binarization.polarity");
      }
    }
    if (root.contains("classifier")) {
      const json& c = root["classifier"];
      reject_unknown(c, {"accept_threshold", "min_foreground", "ncc_variant"}, "classifier.");
      auto& out = cfg.classifier;
      if (c.contains("accept_threshold")) out.accept_threshold = c["accept_threshold"].get<double>();
      if (c.contains("min_foreground")) out.min_foreground = c["min_foreground"].get<long long>();
      if (c.contains("ncc_variant")) {
        out.variant = parse_enum(c["ncc_variant"], kVariants, "classifier.ncc_variant");
      }
    }
    if (root.contains("localizer")) {
      const json& l = root["localizer"];
      reject_unknown(l, {"granularity", "dilation_width_factor", "dilation_height"}, "localizer.");
      if (l.contains("granularity")) {
        const auto g = parse_enum(l["granularity"], kGranularities, "localizer.granularity");
        cfg.localizer = g == Granularity::Word ? LocalizerConfig::word() : LocalizerConfig::line();
      }
      if (l.contains("dilation_width_factor")) {
        cfg.localizer.dilation_width_factor = l["dilation_width_factor"].get<double>();
      }
      if (l.contains("dilation_height")) cfg.localizer.dilation_height = l["dilation_height"].get<int>();
    }
    if (root.contains("threshold_pairing")) {
      cfg.pairing = parse_enum(root["threshold_pairing"], kPairings, "threshold_pairing");
    }
    if (root.contains("rule_scale")) cfg.rule_scale = root["rule_scale"].get<double>();
    if (root.contains("db_path")) cfg.db_path = root["db_path"].get<std::string>();
    if (root.contains("threads")) {
      const json& t = root["threads"];
      if (t.is_string()) {
        if (t.get<std::string>() != "auto") throw std::invalid_argument("threads must be a count or \"auto\"");
        cfg.threads = 0;
      } else {
        cfg.threads = t.get<int>();
      }
    }
  } catch (const json::type_error& e) {
    throw std::invalid_argument(std::string("config value has the wrong type: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

std::string dump_config(const PipelineConfig& cfg) {
  nlohmann::ordered_json j;
  j["median_radius"] = cfg.median_radius;
  j["binarization"] = {
      {"mode", enum_name(cfg.binarization.mode, kModes)},
      {"global_threshold", cfg.binarization.global_threshold ? json(*cfg.binarization.global_threshold)
                                                             : json(nullptr)},
      {"window", cfg.binarization.window},
      {"offset_c", cfg.binarization.offset_c},
      {"uniformity_cutoff", cfg.binarization.uniformity_cutoff},
      {"polarity", enum_name(cfg.binarization.polarity, kPolarities)}};
  j["classifier"] = {{"accept_threshold", cfg.classifier.accept_threshold},
                     {"min_foreground", cfg.classifier.min_foreground},
                     {"ncc_variant", enum_name(cfg.classifier.variant, kVariants)}};
  j["localizer"] = {{"granularity", enum_name(cfg.localizer.granularity, kGranularities)},
                    {"dilation_width_factor", cfg.localizer.dilation_width_factor},
                    {"dilation_height", cfg.localizer.dilation_height}};
  j["threshold_pairing"] = enum_name(cfg.pairing, kPairings);
  j["rule_scale"] = cfg.rule_scale;
  j["db_path"] = cfg.db_path.string();
  if (cfg.threads == 0) {
    j["threads"] = "auto";
  } else {
    j["threads"] = cfg.threads;
  }
  return j.dump(2);
}

DetectionResult detect_text(const ColorImage& image, const TemplateDatabase& db,
                            const PipelineConfig& cfg) {
  DetectionResult result;
  GrayImage gray = to_grayscale(image);
  if (cfg.median_radius < std::min(gray.width(), gray.height())) {
    gray = median_filter(gray, cfg.median_radius);
  }
  BinarizationConfig bin_cfg = cfg.binarization;
  if (bin_cfg.mode == BinarizationMode::Auto) bin_cfg.mode = select_mode(gray, bin_cfg);
  if (bin_cfg.mode == BinarizationMode::Adaptive && bin_cfg.window > gray.width() &&
      bin_cfg.window > gray.height()) {
    bin_cfg.mode = BinarizationMode::Global;
  }
  result.stats.mode = bin_cfg.mode;
  const Labeling labeling = label_components(binarize(gray, bin_cfg), Connectivity::Eight);
  result.stats.components = labeling.blocks.size();

  std::vector<ComponentBlock> text_blocks;
  std::vector<double> scores;
  for (const auto& block : labeling.blocks) {
    const Classification c = classify_block(block, db, cfg.classifier);
    if (c.cls != BlockClass::Text) continue;
    text_blocks.push_back(block);
    scores.push_back(c.match->score);
  }
  result.stats.text_blocks = text_blocks.size();
  if (text_blocks.empty()) return result;

  const RuleThresholds th = compute_thresholds(text_blocks, cfg.pairing);
  const RuleLimits limits = RuleLimits::scaled(cfg.rule_scale);
  std::vector<ScoredBlock> survivors;
  for (std::size_t i = 0; i < text_blocks.size(); ++i) {
    if (!rejected(text_blocks[i], th, limits)) survivors.push_back({text_blocks[i], scores[i]});
  }
  result.stats.survivors = survivors.size();
  result.boxes = merge_text_regions(survivors, image.width(), image.height(), cfg.localizer);
  return result;
}

ColorImage annotate(const ColorImage& image, const std::vector<TextBox>& boxes, Rgb color) {
  ColorImage out = image;
  for (const auto& tb : boxes) {
    const Box& b = tb.box;
    for (int t = 0; t < 2; ++t) {
      for (int x = b.x - t; x < b.right() + t; ++x) {
        for (int y : {b.y - 1 - t, b.bottom() + t}) {
          if (out.contains(x, y)) out(x, y) = color;
        }
      }
      for (int y = b.y - 1 - t; y <= b.bottom() + t; ++y) {
        for (int x : {b.x - 1 - t, b.right() + t}) {
          if (out.contains(x, y)) out(x, y) = color;
        }
      }
    }
  }
  return out;
}

}  // namespace sktext
