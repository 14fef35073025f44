#include "commands.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "sktext/image_io.hpp"
#include "sktext/template_db.hpp"

namespace sktext::cli {

namespace fs = std::filesystem;

GlyphSheet load_sheet(const SheetInput& input) {
  GlyphSheet sheet;
  sheet.name = input.image.string();
  sheet.image = to_grayscale(read_image(input.image));
  sheet.layout = load_layout(input.layout);
  sheet.font_tag = input.font_tag.empty() ? input.image.stem().string() : input.font_tag;
  return sheet;
}

std::string scene_id(std::uint64_t seed) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "scene_%04llu", static_cast<unsigned long long>(seed));
  return buf;
}

int cmd_build_templates(const BuildTemplatesArgs& args, std::ostream& out, std::ostream& err) {
  std::vector<GlyphSheet> sheets;
  try {
    for (const auto& s : args.sheets) sheets.push_back(load_sheet(s));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFatal;
  }
  TemplateDatabase db;
  try {
    db = build_database(sheets);
  } catch (const BuildError& e) {
    err << "error: " << e.what() << '\n';
    return kFatal;
  }
  try {
    save_database(db, args.out_db);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFatal;
  }
  std::map<std::string, int> per_font;
  for (const auto& e : db.entries()) ++per_font[e.font_tag];
  out << db.size() << " templates written to " << args.out_db.string() << '\n';
  for (const auto& [font, n] : per_font) out << "  " << font << ": " << n << '\n';
  return kOk;
}

namespace {

std::vector<fs::path> expand_inputs(const std::vector<fs::path>& inputs) {
  std::vector<fs::path> files;
  for (const auto& p : inputs) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(p)) {
        auto ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
        if (entry.is_regular_file() && (ext == ".png" || ext == ".jpg" || ext == ".jpeg" ||
                                        ext == ".bmp" || ext == ".tif" || ext == ".tiff")) {
          found.push_back(entry.path());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(p);
    }
  }
  return files;
}

struct ImageOutcome {
  std::string id;
  std::optional<ColorImage> image;
  DetectionResult result;
  std::string error;
};

}  // namespace

int cmd_detect(const DetectArgs& args, std::ostream& out, std::ostream& err) {
  TemplateDatabase db;
  try {
    args.config.validate();
    db = load_database(args.config.db_path);
  } catch (const std::exception& e) {
    err << "fatal: " << e.what() << '\n';
    return kFatal;
  }
  std::error_code ec;
  fs::create_directories(args.out_dir, ec);
  if (ec) {
    err << "fatal: cannot create " << args.out_dir.string() << ": " << ec.message() << '\n';
    return kFatal;
  }

  const std::vector<fs::path> files = expand_inputs(args.images);
  std::vector<ImageOutcome> outcomes(files.size());
  const int threads = args.config.threads > 0 ? args.config.threads : omp_get_max_threads();
  const auto count = static_cast<long long>(files.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long long i = 0; i < count; ++i) {
    ImageOutcome& o = outcomes[i];
    o.id = files[i].stem().string();
    try {
      o.image = read_image(files[i]);
      o.result = detect_text(*o.image, db, args.config);
    } catch (const std::exception& e) {
      o.error = e.what();
    }
  }

  bool partial = false;
  std::ofstream all(args.out_dir / "detections.txt", std::ios::trunc);
  for (const auto& o : outcomes) {
    if (!o.error.empty()) {
      err << "warning: skipping " << o.id << ": " << o.error << '\n';
      partial = true;
      continue;
    }
    ImageDetections dets{o.id, {}};
    for (const auto& tb : o.result.boxes) dets.boxes.push_back(Detection{tb.box, tb.score});
    write_detections(all, dets);
    std::ofstream single(args.out_dir / (o.id + ".txt"), std::ios::trunc);
    write_detections(single, dets);
    if (args.annotate) {
      try {
        write_png(args.out_dir / (o.id + ".png"), annotate(*o.image, o.result.boxes));
      } catch (const std::exception& e) {
        err << "warning: " << e.what() << '\n';
        partial = true;
      }
    }
    out << o.id << ": " << o.result.boxes.size() << " box(es)\n";
  }
  if (!all) {
    err << "fatal: cannot write detections\n";
    return kFatal;
  }
  return partial ? kPartialFailure : kOk;
}

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const auto truth = args.icdar_xml ? load_icdar2003_xml(args.truth) : load_truth(args.truth);
    const auto dets = load_detections(args.detections);
    const EvalReport report = evaluate(dets, truth, args.options);
    write_report_text(out, report);
    if (args.summary) {
      std::ofstream js(*args.summary, std::ios::trunc);
      write_report_json(js, report);
      if (!js) throw std::runtime_error("cannot write " + args.summary->string());
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFatal;
  }
  return kOk;
}

int cmd_synth(const SynthArgs& args, std::ostream& out, std::ostream& err) {
  std::optional<GlyphAtlas> atlas;
  try {
    atlas.emplace(load_sheet(args.sheet));
  } catch (const std::exception& e) {
    err << "fatal: " << e.what() << '\n';
    return kFatal;
  }
  std::error_code ec;
  fs::create_directories(args.out_dir, ec);
  if (ec) {
    err << "fatal: cannot create " << args.out_dir.string() << '\n';
    return kFatal;
  }
  std::vector<GroundTruth> truth;
  bool partial = false;
  int written = 0;
  for (std::uint64_t seed = args.first_seed; seed <= args.last_seed; ++seed) {
    SceneSpec spec = args.scene;
    spec.seed = seed;
    try {
      Scene scene = generate_scene(*atlas, spec, scene_id(seed));
      write_png(args.out_dir / (scene.truth.image_id + ".png"), scene.image);
      truth.push_back(std::move(scene.truth));
      ++written;
    } catch (const LayoutOverflow& e) {
      err << "warning: " << e.what() << '\n';
      partial = true;
    } catch (const std::exception& e) {
      err << "warning: seed " << seed << ": " << e.what() << '\n';
      partial = true;
    }
    if (seed == args.last_seed) break;
  }
  std::ofstream tf(args.out_dir / "truth.txt", std::ios::trunc);
  write_truth(tf, truth);
  if (!tf) {
    err << "fatal: cannot write truth file\n";
    return kFatal;
  }
  out << written << " scene(s) written to " << args.out_dir.string() << '\n';
  return partial ? kPartialFailure : kOk;
}

namespace {

std::vector<SheetInput> zip_sheets(const std::vector<std::string>& images,
                                   const std::vector<std::string>& layouts,
                                   const std::vector<std::string>& tags) {
  if (images.size() != layouts.size()) {
    throw CLI::ValidationError("--sheet", "each --sheet needs a matching --layout");
  }
  if (!tags.empty() && tags.size() != images.size()) {
    throw CLI::ValidationError("--font-tag", "give one --font-tag per --sheet or none");
  }
  std::vector<SheetInput> out;
  for (std::size_t i = 0; i < images.size(); ++i) {
    out.push_back(SheetInput{images[i], layouts[i], tags.empty() ? "" : tags[i]});
  }
  return out;
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& s) {
  const auto dash = s.find('-');
  try {
    if (dash == std::string::npos) {
      const auto v = std::stoull(s);
      return {v, v};
    }
    const auto lo = std::stoull(s.substr(0, dash));
    const auto hi = std::stoull(s.substr(dash + 1));
    if (hi < lo) throw std::invalid_argument("descending");
    return {lo, hi};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--seeds", "expected N or A-B, got '" + s + "'");
  }
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Skeleton-matching scene text localization"};
  app.require_subcommand(1);

  // build-templates
  auto* build = app.add_subcommand("build-templates", "build a template database from glyph sheets");
  std::vector<std::string> b_images, b_layouts, b_tags;
  std::string b_out;
  build->add_option("--sheet", b_images, "glyph sheet image (repeatable)")->required();
  build->add_option("--layout", b_layouts, "layout descriptor per sheet")->required();
  build->add_option("--font-tag", b_tags, "font tag per sheet (default: sheet file stem)");
  build->add_option("-o,--out", b_out, "output database file")->required();

  // detect
  auto* detect = app.add_subcommand("detect", "localize text in images");
  std::vector<std::string> d_inputs;
  std::string d_config, d_out, d_db, d_threads, d_granularity, d_pairing, d_variant, d_mode;
  std::optional<double> d_accept, d_rule_scale, d_dilation_factor;
  std::optional<int> d_window, d_offset;
  bool d_no_annotate = false;
  detect->add_option("images", d_inputs, "image files or directories")->required();
  detect->add_option("-c,--config", d_config, "JSON pipeline config");
  detect->add_option("--db", d_db, "template database (overrides config)");
  detect->add_option("-o,--out", d_out, "output directory")->required();
  detect->add_option("--threads", d_threads, "thread count or 'auto'");
  detect->add_option("--granularity", d_granularity, "word or line")
      ->check(CLI::IsMember({"word", "line"}));
  detect->add_option("--accept-threshold", d_accept, "minimum correlation for a text block");
  detect->add_option("--window", d_window, "adaptive threshold window (odd)");
  detect->add_option("--offset-c", d_offset, "adaptive threshold offset");
  detect->add_option("--rule-scale", d_rule_scale, "multiplier for the pixel-size rules");
  detect->add_option("--dilation-factor", d_dilation_factor, "dilation width / median height");
  detect->add_option("--pairing", d_pairing, "T1/T2 statistics")
      ->check(CLI::IsMember({"mean_aspect_std_density", "mean_density_std_aspect"}));
  detect->add_option("--ncc-variant", d_variant, "standard or single_sum")
      ->check(CLI::IsMember({"standard", "single_sum"}));
  detect->add_option("--binarization", d_mode, "auto, global or adaptive")
      ->check(CLI::IsMember({"auto", "global", "adaptive"}));
  detect->add_flag("--no-annotate", d_no_annotate, "skip annotated PNG output");

  // evaluate
  auto* evaluate_cmd = app.add_subcommand("evaluate", "score detections against ground truth");
  std::string e_dets, e_truth, e_summary, e_format = "lines", e_mode = "soft";
  bool e_per_image = false;
  evaluate_cmd->add_option("--detections", e_dets, "detection line file")->required();
  evaluate_cmd->add_option("--truth", e_truth, "ground-truth file")->required();
  evaluate_cmd->add_option("--truth-format", e_format, "lines or icdar2003")
      ->check(CLI::IsMember({"lines", "icdar2003"}));
  evaluate_cmd->add_option("--summary", e_summary, "write a JSON summary here");
  evaluate_cmd->add_option("--match", e_mode, "soft (harmonic area) or iou")
      ->check(CLI::IsMember({"soft", "iou"}));
  evaluate_cmd->add_flag("--per-image-mean", e_per_image, "average per-image P/R instead of pooling boxes");

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic scene corpus");
  std::string s_seeds = "0-49", s_sheet, s_layout, s_tag, s_out;
  std::vector<std::string> s_backgrounds{"flat", "gradient"};
  double s_noise = 4.0;
  synth->add_option("--seeds", s_seeds, "seed or inclusive range A-B");
  synth->add_option("--sheet", s_sheet, "glyph sheet image")->required();
  synth->add_option("--layout", s_layout, "layout descriptor")->required();
  synth->add_option("-o,--out", s_out, "output directory")->required();
  synth->add_option("--backgrounds", s_backgrounds, "flat, gradient, texture")
      ->delimiter(',')
      ->check(CLI::IsMember({"flat", "gradient", "texture"}));
  synth->add_option("--noise", s_noise, "maximum Gaussian noise sigma");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kFatal;
  }

  try {
    if (*build) {
      return cmd_build_templates({zip_sheets(b_images, b_layouts, b_tags), b_out}, std::cout,
                                 std::cerr);
    }
    if (*detect) {
      DetectArgs a;
      a.config = d_config.empty() ? PipelineConfig{} : load_config(d_config);
      if (!d_db.empty()) a.config.db_path = d_db;
      if (!d_threads.empty()) a.config.threads = d_threads == "auto" ? 0 : std::stoi(d_threads);
      if (!d_granularity.empty()) {
        a.config.localizer =
            d_granularity == "line" ? LocalizerConfig::line() : LocalizerConfig::word();
      }
      if (d_dilation_factor) a.config.localizer.dilation_width_factor = *d_dilation_factor;
      if (d_accept) a.config.classifier.accept_threshold = *d_accept;
      if (d_window) a.config.binarization.window = *d_window;
      if (d_offset) a.config.binarization.offset_c = *d_offset;
      if (d_rule_scale) a.config.rule_scale = *d_rule_scale;
      if (!d_pairing.empty()) {
        a.config.pairing = d_pairing == "mean_aspect_std_density"
                               ? ThresholdPairing::MeanAspectStdDensity
                               : ThresholdPairing::MeanDensityStdAspect;
      }
      if (!d_variant.empty()) {
        a.config.classifier.variant =
            d_variant == "standard" ? NccVariant::Standard : NccVariant::SingleSum;
      }
      if (!d_mode.empty()) {
        a.config.binarization.mode = d_mode == "auto"     ? BinarizationMode::Auto
                                     : d_mode == "global" ? BinarizationMode::Global
                                                          : BinarizationMode::Adaptive;
      }
      if (a.config.db_path.empty()) {
        std::cerr << "fatal: no template database (--db or db_path in config)\n";
        return kFatal;
      }
      a.images.assign(d_inputs.begin(), d_inputs.end());
      a.out_dir = d_out;
      a.annotate = !d_no_annotate;
      return cmd_detect(a, std::cout, std::cerr);
    }
    if (*evaluate_cmd) {
      EvaluateArgs a;
      a.detections = e_dets;
      a.truth = e_truth;
      a.icdar_xml = e_format == "icdar2003";
      if (!e_summary.empty()) a.summary = e_summary;
      a.options.mode = e_mode == "soft" ? MatchMode::SoftArea : MatchMode::StrictIou;
      a.options.aggregation = e_per_image ? Aggregation::PerImage : Aggregation::BoxWeighted;
      return cmd_evaluate(a, std::cout, std::cerr);
    }
    if (*synth) {
      SynthArgs a;
      std::tie(a.first_seed, a.last_seed) = parse_seed_range(s_seeds);
      a.sheet = SheetInput{s_sheet, s_layout, s_tag};
      a.out_dir = s_out;
      a.scene.backgrounds.clear();
      for (const auto& b : s_backgrounds) {
        a.scene.backgrounds.push_back(b == "flat"       ? Background::Flat
                                      : b == "gradient" ? Background::Gradient
                                                        : Background::Texture);
      }
      a.scene.max_noise_sigma = s_noise;
      return cmd_synth(a, std::cout, std::cerr);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kFatal;
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << '\n';
    return kFatal;
  }
  return kFatal;
}

}  // namespace sktext::cli
