#include "sktext/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <nlohmann/json.hpp>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace sktext {

namespace {

long long intersection_area(const Box& a, const Box& b) {
  const long long w = std::min(a.right(), b.right()) - std::max(a.x, b.x);
  const long long h = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
  return (w > 0 && h > 0) ? w * h : 0;
}

bool degenerate(const Box& b) { return b.width <= 0 || b.height <= 0; }

struct Sums {
  double precision_sum = 0.0;
  double recall_sum = 0.0;
};

Sums soft_area(const std::vector<Detection>& dets, const std::vector<TruthBox>& truth,
               ImageReport& rep) {
  Sums s;
  for (std::size_t d = 0; d < dets.size(); ++d) {
    double best = 0.0;
    int best_t = -1;
    for (std::size_t t = 0; t < truth.size(); ++t) {
      const double m = match_score(dets[d].box, truth[t].box);
      if (m > best) {
        best = m;
        best_t = static_cast<int>(t);
      }
    }
    s.precision_sum += best;
    if (best_t >= 0) rep.matches.push_back({static_cast<int>(d), best_t, best});
  }
  for (const auto& t : truth) {
    double best = 0.0;
    for (const auto& d : dets) best = std::max(best, match_score(d.box, t.box));
    s.recall_sum += best;
  }
  return s;
}

Sums strict_iou(const std::vector<Detection>& dets, const std::vector<TruthBox>& truth,
                ImageReport& rep) {
  std::vector<MatchedPair> candidates;
  for (std::size_t d = 0; d < dets.size(); ++d) {
    for (std::size_t t = 0; t < truth.size(); ++t) {
      const double v = iou(dets[d].box, truth[t].box);
      if (v >= 0.5) candidates.push_back({static_cast<int>(d), static_cast<int>(t), v});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& a, const auto& b) { return a.score > b.score; });
  std::vector<bool> det_used(dets.size()), truth_used(truth.size());
  Sums s;
  for (const auto& c : candidates) {
    if (det_used[c.detection] || truth_used[c.truth]) continue;
    det_used[c.detection] = truth_used[c.truth] = true;
    rep.matches.push_back(c);
    s.precision_sum += 1.0;
    s.recall_sum += 1.0;
  }
  std::sort(rep.matches.begin(), rep.matches.end(),
            [](const auto& a, const auto& b) { return a.detection < b.detection; });
  return s;
}

[[noreturn]] void parse_fail(int line_no, const std::string& msg) {
  throw std::runtime_error("line " + std::to_string(line_no) + ": " + msg);
}

Box read_box(std::istringstream& ss, int line_no) {
  Box b;
  if (!(ss >> b.x >> b.y >> b.width >> b.height)) parse_fail(line_no, "expected `x y w h`");
  if (b.x < 0 || b.y < 0 || b.width < 0 || b.height < 0) {
    parse_fail(line_no, "box coordinates must be non-negative");
  }
  return b;
}

}  // namespace

double match_score(const Box& a, const Box& b) {
  if (degenerate(a) || degenerate(b)) return 0.0;
  return 2.0 * static_cast<double>(intersection_area(a, b)) /
         static_cast<double>(a.area() + b.area());
}

double iou(const Box& a, const Box& b) {
  if (degenerate(a) || degenerate(b)) return 0.0;
  const auto inter = static_cast<double>(intersection_area(a, b));
  return inter / (static_cast<double>(a.area() + b.area()) - inter);
}

double f_measure(double precision, double recall) {
  return precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

EvalReport evaluate(const std::vector<ImageDetections>& detections,
                    const std::vector<GroundTruth>& truth, const EvalOptions& options) {
  std::map<std::string, const GroundTruth*> truth_by_id;
  for (const auto& gt : truth) {
    if (!truth_by_id.emplace(gt.image_id, &gt).second) {
      throw std::invalid_argument("duplicate truth image id '" + gt.image_id + "'");
    }
  }
  std::map<std::string, std::vector<Detection>> dets_by_id;
  for (const auto& d : detections) {
    if (!truth_by_id.count(d.image_id)) {
      throw std::invalid_argument("detections reference unknown image id '" + d.image_id + "'");
    }
    auto& list = dets_by_id[d.image_id];
    list.insert(list.end(), d.boxes.begin(), d.boxes.end());
  }

  EvalReport report;
  double p_sum = 0.0, r_sum = 0.0, p_mean = 0.0, r_mean = 0.0;
  std::size_t n_det = 0, n_truth = 0;
  for (const auto& [id, gt] : truth_by_id) {
    static const std::vector<Detection> kNone;
    const auto it = dets_by_id.find(id);
    const auto& dets = it == dets_by_id.end() ? kNone : it->second;
    ImageReport rep;
    rep.image_id = id;
    rep.detections = dets.size();
    rep.truths = gt->boxes.size();
    const Sums s = options.mode == MatchMode::SoftArea ? soft_area(dets, gt->boxes, rep)
                                                       : strict_iou(dets, gt->boxes, rep);
    rep.precision = dets.empty() ? (gt->boxes.empty() ? 1.0 : 0.0)
                                 : s.precision_sum / static_cast<double>(dets.size());
    rep.recall = gt->boxes.empty() ? 1.0 : s.recall_sum / static_cast<double>(gt->boxes.size());
    p_sum += s.precision_sum;
    r_sum += s.recall_sum;
    p_mean += rep.precision;
    r_mean += rep.recall;
    n_det += dets.size();
    n_truth += gt->boxes.size();
    report.per_image.push_back(std::move(rep));
  }

  if (options.aggregation == Aggregation::BoxWeighted) {
    report.precision = n_det == 0 ? (n_truth == 0 ? 1.0 : 0.0) : p_sum / static_cast<double>(n_det);
    report.recall = n_truth == 0 ? 1.0 : r_sum / static_cast<double>(n_truth);
  } else if (!report.per_image.empty()) {
    report.precision = p_mean / static_cast<double>(report.per_image.size());
    report.recall = r_mean / static_cast<double>(report.per_image.size());
  } else {
    report.precision = report.recall = 1.0;
  }
  report.f_measure = f_measure(report.precision, report.recall);
  return report;
}

std::vector<GroundTruth> parse_truth(std::istream& in) {
  std::vector<GroundTruth> out;
  std::map<std::string, std::size_t> index;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string id;
    if (!(ss >> id) || id.front() == '#') continue;
    auto [it, inserted] = index.try_emplace(id, out.size());
    if (inserted) out.push_back(GroundTruth{id, {}});
    if (!(ss >> std::ws) || ss.eof()) continue;  // bare id line
    TruthBox tb{read_box(ss, line_no), {}};
    std::getline(ss >> std::ws, tb.transcription);
    out[it->second].boxes.push_back(std::move(tb));
  }
  return out;
}

std::vector<GroundTruth> load_truth(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open truth file " + path.string());
  try {
    return parse_truth(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_truth(std::ostream& out, const std::vector<GroundTruth>& truth) {
  for (const auto& gt : truth) {
    if (gt.boxes.empty()) out << gt.image_id << '\n';
    for (const auto& tb : gt.boxes) {
      out << gt.image_id << ' ' << tb.box.x << ' ' << tb.box.y << ' ' << tb.box.width << ' '
          << tb.box.height;
      if (!tb.transcription.empty()) out << ' ' << tb.transcription;
      out << '\n';
    }
  }
}

std::vector<ImageDetections> parse_detections(std::istream& in) {
  std::vector<ImageDetections> out;
  std::map<std::string, std::size_t> index;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string id;
    if (!(ss >> id) || id.front() == '#') continue;
    Detection d{read_box(ss, line_no), 0.0};
    if (!(ss >> d.score)) parse_fail(line_no, "expected `image_id x y w h score`");
    std::string extra;
    if (ss >> extra) parse_fail(line_no, "trailing text '" + extra + "'");
    auto [it, inserted] = index.try_emplace(id, out.size());
    if (inserted) out.push_back(ImageDetections{id, {}});
    out[it->second].boxes.push_back(d);
  }
  return out;
}

std::vector<ImageDetections> load_detections(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open detection file " + path.string());
  try {
    return parse_detections(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_detections(std::ostream& out, const ImageDetections& dets) {
  for (const auto& d : dets.boxes) {
    char score[32];
    std::snprintf(score, sizeof score, "%.6f", d.score);
    out << dets.image_id << ' ' << d.box.x << ' ' << d.box.y << ' ' << d.box.width << ' '
        << d.box.height << ' ' << score << '\n';
  }
}

std::vector<GroundTruth> load_icdar2003_xml(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string xml = buf.str();

  static const std::regex image_re(R"(<image>([\s\S]*?)</image>)");
  static const std::regex name_re(R"(<imageName>\s*([^<]*?)\s*</imageName>)");
  static const std::regex rect_re(R"(<taggedRectangle\b([^>]*)>([\s\S]*?)</taggedRectangle>)");
  static const std::regex tag_re(R"(<tag>\s*([^<]*?)\s*</tag>)");
  auto attribute = [&](const std::string& attrs, const std::string& key) {
    const std::regex re("\\b" + key + R"re(\s*=\s*"([^"]*)")re");
    std::smatch m;
    if (!std::regex_search(attrs, m, re)) {
      throw std::runtime_error(path.string() + ": taggedRectangle without " + key);
    }
    return std::stod(m[1].str());
  };

  std::vector<GroundTruth> out;
  for (auto it = std::sregex_iterator(xml.begin(), xml.end(), image_re);
       it != std::sregex_iterator(); ++it) {
    const std::string body = (*it)[1].str();
    std::smatch name;
    if (!std::regex_search(body, name, name_re)) {
      throw std::runtime_error(path.string() + ": <image> without <imageName>");
    }
    GroundTruth gt{std::filesystem::path(name[1].str()).stem().string(), {}};
    for (auto r = std::sregex_iterator(body.begin(), body.end(), rect_re);
         r != std::sregex_iterator(); ++r) {
      const std::string attrs = (*r)[1].str();
      const std::string inner = (*r)[2].str();
      TruthBox tb;
      tb.box = Box{static_cast<int>(std::lround(attribute(attrs, "x"))),
                   static_cast<int>(std::lround(attribute(attrs, "y"))),
                   static_cast<int>(std::lround(attribute(attrs, "width"))),
                   static_cast<int>(std::lround(attribute(attrs, "height")))};
      std::smatch tag;
      if (std::regex_search(inner, tag, tag_re)) tb.transcription = tag[1].str();
      gt.boxes.push_back(std::move(tb));
    }
    out.push_back(std::move(gt));
  }
  return out;
}

void write_report_text(std::ostream& out, const EvalReport& report) {
  std::size_t dets = 0, truths = 0;
  for (const auto& r : report.per_image) {
    dets += r.detections;
    truths += r.truths;
  }
  out << std::fixed << std::setprecision(4);
  out << "images: " << report.per_image.size() << '\n'
      << "detections: " << dets << '\n'
      << "truth_boxes: " << truths << '\n'
      << "precision: " << report.precision << '\n'
      << "recall: " << report.recall << '\n'
      << "f_measure: " << report.f_measure << '\n';
  out.unsetf(std::ios::floatfield);
}

void write_report_json(std::ostream& out, const EvalReport& report) {
  nlohmann::ordered_json j;
  j["precision"] = report.precision;
  j["recall"] = report.recall;
  j["f_measure"] = report.f_measure;
  j["images"] = report.per_image.size();
  auto& per = j["per_image"] = nlohmann::ordered_json::array();
  for (const auto& r : report.per_image) {
    per.push_back({{"image_id", r.image_id},
                   {"precision", r.precision},
                   {"recall", r.recall},
                   {"detections", r.detections},
                   {"truth_boxes", r.truths}});
  }
  out << j.dump(2) << '\n';
}

}  // namespace sktext
