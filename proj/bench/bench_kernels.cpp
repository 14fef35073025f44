// Serial reference kernels against their OpenMP versions. The `threads`
// argument sets the OpenMP team size for the parallel variants.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <filesystem>
#include <random>

#include "sktext/binarization.hpp"
#include "sktext/image_io.hpp"
#include "sktext/localizer.hpp"
#include "sktext/matcher.hpp"
#include "sktext/pipeline.hpp"
#include "sktext/reference.hpp"
#include "sktext/synth.hpp"
#include "sktext/template_db.hpp"

using namespace sktext;

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 480;

GlyphSheet sheet() {
  const std::filesystem::path fonts = std::filesystem::path(SKTEXT_ASSETS_DIR) / "fonts";
  GlyphSheet s;
  s.name = "simplex";
  s.font_tag = "simplex";
  s.image = to_grayscale(read_image(fonts / "hershey_simplex.png"));
  s.layout = load_layout(fonts / "hershey_simplex.layout");
  return s;
}

const TemplateDatabase& db() {
  static const TemplateDatabase d = build_database({sheet()});
  return d;
}

const Scene& scene() {
  static const Scene s = [] {
    const GlyphAtlas atlas(sheet());
    SceneSpec spec;
    spec.seed = 5;
    return generate_scene(atlas, spec, "bench");
  }();
  return s;
}

const GrayImage& gray() {
  static const GrayImage g = to_grayscale(scene().image);
  return g;
}

const BinaryImage& sparse_mask() {
  static const BinaryImage m = [] {
    std::mt19937_64 rng(3);
    std::bernoulli_distribution bit(0.02);
    BinaryImage b(kWidth, kHeight);
    for (auto& v : b.pixels()) v = bit(rng);
    return b;
  }();
  return m;
}

const Template& query() {
  static const Template t = [] {
    std::mt19937_64 rng(4);
    std::bernoulli_distribution bit(0.15);
    BinaryImage g(kTemplateCols, kTemplateRows);
    for (auto& v : g.pixels()) v = bit(rng);
    return Template(g);
  }();
  return t;
}

BinarizationConfig adaptive_cfg() {
  BinarizationConfig cfg;
  cfg.mode = BinarizationMode::Adaptive;
  cfg.polarity = Polarity::DarkText;
  return cfg;
}

void set_threads(const benchmark::State& state) { omp_set_num_threads(static_cast<int>(state.range(0))); }

void BM_Grayscale_Reference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reference::to_grayscale(scene().image));
}
void BM_Grayscale_OpenMP(benchmark::State& state) {
  set_threads(state);
  for (auto _ : state) benchmark::DoNotOptimize(to_grayscale(scene().image));
}

void BM_Median_Reference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reference::median_filter(gray(), 1));
}
void BM_Median_OpenMP(benchmark::State& state) {
  set_threads(state);
  for (auto _ : state) benchmark::DoNotOptimize(median_filter(gray(), 1));
}

void BM_Adaptive_Reference(benchmark::State& state) {
  const auto cfg = adaptive_cfg();
  for (auto _ : state) benchmark::DoNotOptimize(reference::adaptive_binarize(gray(), cfg));
}
void BM_Adaptive_OpenMP(benchmark::State& state) {
  set_threads(state);
  const auto cfg = adaptive_cfg();
  for (auto _ : state) benchmark::DoNotOptimize(adaptive_binarize(gray(), cfg));
}

void BM_BestMatch_Reference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reference::best_match(query(), db()));
}
void BM_BestMatch_OpenMP(benchmark::State& state) {
  set_threads(state);
  for (auto _ : state) benchmark::DoNotOptimize(best_match(query(), db()));
}

void BM_Dilate_Reference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reference::dilate(sparse_mask(), 12, 3));
}
void BM_Dilate_OpenMP(benchmark::State& state) {
  set_threads(state);
  for (auto _ : state) benchmark::DoNotOptimize(dilate(sparse_mask(), 12, 3));
}

void BM_DetectScene(benchmark::State& state) {
  PipelineConfig cfg;
  cfg.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(detect_text(scene().image, db(), cfg));
}

void thread_counts(benchmark::internal::Benchmark* b) {
  for (int t : {1, 2, 4}) b->Arg(t);
  b->ArgName("threads")->Unit(benchmark::kMicrosecond);
}

}  // namespace

BENCHMARK(BM_Grayscale_Reference)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Grayscale_OpenMP)->Apply(thread_counts);
BENCHMARK(BM_Median_Reference)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Median_OpenMP)->Apply(thread_counts);
BENCHMARK(BM_Adaptive_Reference)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Adaptive_OpenMP)->Apply(thread_counts);
BENCHMARK(BM_BestMatch_Reference)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BestMatch_OpenMP)->Apply(thread_counts);
BENCHMARK(BM_Dilate_Reference)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Dilate_OpenMP)->Apply(thread_counts);
BENCHMARK(BM_DetectScene)->Apply(thread_counts);

int main(int argc, char** argv) {
  // Build the shared fixtures up front so no benchmark times their setup.
  gray();
  db();
  sparse_mask();
  query();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
