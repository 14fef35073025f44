#include "sktext/matcher.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sktext {

NccScore correlation(std::span<const double> a, std::span<const double> b, NccVariant variant) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument("correlation needs two non-empty grids of equal size");
  }
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double cross = 0.0, va = 0.0, vb = 0.0, joint = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    cross += da * db;
    va += da * da;
    vb += db * db;
    joint += da * da * db * db;
  }
  if (va == 0.0 || vb == 0.0) return {0.0, true};
  const double denom = variant == NccVariant::Standard ? std::sqrt(va * vb) : std::sqrt(joint);
  if (denom == 0.0) return {0.0, true};
  return {cross / denom, false};
}

NccScore ncc(const Template& a, const Template& b, NccVariant variant) {
  const auto& pa = a.grid().pixels();
  const auto& pb = b.grid().pixels();
  std::int64_t na = 0, nb = 0, nab = 0;
  for (int i = 0; i < kTemplateCells; ++i) {
    na += pa[i];
    nb += pb[i];
    nab += pa[i] & pb[i];
  }
  constexpr std::int64_t n = kTemplateCells;
  // n^2 * variance and n^2 * covariance, all exact.
  const std::int64_t va = n * na - na * na;
  const std::int64_t vb = n * nb - nb * nb;
  if (va == 0 || vb == 0) return {0.0, true};
  const std::int64_t cov = n * nab - na * nb;
  if (variant == NccVariant::Standard) {
    return {static_cast<double>(cov) / std::sqrt(static_cast<double>(va) * static_cast<double>(vb)),
            false};
  }
  // For binary cells the squared deviations take two values per grid, so the
  // joint sum reduces to the four cell-pair counts.
  const double ma = static_cast<double>(na) / n;
  const double mb = static_cast<double>(nb) / n;
  const double a1 = (1 - ma) * (1 - ma), a0 = ma * ma;
  const double b1 = (1 - mb) * (1 - mb), b0 = mb * mb;
  const auto n11 = static_cast<double>(nab);
  const auto n10 = static_cast<double>(na - nab);
  const auto n01 = static_cast<double>(nb - nab);
  const auto n00 = static_cast<double>(n - na - nb + nab);
  const double joint = n11 * a1 * b1 + n10 * a1 * b0 + n01 * a0 * b1 + n00 * a0 * b0;
  if (joint == 0.0) return {0.0, true};
  return {(static_cast<double>(cov) / n) / std::sqrt(joint), false};
}

MatchResult best_match(const Template& query, const TemplateDatabase& db, NccVariant variant) {
  if (db.empty()) throw std::invalid_argument("best_match needs a non-empty database");
  const auto& entries = db.entries();
  const auto count = static_cast<long long>(entries.size());
  std::vector<NccScore> scores(entries.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < count; ++i) scores[i] = ncc(query, entries[i].glyph, variant);

  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i].value > scores[best].value) best = i;
  }
  return MatchResult{*entries[best].glyph.label(), entries[best].font_tag, scores[best].value,
                     scores[best].degenerate, best};
}

void ClassifierConfig::validate() const {
  if (!(accept_threshold > -1.0 && accept_threshold < 1.0)) {
    throw std::invalid_argument("accept threshold must lie in (-1, 1)");
  }
  if (min_foreground < 0) throw std::invalid_argument("min foreground must be >= 0");
}

Classification classify_block(const ComponentBlock& block, const TemplateDatabase& db,
                              const ClassifierConfig& cfg) {
  if (block.area < cfg.min_foreground) return {};
  Template query(BinaryImage(kTemplateCols, kTemplateRows));
  try {
    // Thinning happens after size normalization, inside normalize_template.
    query = normalize_template(block.crop);
  } catch (const std::invalid_argument&) {
    return {};
  }
  MatchResult match = best_match(query, db, cfg.variant);
  const BlockClass cls = !match.degenerate && match.score >= cfg.accept_threshold
                             ? BlockClass::Text
                             : BlockClass::NonText;
  return {cls, std::move(match)};
}

}  // namespace sktext
