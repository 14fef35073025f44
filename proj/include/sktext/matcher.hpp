#pragma once

#include <optional>
#include <span>
#include <string>

#include "sktext/components.hpp"
#include "sktext/skeleton.hpp"
#include "sktext/template_db.hpp"

namespace sktext {

/// Denominator of the correlation score.
enum class NccVariant {
  /// sqrt(sum (a-ma)^2 * sum (b-mb)^2): the Pearson coefficient.
  Standard,
  /// sqrt(sum (a-ma)^2 (b-mb)^2), single sum of the squared product. Not
  /// bounded by [-1, 1]; kept for comparison runs only.
  SingleSum,
};

struct NccScore {
  double value = 0.0;
  bool degenerate = false;  // a grid had zero variance; value is 0
};

/// Correlation coefficient of two equally sized real grids.
NccScore correlation(std::span<const double> a, std::span<const double> b,
                     NccVariant variant = NccVariant::Standard);

/// Correlation of two templates. The standard form is evaluated in exact
/// integer arithmetic up to the final division and square root, so
/// ncc(t, t) == 1 and ncc(t, ~t) == -1 hold exactly.
NccScore ncc(const Template& a, const Template& b, NccVariant variant = NccVariant::Standard);

struct MatchResult {
  char label = 0;
  std::string font_tag;
  double score = 0.0;
  bool degenerate = false;
  std::size_t index = 0;  // position of the entry in the database
};

/// Highest-scoring entry; ties keep the earlier entry. Throws on empty db.
MatchResult best_match(const Template& query, const TemplateDatabase& db,
                       NccVariant variant = NccVariant::Standard);

struct ClassifierConfig {
  // A solid rectangle normalizes to a full grid whose thinned form scores
  // 0.551 against the bundled font's "T"; the default sits just above it.
  double accept_threshold = 0.56;
  long long min_foreground = 8;
  NccVariant variant = NccVariant::Standard;

  void validate() const;
};

enum class BlockClass { Text, NonText };

struct Classification {
  BlockClass cls = BlockClass::NonText;
  std::optional<MatchResult> match;  // absent when matching was skipped
};

Classification classify_block(const ComponentBlock& block, const TemplateDatabase& db,
                              const ClassifierConfig& cfg);

}  // namespace sktext
