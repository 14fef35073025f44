#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "sktext/binarization.hpp"
#include "sktext/image.hpp"
#include "sktext/skeleton.hpp"

namespace sktext {

/// True for A-Z, a-z and 0-9.
bool is_template_label(char c);

struct TemplateEntry {
  Template glyph;  // label always present
  std::string font_tag;
  friend bool operator==(const TemplateEntry&, const TemplateEntry&) = default;
};

enum class DbErrc {
  Io,
  Truncated,
  BadMagic,
  UnsupportedVersion,
  DimensionMismatch,
  UnknownLabel,
  DuplicateEntry,
  Empty,
  TrailingData,
};

class DatabaseError : public std::runtime_error {
 public:
  DatabaseError(DbErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  DbErrc code() const { return code_; }

 private:
  DbErrc code_;
};

/// Labelled skeleton templates, unique per (label, font tag).
class TemplateDatabase {
 public:
  static constexpr std::uint16_t kFormatVersion = 1;

  /// Throws DatabaseError on unknown label, missing label or duplicates.
  void add(Template glyph, std::string font_tag);

  /// Orders entries by (font tag, label).
  void sort();

  const std::vector<TemplateEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::uint16_t version() const { return version_; }

  friend bool operator==(const TemplateDatabase&, const TemplateDatabase&) = default;

 private:
  std::vector<TemplateEntry> entries_;
  std::uint16_t version_ = kFormatVersion;
};

/// Grid of glyph cells on a sheet: header `cell <w> <h> origin <x> <y>`,
/// then one `row col label` line per glyph. Blank lines and `#` comments
/// are ignored.
struct GlyphLayout {
  struct Cell {
    int row = 0;
    int col = 0;
    char label = 0;
  };
  int cell_width = 0;
  int cell_height = 0;
  int origin_x = 0;
  int origin_y = 0;
  std::vector<Cell> cells;

  Box cell_box(const Cell& cell) const {
    return Box{origin_x + cell.col * cell_width, origin_y + cell.row * cell_height, cell_width,
               cell_height};
  }
};

/// Throws std::runtime_error with the offending line number.
GlyphLayout parse_layout(std::istream& in);
GlyphLayout load_layout(const std::filesystem::path& path);

struct GlyphSheet {
  std::string name;  // for diagnostics
  GrayImage image;
  GlyphLayout layout;
  std::string font_tag;
};

struct GlyphIssue {
  std::string sheet;
  int row = 0;
  int col = 0;
  char label = 0;
  std::string message;
};

class BuildError : public std::runtime_error {
 public:
  explicit BuildError(std::vector<GlyphIssue> issues);
  const std::vector<GlyphIssue>& issues() const { return issues_; }

 private:
  std::vector<GlyphIssue> issues_;
};

/// Largest 8-connected component of the adaptively binarized cell,
/// normalized to 42x24 and thinned. Throws std::invalid_argument when the cell
/// has no foreground.
Template glyph_template(const GrayImage& cell, const BinarizationConfig& cfg);

/// Every glyph of every sheet; entries ordered by (font tag, label).
/// Collects all per-glyph failures into one BuildError.
TemplateDatabase build_database(const std::vector<GlyphSheet>& sheets,
                                const BinarizationConfig& cfg = {});

/// Little-endian "SKTDB1" format; byte-identical for equal databases.
void write_database(std::ostream& out, const TemplateDatabase& db);
TemplateDatabase read_database(std::istream& in);

void save_database(const TemplateDatabase& db, const std::filesystem::path& path);
TemplateDatabase load_database(const std::filesystem::path& path);

}  // namespace sktext
