#include "sktext/template_db.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <iterator>
#include <sstream>

#include "sktext/components.hpp"

namespace sktext {

namespace {

constexpr std::array<char, 6> kMagic{'S', 'K', 'T', 'D', 'B', '1'};
constexpr int kRowBytes = (kTemplateCols + 7) / 8;
static_assert(kTemplateCols % 8 == 0, "rows pack into whole bytes");
constexpr int kGridBytes = kRowBytes * kTemplateRows;  // 126

std::string label_string(char c) { return std::string(1, c); }

}  // namespace

bool is_template_label(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

void TemplateDatabase::add(Template glyph, std::string font_tag) {
  if (!glyph.label()) {
    throw DatabaseError(DbErrc::UnknownLabel, "database templates need a label");
  }
  const char label = *glyph.label();
  if (!is_template_label(label)) {
    throw DatabaseError(DbErrc::UnknownLabel,
                        "label " + std::to_string(static_cast<int>(label)) + " not in A-Z/a-z/0-9");
  }
  if (font_tag.size() > 255) {
    throw DatabaseError(DbErrc::DimensionMismatch, "font tag longer than 255 bytes");
  }
  for (const auto& e : entries_) {
    if (e.font_tag == font_tag && e.glyph.label() == glyph.label()) {
      throw DatabaseError(DbErrc::DuplicateEntry,
                          "duplicate template '" + label_string(label) + "' for font '" +
                              font_tag + "'");
    }
  }
  entries_.push_back(TemplateEntry{std::move(glyph), std::move(font_tag)});
}

void TemplateDatabase::sort() {
  std::stable_sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
    if (a.font_tag != b.font_tag) return a.font_tag < b.font_tag;
    return *a.glyph.label() < *b.glyph.label();
  });
}

GlyphLayout parse_layout(std::istream& in) {
  GlyphLayout layout;
  bool have_header = false;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("layout line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    if (first == "cell") {
      std::string origin;
      if (!(ss >> layout.cell_width >> layout.cell_height >> origin >> layout.origin_x >>
            layout.origin_y) ||
          origin != "origin") {
        fail("expected `cell <w> <h> origin <x> <y>`");
      }
      if (layout.cell_width < 1 || layout.cell_height < 1 || layout.origin_x < 0 ||
          layout.origin_y < 0) {
        fail("cell size must be positive and origin non-negative");
      }
      have_header = true;
      continue;
    }
    if (!have_header) fail("glyph entry before the `cell` header");
    GlyphLayout::Cell cell;
    std::string label;
    try {
      cell.row = std::stoi(first);
    } catch (const std::exception&) {
      fail("expected `row col label`");
    }
    if (!(ss >> cell.col >> label) || label.size() != 1 || cell.row < 0 || cell.col < 0) {
      fail("expected `row col label`");
    }
    cell.label = label[0];
    if (!is_template_label(cell.label)) fail("label '" + label + "' not in A-Z/a-z/0-9");
    std::string extra;
    if (ss >> extra) fail("trailing text '" + extra + "'");
    layout.cells.push_back(cell);
  }
  if (!have_header) throw std::runtime_error("layout has no `cell` header");
  return layout;
}

GlyphLayout load_layout(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open layout " + path.string());
  try {
    return parse_layout(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

BuildError::BuildError(std::vector<GlyphIssue> issues)
    : std::runtime_error([&] {
        std::string msg = std::to_string(issues.size()) + " glyph(s) failed:";
        for (const auto& i : issues) {
          msg += "\n  " + i.sheet + " cell (" + std::to_string(i.row) + "," +
                 std::to_string(i.col) + ") '" + label_string(i.label) + "': " + i.message;
        }
        return msg;
      }()),
      issues_(std::move(issues)) {}

Template glyph_template(const GrayImage& cell, const BinarizationConfig& cfg) {
  BinarizationConfig adaptive = cfg;
  adaptive.mode = BinarizationMode::Adaptive;
  const Labeling labeling = label_components(binarize(cell, adaptive), Connectivity::Eight);
  if (labeling.blocks.empty()) {
    throw std::invalid_argument("no foreground after binarization");
  }
  const auto largest = std::max_element(
      labeling.blocks.begin(), labeling.blocks.end(),
      [](const auto& a, const auto& b) { return a.area < b.area; });
  // Same order as query blocks: normalize the filled glyph, then thin.
  return normalize_template(largest->crop);
}

TemplateDatabase build_database(const std::vector<GlyphSheet>& sheets,
                                const BinarizationConfig& cfg) {
  TemplateDatabase db;
  std::vector<GlyphIssue> issues;
  for (const auto& sheet : sheets) {
    for (const auto& cell : sheet.layout.cells) {
      auto issue = [&](std::string msg) {
        issues.push_back(GlyphIssue{sheet.name, cell.row, cell.col, cell.label, std::move(msg)});
      };
      const Box box = sheet.layout.cell_box(cell);
      if (box.right() > sheet.image.width() || box.bottom() > sheet.image.height()) {
        issue("cell lies outside the sheet");
        continue;
      }
      try {
        Template glyph = glyph_template(crop(sheet.image, box), cfg);
        glyph.set_label(cell.label);
        db.add(std::move(glyph), sheet.font_tag);
      } catch (const std::exception& e) {
        issue(e.what());
      }
    }
  }
  if (!issues.empty()) throw BuildError(std::move(issues));
  if (db.empty()) throw BuildError({GlyphIssue{"", 0, 0, '?', "no glyphs in any layout"}});
  db.sort();
  return db;
}

void write_database(std::ostream& out, const TemplateDatabase& db) {
  if (db.empty()) throw DatabaseError(DbErrc::Empty, "refusing to write an empty database");
  std::string buf(kMagic.begin(), kMagic.end());
  auto put_u8 = [&](std::uint8_t v) { buf.push_back(static_cast<char>(v)); };
  auto put_u16 = [&](std::uint16_t v) {
    put_u8(v & 0xff);
    put_u8(v >> 8);
  };
  auto put_u32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) put_u8((v >> (8 * i)) & 0xff);
  };
  put_u16(db.version());
  put_u32(static_cast<std::uint32_t>(db.size()));
  for (const auto& e : db.entries()) {
    put_u8(static_cast<std::uint8_t>(*e.glyph.label()));
    put_u8(static_cast<std::uint8_t>(e.font_tag.size()));
    buf += e.font_tag;
    const BinaryImage& g = e.glyph.grid();
    for (int y = 0; y < kTemplateRows; ++y) {
      for (int byte = 0; byte < kRowBytes; ++byte) {
        std::uint8_t packed = 0;
        for (int bit = 0; bit < 8; ++bit) {
          const int x = byte * 8 + bit;
          if (x < kTemplateCols && g(x, y)) packed |= static_cast<std::uint8_t>(0x80 >> bit);
        }
        put_u8(packed);
      }
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw DatabaseError(DbErrc::Io, "write failed");
}

TemplateDatabase read_database(std::istream& in) {
  const std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t pos = 0;
  auto need = [&](std::size_t n, const char* what) {
    if (buf.size() - pos < n) {
      throw DatabaseError(DbErrc::Truncated,
                          std::string("truncated ") + what + ": expected at least " +
                              std::to_string(pos + n) + " bytes, file has " +
                              std::to_string(buf.size()));
    }
  };
  auto get_u8 = [&]() { return static_cast<std::uint8_t>(buf[pos++]); };

  need(kMagic.size(), "magic");
  if (!std::equal(kMagic.begin(), kMagic.end(), buf.begin())) {
    throw DatabaseError(DbErrc::BadMagic, "not a template database (bad magic)");
  }
  pos = kMagic.size();
  need(2, "header");
  std::uint16_t version = get_u8();
  version |= static_cast<std::uint16_t>(get_u8() << 8);
  if (version != TemplateDatabase::kFormatVersion) {
    throw DatabaseError(DbErrc::UnsupportedVersion,
                        "unsupported database version " + std::to_string(version));
  }
  need(4, "header");
  std::uint32_t count = 0;
  for (int i = 0; i < 4; ++i) count |= static_cast<std::uint32_t>(get_u8()) << (8 * i);
  if (count == 0) throw DatabaseError(DbErrc::Empty, "database has no entries");

  TemplateDatabase db;
  for (std::uint32_t i = 0; i < count; ++i) {
    need(2, "entry header");
    const char label = static_cast<char>(get_u8());
    const std::uint8_t tag_len = get_u8();
    need(tag_len, "font tag");
    std::string tag = buf.substr(pos, tag_len);
    pos += tag_len;
    need(kGridBytes, "template grid");
    BinaryImage grid(kTemplateCols, kTemplateRows, 0);
    for (int y = 0; y < kTemplateRows; ++y) {
      for (int byte = 0; byte < kRowBytes; ++byte) {
        const std::uint8_t packed = get_u8();
        for (int bit = 0; bit < 8; ++bit) {
          grid(byte * 8 + bit, y) = (packed & (0x80 >> bit)) != 0 ? 1 : 0;
        }
      }
    }
    if (count_foreground(grid) == 0) {
      throw DatabaseError(DbErrc::DimensionMismatch,
                          "entry " + std::to_string(i) + " has an empty grid");
    }
    db.add(Template(std::move(grid), label), std::move(tag));
  }
  if (pos != buf.size()) {
    throw DatabaseError(DbErrc::TrailingData, "expected " + std::to_string(pos) +
                                                  " bytes, file has " + std::to_string(buf.size()));
  }
  return db;
}

void save_database(const TemplateDatabase& db, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DatabaseError(DbErrc::Io, "cannot open " + path.string() + " for writing");
  try {
    write_database(out, db);
  } catch (const DatabaseError& e) {
    throw DatabaseError(e.code(), path.string() + ": " + e.what());
  }
}

TemplateDatabase load_database(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatabaseError(DbErrc::Io, "cannot open " + path.string());
  try {
    return read_database(in);
  } catch (const DatabaseError& e) {
    throw DatabaseError(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace sktext
