#pragma once

#include <array>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mlsds/bundle.hpp"

namespace mlsds::render {

// Intermediate document model shared by the Markdown and HTML renderers,
// so both formats carry exactly the same values. `path` ties an item back
// to the datasheet field it presents; items with an empty path (or empty
// path list) are derived presentation extras and are ignored by the field
// coverage check.
struct FieldItem {
  std::string path;
  std::string label;
  std::string value;
};

struct TableItem {
  std::vector<std::string> paths;
  std::string csv_note;  // sidecar pointer line, empty for none
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct NoteItem {
  std::string text;
};

using Item = std::variant<FieldItem, TableItem, NoteItem>;

struct Subsection {
  std::string title;
  std::vector<Item> items;
};

struct Section {
  std::string title;
  std::vector<Subsection> subsections;
};

struct Document {
  std::string title;
  std::vector<FieldItem> preamble;
  std::vector<Section> sections;
};

// Top-level section titles, in template order.
inline constexpr std::array<std::string_view, 4> kSectionTitles = {
    "Standard Sensor Datasheet Components",
    "IoT Datasheet Components",
    "AI Datasheet Components",
    "ML Sensor Datasheet Components",
};

Document build_document(const bundle::Datasheet& d);

std::string render_markdown(const Document& doc);
std::string render_html(const Document& doc);
std::string render_markdown(const bundle::Datasheet& d);
std::string render_html(const bundle::Datasheet& d);

// Canonical inventory of the datasheet's field paths, and the paths a
// document actually presents (in order, duplicates preserved). The
// coverage test requires the two to agree exactly.
std::vector<std::string> enumerate_field_paths(const bundle::Datasheet& d);
std::vector<std::string> collect_paths(const Document& doc);

// Sidecar CSV exports referenced from the document.
struct Sidecar {
  std::string filename;
  std::string content;
};

std::vector<Sidecar> sidecar_csvs(const bundle::Datasheet& d);

// Base name for output files, derived from the manifest name.
std::string file_stem(const bundle::Datasheet& d);

std::string slugify(std::string_view heading);
std::string html_escape(std::string_view text);

}  // namespace mlsds::render
