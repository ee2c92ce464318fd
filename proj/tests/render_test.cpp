#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <string>
#include <vector>

#include "mlsds/bundle.hpp"
#include "mlsds/render.hpp"

using namespace mlsds;
using namespace mlsds::render;

namespace {

bundle::Bundle fixture_bundle() {
  const char* dir = std::getenv("MLSDS_FIXTURE_DIR");
  REQUIRE(dir != nullptr);
  return bundle::load_bundle(dir);
}

bundle::Datasheet fixture_datasheet(bool with_study) {
  bundle::Bundle b = fixture_bundle();
  if (!with_study) b.study.reset();
  return bundle::assemble(b, mlsds::manifest::ComplianceRegistry::builtin());
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("rendering is deterministic") {
  bundle::Datasheet ds = fixture_datasheet(true);
  CHECK(render_markdown(ds) == render_markdown(ds));
  CHECK(render_html(ds) == render_html(ds));
}

TEST_CASE("the four template sections appear in order") {
  bundle::Datasheet ds = fixture_datasheet(true);
  std::string md = render_markdown(ds);
  std::size_t pos = 0;
  for (std::string_view title : kSectionTitles) {
    std::size_t found = md.find("## " + std::string(title), pos);
    REQUIRE(found != std::string::npos);
    pos = found + 1;
  }
  // No fifth top-level section.
  int h2 = 0;
  for (std::size_t i = md.find("\n## "); i != std::string::npos;
       i = md.find("\n## ", i + 1))
    ++h2;
  CHECK(h2 == 4);
}

TEST_CASE("every datasheet field is presented exactly once") {
  for (bool with_study : {false, true}) {
    bundle::Datasheet ds = fixture_datasheet(with_study);
    CHECK(collect_paths(build_document(ds)) == enumerate_field_paths(ds));
  }
}

TEST_CASE("a missing study renders as an explicit placeholder") {
  bundle::Datasheet ds = fixture_datasheet(false);
  std::string md = render_markdown(ds);
  CHECK(contains(md, "## ML Sensor Datasheet Components"));
  CHECK(contains(md, "End-to-End Performance Analysis: not provided"));
  CHECK_FALSE(contains(md, "Male participants"));
}

TEST_CASE("markdown and html carry the same field values") {
  bundle::Datasheet ds = fixture_datasheet(true);
  Document doc = build_document(ds);
  std::string md = render_markdown(doc);
  std::string html = render_html(doc);
  int checked = 0;
  for (const auto& section : doc.sections) {
    for (const auto& sub : section.subsections) {
      for (const auto& item : sub.items) {
        if (const auto* f = std::get_if<FieldItem>(&item)) {
          if (f->value.empty()) continue;
          CHECK(contains(md, f->label + ": " + f->value));
          CHECK(contains(html, html_escape(f->value)));
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("fixture values surface with their units") {
  bundle::Datasheet ds = fixture_datasheet(true);
  std::string md = render_markdown(ds);
  CHECK(contains(md, "100 kbps"));
  CHECK(contains(md, "kg CO2-eq"));
  CHECK(contains(md, "Chosen threshold: 0.52"));
}

TEST_CASE("html headings carry slug anchors") {
  bundle::Datasheet ds = fixture_datasheet(true);
  Document doc = build_document(ds);
  std::string html = render_html(doc);
  for (const auto& section : doc.sections) {
    CHECK(contains(html, "<h2 id=\"" + slugify(section.title) + "\">"));
    for (const auto& sub : section.subsections)
      if (!sub.title.empty())
        CHECK(contains(html, "<h3 id=\"" + slugify(sub.title) + "\">"));
  }
}

TEST_CASE("the privacy label URL becomes a hyperlink") {
  bundle::Datasheet ds = fixture_datasheet(true);
  std::string html = render_html(ds);
  std::string url = ds.privacy.secondary_layer_url;
  CHECK(contains(html, "<a href=\"" + url + "\">" + url + "</a>"));
}

TEST_CASE("tables escape pipe characters in markdown") {
  Document doc;
  doc.title = "t";
  Section section{"s", {}};
  Subsection sub{"", {}};
  TableItem table;
  table.header = {"a|b", "c"};
  table.rows = {{"x|y", "z"}};
  sub.items.push_back(table);
  section.subsections.push_back(sub);
  doc.sections.push_back(section);
  std::string md = render_markdown(doc);
  CHECK(contains(md, "a\\|b"));
  CHECK(contains(md, "x\\|y"));
}

TEST_CASE("file stems are filesystem-safe") {
  bundle::Datasheet ds = fixture_datasheet(false);
  ds.manifest.name = "PD-2040 rev. B/2";
  CHECK(file_stem(ds) == "PD-2040-rev.-B-2");
  ds.manifest.name = "";
  CHECK(file_stem(ds) == "datasheet");
  ds.manifest.name = "ok_name-1.2";
  CHECK(file_stem(ds) == "ok_name-1.2");
}

TEST_CASE("slugify lowercases and collapses separators") {
  CHECK(slugify("AI Datasheet Components") == "ai-datasheet-components");
  CHECK(slugify("End-to-End Performance Analysis") ==
        "end-to-end-performance-analysis");
  CHECK(slugify("  Lots   of--space ") == "lots-of-space");
  CHECK(slugify("Già") == "gi");
}

TEST_CASE("html escaping covers the five metacharacters") {
  CHECK(html_escape("a & b < c > \"d\" 'e'") ==
        "a &amp; b &lt; c &gt; &quot;d&quot; &#39;e&#39;");
  CHECK(html_escape("plain") == "plain");
}

TEST_CASE("sidecar exports cover curves, footprint, and strata") {
  bundle::Datasheet ds = fixture_datasheet(true);
  auto sidecars = sidecar_csvs(ds);
  std::vector<std::string> names;
  for (const auto& s : sidecars) names.push_back(s.filename);
  std::string stem = file_stem(ds);
  CHECK(names == std::vector<std::string>{
                     stem + ".roc.csv", stem + ".pr.csv",
                     stem + ".footprint.csv", stem + ".study_lighting.csv",
                     stem + ".study_distance.csv", stem + ".study_gender.csv",
                     stem + ".study_skintone.csv"});
  std::string md = render_markdown(ds);
  for (const auto& s : sidecars) {
    CHECK_FALSE(s.content.empty());
    CHECK(s.content.back() == '\n');
    // The document references each sidecar by name.
    CHECK(contains(md, "Full data: " + s.filename));
  }
}
