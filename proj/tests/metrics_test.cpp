#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <vector>

#include "mlsds/metrics.hpp"

using namespace mlsds;
using namespace mlsds::metrics;

namespace {

std::vector<EvalRecord> records(
    std::initializer_list<std::pair<double, int>> items) {
  std::vector<EvalRecord> out;
  for (auto [score, label] : items) out.push_back({score, label != 0});
  return out;
}

// Fraction of (positive, negative) pairs with positive scored higher, ties
// counting one half. Independent oracle for the trapezoidal AUC.
double pairwise_auc(const std::vector<EvalRecord>& recs) {
  double wins = 0.0;
  std::int64_t pairs = 0;
  for (const auto& p : recs) {
    if (!p.label) continue;
    for (const auto& n : recs) {
      if (n.label) continue;
      pairs++;
      if (p.score > n.score)
        wins += 1.0;
      else if (p.score == n.score)
        wins += 0.5;
    }
  }
  return wins / static_cast<double>(pairs);
}

std::int64_t error_count(const std::vector<EvalRecord>& recs, double t) {
  std::int64_t errors = 0;
  for (const auto& r : recs) {
    bool predicted = r.score >= t;
    if (predicted != r.label) errors++;
  }
  return errors;
}

// Exhaustive sweep over the documented candidate set; ties resolve to the
// smallest candidate. Oracle for select_threshold.
double brute_force_threshold(const std::vector<EvalRecord>& recs) {
  std::vector<double> distinct;
  for (const auto& r : recs) distinct.push_back(r.score);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());
  std::vector<double> candidates;
  candidates.push_back(distinct.front() > 0.0 ? distinct.front() / 2.0 : 0.0);
  for (std::size_t i = 1; i < distinct.size(); ++i)
    candidates.push_back((distinct[i - 1] + distinct[i]) / 2.0);
  candidates.push_back(distinct.back() < 1.0 ? (distinct.back() + 1.0) / 2.0
                                             : 1.0);
  double best = candidates.front();
  std::int64_t best_errors = error_count(recs, best);
  for (double t : candidates) {
    std::int64_t errors = error_count(recs, t);
    if (errors < best_errors) {
      best_errors = errors;
      best = t;
    }
  }
  return best;
}

std::vector<EvalRecord> random_set(std::mt19937& rng, bool with_ties) {
  std::uniform_int_distribution<int> size_dist(2, 50);
  std::uniform_real_distribution<double> score_dist(0.0, 1.0);
  std::uniform_int_distribution<int> grid_dist(0, 9);
  std::bernoulli_distribution label_dist(0.5);
  int n = size_dist(rng);
  std::vector<EvalRecord> recs;
  bool saw_pos = false;
  bool saw_neg = false;
  for (int i = 0; i < n; ++i) {
    double score = with_ties ? grid_dist(rng) / 9.0 : score_dist(rng);
    bool label = label_dist(rng);
    if (i == n - 2 && !saw_pos) label = true;
    if (i == n - 1 && !saw_neg) label = false;
    (label ? saw_pos : saw_neg) = true;
    recs.push_back({score, label});
  }
  return recs;
}

}  // namespace

TEST_CASE("AUC on hand-checked sets") {
  CHECK(roc_curve(records({{0.9, 1}, {0.8, 1}, {0.3, 0}, {0.1, 0}})).auc ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(roc_curve(records({{0.9, 1}, {0.4, 0}, {0.35, 1}, {0.1, 0}})).auc ==
        doctest::Approx(0.75).epsilon(1e-12));
  CHECK(roc_curve(records({{0.5, 1}, {0.5, 0}})).auc ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("trapezoidal AUC equals the pairwise rank statistic") {
  std::mt19937 rng(7741);
  for (int i = 0; i < 200; ++i) {
    auto recs = random_set(rng, i % 2 == 0);
    CHECK(std::abs(roc_curve(recs).auc - pairwise_auc(recs)) < 1e-9);
  }
}

TEST_CASE("ROC points are monotone and span (0,0) to (1,1)") {
  std::mt19937 rng(991);
  for (int i = 0; i < 50; ++i) {
    auto recs = random_set(rng, i % 2 == 0);
    RocCurve curve = roc_curve(recs);
    REQUIRE(curve.points.size() >= 2);
    CHECK(curve.points.front().fpr == 0.0);
    CHECK(curve.points.front().tpr == 0.0);
    CHECK(curve.points.back().fpr == 1.0);
    CHECK(curve.points.back().tpr == 1.0);
    for (std::size_t j = 1; j < curve.points.size(); ++j) {
      CHECK(curve.points[j].fpr >= curve.points[j - 1].fpr);
      CHECK(curve.points[j].tpr >= curve.points[j - 1].tpr);
    }
  }
}

TEST_CASE("labels independent of scores give a chance-level AUC") {
  std::mt19937 rng(55);
  std::uniform_real_distribution<double> score_dist(0.0, 1.0);
  std::bernoulli_distribution label_dist(0.5);
  std::vector<EvalRecord> recs;
  for (int i = 0; i < 1000; ++i)
    recs.push_back({score_dist(rng), label_dist(rng)});
  double auc = roc_curve(recs).auc;
  CHECK(auc > 0.40);
  CHECK(auc < 0.60);
}

TEST_CASE("PR curve on hand-checked sets") {
  PrCurve perfect = pr_curve(records({{0.9, 1}, {0.8, 1}, {0.3, 0}, {0.1, 0}}));
  bool hit = false;
  for (const auto& p : perfect.points)
    if (p.recall == 1.0 && p.precision == 1.0) hit = true;
  CHECK(hit);
  CHECK(perfect.points.front().recall == 0.0);
  CHECK(perfect.points.front().precision == 1.0);

  PrCurve crossed = pr_curve(records({{0.2, 1}, {0.8, 0}}));
  CHECK(crossed.points.back().recall == 1.0);
  CHECK(crossed.points.back().precision == doctest::Approx(0.5));

  PrCurve no_negatives = pr_curve(records({{0.9, 1}, {0.2, 1}}));
  for (const auto& p : no_negatives.points) CHECK(p.precision == 1.0);
}

TEST_CASE("PR curve requires a positive record") {
  CHECK_THROWS_AS(pr_curve(records({{0.4, 0}, {0.6, 0}})), DomainError);
}

TEST_CASE("threshold selection on hand-checked sets") {
  CHECK(select_threshold(records({{0.6, 1}, {0.7, 1}, {0.5, 0}, {0.4, 0}})) ==
        doctest::Approx(0.55).epsilon(1e-12));
  // Perfectly separated with a gap: the midpoint wins.
  CHECK(select_threshold(records({{0.8, 1}, {0.9, 1}, {0.2, 0}, {0.3, 0}})) ==
        doctest::Approx(0.55).epsilon(1e-12));
}

TEST_CASE("select_threshold matches the exhaustive sweep") {
  std::mt19937 rng(1234);
  for (int i = 0; i < 200; ++i) {
    auto recs = random_set(rng, i % 2 == 0);
    double got = select_threshold(recs);
    double expected = brute_force_threshold(recs);
    CHECK(got == doctest::Approx(expected).epsilon(1e-12));
    CHECK(error_count(recs, got) == error_count(recs, expected));
  }
}

TEST_CASE("select_threshold is invariant under monotone transforms") {
  // Rank-preserving map applied to all scores: the chosen threshold moves,
  // but the error count it achieves is unchanged.
  std::mt19937 rng(4242);
  for (int i = 0; i < 50; ++i) {
    auto recs = random_set(rng, false);
    double before = error_count(recs, select_threshold(recs));
    auto mapped = recs;
    for (auto& r : mapped) r.score = r.score * r.score;  // increasing on [0,1]
    double after = error_count(mapped, select_threshold(mapped));
    CHECK(before == after);
  }
}

TEST_CASE("cost weights shift the chosen threshold") {
  // Interleaved classes: candidates 0.15/0.55/0.85 all make two errors
  // under equal costs, so the smallest wins; unequal costs break the tie
  // toward the cheap error kind.
  auto recs = records({{0.3, 1}, {0.6, 1}, {0.5, 0}, {0.7, 0}});
  CHECK(select_threshold(recs) == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(select_threshold(recs, 10.0, 1.0) ==
        doctest::Approx(0.85).epsilon(1e-12));
  CHECK(select_threshold(recs, 1.0, 10.0) ==
        doctest::Approx(0.15).epsilon(1e-12));
}

TEST_CASE("degenerate class mixes are rejected") {
  CHECK_THROWS_AS(select_threshold(records({{0.4, 1}, {0.6, 1}})),
                  DomainError);
  CHECK_THROWS_AS(roc_curve(records({{0.4, 0}, {0.6, 0}})), DomainError);
  CHECK_THROWS_AS(build_model_report(records({{0.4, 1}, {0.6, 1}}), {}),
                  DomainError);
}

TEST_CASE("confusion matrix on hand-checked sets") {
  ConfusionMatrix m =
      confusion_at(records({{0.6, 1}, {0.7, 1}, {0.5, 0}, {0.4, 0}}), 0.55);
  CHECK(m.tp == 2);
  CHECK(m.fp == 0);
  CHECK(m.fn == 0);
  CHECK(m.tn == 2);
  CHECK(m.accuracy() == 1.0);

  ConfusionMatrix floor =
      confusion_at(records({{0.6, 1}, {0.1, 0}, {0.0, 0}}), 0.0);
  CHECK(floor.fn == 0);
  CHECK(floor.tn == 0);

  ConfusionMatrix empty = confusion_at({}, 0.5);
  CHECK(empty.total() == 0);
  CHECK(empty.accuracy() == 1.0);
  CHECK(empty.precision() == 1.0);
  CHECK(empty.recall() == 1.0);
}

TEST_CASE("confusion counts and identities hold on random data") {
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> t_dist(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    auto recs = random_set(rng, i % 2 == 0);
    double t = t_dist(rng);
    ConfusionMatrix m = confusion_at(recs, t);
    CHECK(m.tp + m.fp + m.fn + m.tn ==
          static_cast<std::int64_t>(recs.size()));
    CHECK(m.accuracy() == static_cast<double>(m.tp + m.tn) /
                              static_cast<double>(recs.size()));
    if (m.tp + m.fp > 0)
      CHECK(m.precision() ==
            static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp));
    if (m.tp + m.fn > 0)
      CHECK(m.recall() ==
            static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn));
    double p = m.precision();
    double r = m.recall();
    if (p + r > 0.0) CHECK(m.f1() == doctest::Approx(2 * p * r / (p + r)));
    CHECK(m.accuracy() >= 0.0);
    CHECK(m.accuracy() <= 1.0);
  }
  CHECK_THROWS_AS(confusion_at(records({{0.5, 1}, {0.4, 0}}), 1.5),
                  DomainError);
}

TEST_CASE("f1 is zero when precision and recall are both zero") {
  ConfusionMatrix m = confusion_at(records({{0.2, 1}, {0.8, 0}}), 0.5);
  CHECK(m.tp == 0);
  CHECK(m.f1() == 0.0);
}

TEST_CASE("report composition and permutation invariance") {
  auto recs = records({{0.9, 1}, {0.8, 1}, {0.3, 0}, {0.1, 0}});
  ModelReport report = build_model_report(recs, {});
  CHECK(report.roc.auc == doctest::Approx(1.0));
  CHECK(report.accuracy == doctest::Approx(1.0));
  CHECK(report.confusion.threshold == report.chosen_threshold);

  std::mt19937 rng(77);
  for (int i = 0; i < 20; ++i) {
    auto shuffled = recs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    ModelReport again = build_model_report(shuffled, {});
    CHECK(to_json(again) == to_json(report));
  }
}

TEST_CASE("eval CSV ingestion") {
  std::istringstream good("score,label\n0.9,1\n0.1,0\n");
  auto recs = read_eval_csv(good, "scores.csv");
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].score == 0.9);
  CHECK(recs[0].label);
  CHECK_FALSE(recs[1].label);

  std::istringstream bad_header("fpr,tpr\n0,0\n");
  CHECK_THROWS_AS(read_eval_csv(bad_header, "scores.csv"), SchemaError);

  std::istringstream bad_score("score,label\n1.2,1\n");
  try {
    read_eval_csv(bad_score, "scores.csv");
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(e.path() == "model.eval_records[0].score");
    CHECK(std::string(e.what()).find("scores.csv:2") != std::string::npos);
  }

  std::istringstream bad_label("score,label\n0.5,yes\n");
  CHECK_THROWS_AS(read_eval_csv(bad_label, "scores.csv"), SchemaError);

  std::istringstream ragged("score,label\n0.5\n");
  CHECK_THROWS_AS(read_eval_csv(ragged, "scores.csv"), SchemaError);

  std::istringstream empty("");
  CHECK_THROWS_AS(read_eval_csv(empty, "scores.csv"), SchemaError);
}

TEST_CASE("model meta parses and rejects negatives") {
  Json doc = Json::parse(R"({
    "architecture": "MobileNetV1 0.25x",
    "parameter_count": 221794,
    "input_shape": "96x96x1 uint8",
    "output_schema": "confidence in [0,1]"
  })");
  ModelMeta meta = parse_model_meta(doc, "model.meta");
  CHECK(meta.architecture == "MobileNetV1 0.25x");
  CHECK(meta.parameter_count == 221794);

  doc["parameter_count"] = -1;
  CHECK_THROWS_AS(parse_model_meta(doc, "model.meta"), SchemaError);
}

TEST_CASE("curve CSVs export every point in order") {
  auto recs = records({{0.9, 1}, {0.4, 0}, {0.35, 1}, {0.1, 0}});
  RocCurve roc = roc_curve(recs);
  std::ostringstream out;
  write_roc_csv(roc, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "fpr,tpr");
  std::size_t rows = 0;
  while (std::getline(in, line)) rows++;
  CHECK(rows == roc.points.size());

  std::ostringstream pr_out;
  write_pr_csv(pr_curve(recs), pr_out);
  CHECK(pr_out.str().rfind("recall,precision\n", 0) == 0);
}
