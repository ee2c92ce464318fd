#include "mlsds/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "mlsds/csv.hpp"

namespace mlsds::metrics {

namespace {

struct SortedScores {
  std::vector<double> scores;  // descending
  std::vector<bool> labels;
  std::int64_t positives = 0;
  std::int64_t negatives = 0;
};

SortedScores sort_descending(std::span<const EvalRecord> records) {
  std::vector<const EvalRecord*> ptrs;
  ptrs.reserve(records.size());
  for (const auto& r : records) ptrs.push_back(&r);
  std::stable_sort(ptrs.begin(), ptrs.end(),
                   [](const EvalRecord* a, const EvalRecord* b) {
                     return a->score > b->score;
                   });
  SortedScores out;
  out.scores.reserve(records.size());
  out.labels.reserve(records.size());
  for (const auto* r : ptrs) {
    out.scores.push_back(r->score);
    out.labels.push_back(r->label);
    (r->label ? out.positives : out.negatives)++;
  }
  return out;
}

void require_both_classes(const SortedScores& s) {
  if (s.positives == 0 || s.negatives == 0)
    throw DomainError("eval_records",
                      "evaluation records contain only one class");
}

}  // namespace

double ConfusionMatrix::accuracy() const {
  std::int64_t n = total();
  return n == 0 ? 1.0 : static_cast<double>(tp + tn) / static_cast<double>(n);
}

double ConfusionMatrix::precision() const {
  std::int64_t denom = tp + fp;
  return denom == 0 ? 1.0
                    : static_cast<double>(tp) / static_cast<double>(denom);
}

double ConfusionMatrix::recall() const {
  std::int64_t denom = tp + fn;
  return denom == 0 ? 1.0
                    : static_cast<double>(tp) / static_cast<double>(denom);
}

double ConfusionMatrix::f1() const {
  double p = precision();
  double r = recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

RocCurve roc_curve(std::span<const EvalRecord> records) {
  auto s = sort_descending(records);
  require_both_classes(s);

  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  for (std::size_t i = 0; i < s.scores.size();) {
    std::size_t j = i;
    while (j < s.scores.size() && s.scores[j] == s.scores[i]) {
      (s.labels[j] ? tp : fp)++;
      ++j;
    }
    curve.points.push_back(
        {static_cast<double>(fp) / static_cast<double>(s.negatives),
         static_cast<double>(tp) / static_cast<double>(s.positives)});
    i = j;
  }

  double auc = 0.0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& a = curve.points[i - 1];
    const auto& b = curve.points[i];
    auc += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
  }
  curve.auc = auc;
  return curve;
}

PrCurve pr_curve(std::span<const EvalRecord> records) {
  auto s = sort_descending(records);
  if (s.positives == 0)
    throw DomainError("eval_records",
                      "evaluation records contain no positive class");

  PrCurve curve;
  curve.points.push_back({0.0, 1.0});
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  for (std::size_t i = 0; i < s.scores.size();) {
    std::size_t j = i;
    while (j < s.scores.size() && s.scores[j] == s.scores[i]) {
      (s.labels[j] ? tp : fp)++;
      ++j;
    }
    curve.points.push_back(
        {static_cast<double>(tp) / static_cast<double>(s.positives),
         static_cast<double>(tp) / static_cast<double>(tp + fp)});
    i = j;
  }
  return curve;
}

double select_threshold(std::span<const EvalRecord> records, double fp_cost,
                        double fn_cost) {
  auto s = sort_descending(records);
  require_both_classes(s);

  std::vector<double> distinct(s.scores.rbegin(), s.scores.rend());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());

  std::vector<double> candidates;
  candidates.reserve(distinct.size() + 1);
  candidates.push_back(distinct.front() > 0.0 ? distinct.front() / 2.0 : 0.0);
  for (std::size_t i = 1; i < distinct.size(); ++i)
    candidates.push_back((distinct[i - 1] + distinct[i]) / 2.0);
  candidates.push_back(distinct.back() < 1.0
                           ? (distinct.back() + 1.0) / 2.0
                           : 1.0);
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  // Ascending scores split by class, for prefix-sum error counting.
  std::vector<double> pos;
  std::vector<double> neg;
  pos.reserve(s.positives);
  neg.reserve(s.negatives);
  for (std::size_t i = s.scores.size(); i-- > 0;)
    (s.labels[i] ? pos : neg).push_back(s.scores[i]);

  double best_cost = 0.0;
  double best = 0.0;
  bool first = true;
  for (double t : candidates) {
    // FN: positives below t; FP: negatives at or above t.
    auto fn = std::lower_bound(pos.begin(), pos.end(), t) - pos.begin();
    auto fp = neg.end() - std::lower_bound(neg.begin(), neg.end(), t);
    double cost = fp_cost * static_cast<double>(fp) +
                  fn_cost * static_cast<double>(fn);
    if (first || cost < best_cost) {
      best_cost = cost;
      best = t;
      first = false;
    }
  }
  return best;
}

ConfusionMatrix confusion_at(std::span<const EvalRecord> records,
                             double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw DomainError("threshold", "expected a threshold in [0,1]");
  ConfusionMatrix m;
  m.threshold = threshold;
  for (const auto& r : records) {
    bool predicted = r.score >= threshold;
    if (predicted && r.label)
      m.tp++;
    else if (predicted && !r.label)
      m.fp++;
    else if (!predicted && r.label)
      m.fn++;
    else
      m.tn++;
  }
  return m;
}

ModelReport build_model_report(std::span<const EvalRecord> records,
                               ModelMeta meta) {
  ModelReport report;
  report.roc = roc_curve(records);
  report.pr = pr_curve(records);
  report.chosen_threshold = select_threshold(records);
  report.confusion = confusion_at(records, report.chosen_threshold);
  report.accuracy = report.confusion.accuracy();
  report.precision = report.confusion.precision();
  report.recall = report.confusion.recall();
  report.f1 = report.confusion.f1();
  report.model_meta = std::move(meta);
  return report;
}

std::vector<EvalRecord> read_eval_csv(std::istream& in,
                                      const std::string& source_name) {
  auto rows = read_csv(in, source_name, {"score", "label"});
  std::vector<EvalRecord> records;
  records.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string where =
        fmt::format(" ({}:{})", source_name, rows[i].line);
    std::string base = fmt::format("model.eval_records[{}]", i);
    double score = csv_number(rows[i].fields[0], base + ".score");
    if (!(score >= 0.0 && score <= 1.0))
      throw DomainError(base + ".score",
                        "expected a score in [0,1]" + where);
    const std::string& label = rows[i].fields[1];
    if (label != "0" && label != "1")
      throw SchemaError(base + ".label",
                        "expected label 0 or 1, got \"" + label + "\"" +
                            where);
    records.push_back({score, label == "1"});
  }
  return records;
}

ModelMeta parse_model_meta(const Json& value, const std::string& path) {
  ObjectReader r(value, path);
  ModelMeta meta;
  meta.architecture = r.require_string("architecture");
  meta.parameter_count = r.require_int("parameter_count");
  if (meta.parameter_count < 0)
    throw SchemaError(r.member_path("parameter_count"),
                      "expected a nonnegative integer");
  meta.input_shape = r.require_string("input_shape");
  meta.output_schema = r.require_string("output_schema");
  r.finish();
  return meta;
}

Json to_json(const ModelReport& report) {
  Json roc_points = Json::array();
  for (const auto& p : report.roc.points)
    roc_points.push_back({p.fpr, p.tpr});
  Json pr_points = Json::array();
  for (const auto& p : report.pr.points)
    pr_points.push_back({p.recall, p.precision});
  return Json{
      {"roc", {{"points", roc_points}, {"auc", report.roc.auc}}},
      {"pr", {{"points", pr_points}}},
      {"chosen_threshold", report.chosen_threshold},
      {"confusion",
       {{"tp", report.confusion.tp},
        {"fp", report.confusion.fp},
        {"fn", report.confusion.fn},
        {"tn", report.confusion.tn},
        {"threshold", report.confusion.threshold}}},
      {"accuracy", report.accuracy},
      {"precision", report.precision},
      {"recall", report.recall},
      {"f1", report.f1},
      {"model_meta",
       {{"architecture", report.model_meta.architecture},
        {"parameter_count", report.model_meta.parameter_count},
        {"input_shape", report.model_meta.input_shape},
        {"output_schema", report.model_meta.output_schema}}},
  };
}

void write_roc_csv(const RocCurve& roc, std::ostream& out) {
  out << "fpr,tpr\n";
  for (const auto& p : roc.points)
    out << fmt::format("{},{}\n", p.fpr, p.tpr);
}

void write_pr_csv(const PrCurve& pr, std::ostream& out) {
  out << "recall,precision\n";
  for (const auto& p : pr.points)
    out << fmt::format("{},{}\n", p.recall, p.precision);
}

}  // namespace mlsds::metrics
