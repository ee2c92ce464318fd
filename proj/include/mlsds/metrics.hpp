#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "mlsds/json_util.hpp"

namespace mlsds::metrics {

struct EvalRecord {
  double score;  // in [0,1]
  bool label;    // true = positive class (person present)
};

struct RocPoint {
  double fpr;
  double tpr;
};

// Threshold sweep over the distinct scores, descending. Starts at (0,0),
// ends at (1,1); auc is the trapezoidal area over `points`.
struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0.0;
};

struct PrPoint {
  double recall;
  double precision;
};

struct PrCurve {
  std::vector<PrPoint> points;
};

struct ConfusionMatrix {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;
  double threshold = 0.0;

  std::int64_t total() const { return tp + fp + fn + tn; }
  double accuracy() const;   // (tp+tn)/N, 1.0 when N == 0
  double precision() const;  // tp/(tp+fp), 1.0 when no predicted positives
  double recall() const;     // tp/(tp+fn), 1.0 when no actual positives
  double f1() const;         // harmonic mean, 0 when precision+recall == 0
};

struct ModelMeta {
  std::string architecture;
  std::int64_t parameter_count = 0;
  std::string input_shape;
  std::string output_schema;
};

struct ModelReport {
  RocCurve roc;
  PrCurve pr;
  double chosen_threshold = 0.0;
  ConfusionMatrix confusion;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  ModelMeta model_meta;
};

// DomainError unless both classes are present.
RocCurve roc_curve(std::span<const EvalRecord> records);

// DomainError unless at least one positive is present.
PrCurve pr_curve(std::span<const EvalRecord> records);

// Classification rule is score >= threshold -> positive. Candidates are the
// midpoints between consecutive distinct sorted scores plus one sentinel
// below the minimum and one above the maximum, clamped to [0,1]; returns
// the candidate minimizing fp_cost*FP + fn_cost*FN, smallest candidate on
// ties. DomainError unless both classes are present.
double select_threshold(std::span<const EvalRecord> records,
                        double fp_cost = 1.0, double fn_cost = 1.0);

// Counts under score >= threshold -> positive. DomainError when threshold
// is outside [0,1].
ConfusionMatrix confusion_at(std::span<const EvalRecord> records,
                             double threshold);

ModelReport build_model_report(std::span<const EvalRecord> records,
                               ModelMeta meta);

// CSV with header `score,label`, label in {0,1}, score in [0,1].
std::vector<EvalRecord> read_eval_csv(std::istream& in,
                                      const std::string& source_name);

ModelMeta parse_model_meta(const Json& value, const std::string& path);

Json to_json(const ModelReport& report);
void write_roc_csv(const RocCurve& roc, std::ostream& out);
void write_pr_csv(const PrCurve& pr, std::ostream& out);

}  // namespace mlsds::metrics
