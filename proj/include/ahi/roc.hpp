#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ahi/classify.hpp"
#include "ahi/ingest.hpp"

namespace ahi {

/// (lower-severity class, higher-severity class); the higher one is positive.
using ClassPair = std::pair<std::size_t, std::size_t>;

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  bool operator==(const RocPoint&) const = default;
};

struct RocCurve {
  ClassPair pair{0, 1};
  std::vector<RocPoint> points;  // (0,0) ... (1,1), non-decreasing
  double auc = 0.0;
  std::size_t n_negative = 0;
  std::size_t n_positive = 0;
  bool operator==(const RocCurve&) const = default;
};

/// Threshold sweep over the distinct scores (descending); "score >= c" is
/// called positive. AUC by the trapezoidal rule.
RocCurve roc_curve(std::span<const double> negatives, std::span<const double> positives);

/// P(positive > negative) + P(tie) / 2, via ranks.
double mann_whitney_auc(std::span<const double> negatives, std::span<const double> positives);

/// ROC of the measured AHI among rows whose reference class is in `pair`.
/// Throws ClassAbsent if either class has no reference members.
RocCurve pairwise_roc(const PairedSample& sample, const SubrangeScheme& scheme, ClassPair pair);

struct MulticlassAuc {
  double overall = 0.0;
  std::vector<RocCurve> pairwise;  // evaluated pairs, lexicographic order
  std::vector<ClassPair> skipped;  // pairs with an absent class
  std::size_t n_pairs_evaluated() const { return pairwise.size(); }
  bool operator==(const MulticlassAuc&) const = default;
};

/// Unweighted mean of pairwise AUCs over all pairs of classes present in
/// the reference classification. Throws SingleClass if fewer than two are.
MulticlassAuc multiclass_auc(const PairedSample& sample, const SubrangeScheme& scheme);

}  // namespace ahi
