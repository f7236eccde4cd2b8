#include "ahi/roc.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "ahi/correlation.hpp"

namespace ahi {

RocCurve roc_curve(std::span<const double> negatives, std::span<const double> positives) {
  RocCurve curve;
  curve.n_negative = negatives.size();
  curve.n_positive = positives.size();

  std::vector<std::pair<double, bool>> scored;  // (score, is_positive)
  scored.reserve(negatives.size() + positives.size());
  for (double s : negatives) scored.emplace_back(s, false);
  for (double s : positives) scored.emplace_back(s, true);
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

  const double nn = static_cast<double>(negatives.size());
  const double np = static_cast<double>(positives.size());
  std::size_t tp = 0, fp = 0;
  curve.points.push_back({0.0, 0.0});
  double auc = 0.0;
  for (std::size_t i = 0; i < scored.size();) {
    // Lowering the threshold past a run of tied scores moves diagonally.
    std::size_t j = i;
    while (j < scored.size() && scored[j].first == scored[i].first) {
      (scored[j].second ? tp : fp)++;
      ++j;
    }
    const RocPoint next{static_cast<double>(fp) / nn, static_cast<double>(tp) / np};
    const RocPoint& prev = curve.points.back();
    auc += (next.fpr - prev.fpr) * (next.tpr + prev.tpr) / 2.0;
    curve.points.push_back(next);
    i = j;
  }
  curve.auc = auc;
  return curve;
}

double mann_whitney_auc(std::span<const double> negatives, std::span<const double> positives) {
  std::vector<double> all(negatives.begin(), negatives.end());
  all.insert(all.end(), positives.begin(), positives.end());
  const auto ranks = midranks(all);
  double rank_sum = 0.0;
  for (std::size_t i = negatives.size(); i < all.size(); ++i) rank_sum += ranks[i];
  const double np = static_cast<double>(positives.size());
  const double nn = static_cast<double>(negatives.size());
  return (rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

namespace {

std::vector<double> scores_for_class(const PairedSample& sample, const SubrangeScheme& scheme,
                                     std::size_t cls) {
  std::vector<double> out;
  for (std::size_t i = 0; i < sample.size(); ++i)
    if (classify(sample.reference()[i], scheme) == cls) out.push_back(sample.measured()[i]);
  return out;
}

}  // namespace

RocCurve pairwise_roc(const PairedSample& sample, const SubrangeScheme& scheme, ClassPair pair) {
  if (pair.first > pair.second) std::swap(pair.first, pair.second);
  if (pair.second >= kClassCount || pair.first == pair.second)
    throw AnalysisError(ErrorCode::InvalidConfig, "class pair must name two distinct classes");
  const auto neg = scores_for_class(sample, scheme, pair.first);
  const auto pos = scores_for_class(sample, scheme, pair.second);
  for (auto [cls, scores] : {std::pair{pair.first, &neg}, std::pair{pair.second, &pos}})
    if (scores->empty())
      throw AnalysisError(ErrorCode::ClassAbsent,
                          fmt::format("class {} has no reference members", scheme.label(cls)));
  auto curve = roc_curve(neg, pos);
  curve.pair = pair;
  return curve;
}

MulticlassAuc multiclass_auc(const PairedSample& sample, const SubrangeScheme& scheme) {
  std::array<bool, kClassCount> present{};
  for (double r : sample.reference()) present[classify(r, scheme)] = true;
  if (std::count(present.begin(), present.end(), true) < 2)
    throw AnalysisError(ErrorCode::SingleClass,
                        "multi-class ROC needs at least two reference classes");

  MulticlassAuc out;
  double sum = 0.0;
  for (std::size_t a = 0; a < kClassCount; ++a)
    for (std::size_t b = a + 1; b < kClassCount; ++b) {
      if (!present[a] || !present[b]) {
        out.skipped.emplace_back(a, b);
        continue;
      }
      out.pairwise.push_back(pairwise_roc(sample, scheme, {a, b}));
      sum += out.pairwise.back().auc;
    }
  out.overall = sum / static_cast<double>(out.pairwise.size());
  return out;
}

}  // namespace ahi
