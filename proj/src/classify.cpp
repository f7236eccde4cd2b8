#include "ahi/classify.hpp"

#include <cmath>

#include <fmt/format.h>

namespace ahi {

SubrangeScheme::SubrangeScheme(std::array<double, 3> thresholds,
                               std::array<std::string, kClassCount> labels)
    : thresholds_(thresholds), labels_(std::move(labels)) {
  for (double t : thresholds_)
    if (!std::isfinite(t))
      throw AnalysisError(ErrorCode::InvalidScheme, "thresholds must be finite");
  if (!(thresholds_[0] > 0.0))
    throw AnalysisError(ErrorCode::InvalidScheme, "thresholds must be positive");
  if (!(thresholds_[0] < thresholds_[1] && thresholds_[1] < thresholds_[2]))
    throw AnalysisError(ErrorCode::InvalidScheme,
                        fmt::format("thresholds must be strictly increasing (got {}, {}, {})",
                                    thresholds_[0], thresholds_[1], thresholds_[2]));
}

std::size_t classify(double ahi, const SubrangeScheme& scheme) {
  std::size_t cls = 0;
  for (double t : scheme.thresholds())
    if (ahi >= t) ++cls;
  return cls;
}

std::size_t ConfusionMatrix::total() const {
  std::size_t s = 0;
  for (const auto& row : counts)
    for (auto c : row) s += c;
  return s;
}

std::size_t ConfusionMatrix::trace() const {
  std::size_t s = 0;
  for (std::size_t k = 0; k < kClassCount; ++k) s += counts[k][k];
  return s;
}

std::size_t ConfusionMatrix::row_sum(std::size_t r) const {
  std::size_t s = 0;
  for (auto c : counts[r]) s += c;
  return s;
}

std::size_t ConfusionMatrix::col_sum(std::size_t c) const {
  std::size_t s = 0;
  for (const auto& row : counts) s += row[c];
  return s;
}

ConfusionMatrix confusion(const PairedSample& sample, const SubrangeScheme& scheme) {
  ConfusionMatrix m;
  for (std::size_t i = 0; i < sample.size(); ++i)
    ++m.counts[classify(sample.reference()[i], scheme)][classify(sample.measured()[i], scheme)];
  return m;
}

namespace {

Maybe<double> ratio(std::size_t num, std::size_t den, const char* what) {
  if (den == 0) return Maybe<double>::undefined(fmt::format("{}: zero denominator", what));
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ClassStats qualitative_stats(const ConfusionMatrix& m) {
  const std::size_t total = m.total();
  if (total == 0) throw AnalysisError(ErrorCode::EmptyInput, "confusion matrix is empty");
  const double n = static_cast<double>(total);

  ClassStats out;
  out.accuracy = static_cast<double>(m.trace()) / n;

  for (std::size_t k = 0; k < kClassCount; ++k) {
    const std::size_t tp = m.counts[k][k];
    const std::size_t fn = m.row_sum(k) - tp;
    const std::size_t fp = m.col_sum(k) - tp;
    const std::size_t tn = total - tp - fn - fp;
    out.per_class[k] = ClassMetrics{
        ratio(tp, tp + fn, "sensitivity"),
        ratio(tn, tn + fp, "specificity"),
        ratio(tp, tp + fp, "ppv"),
        ratio(tn, tn + fn, "npv"),
    };
  }

  // Expected agreement from the marginals, accumulated in integers.
  std::size_t marginal = 0;
  for (std::size_t k = 0; k < kClassCount; ++k) marginal += m.row_sum(k) * m.col_sum(k);
  const double pe = static_cast<double>(marginal) / (n * n);
  if (marginal == total * total)
    out.kappa = Maybe<double>::undefined("kappa: expected agreement is 1");
  else
    out.kappa = (out.accuracy - pe) / (1.0 - pe);
  return out;
}

}  // namespace ahi
