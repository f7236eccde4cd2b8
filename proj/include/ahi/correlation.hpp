#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ahi/error.hpp"
#include "ahi/ingest.hpp"

namespace ahi {

enum class TestMethod { PearsonT, SpearmanT, WilcoxonExact, WilcoxonNormalApprox, PairedT };

struct TestResult {
  double statistic = 0.0;  // may be +-inf (e.g. t for |r| = 1)
  double p_value = 1.0;
  TestMethod method = TestMethod::PearsonT;
  std::size_t n_effective = 0;
  std::optional<double> df;
  bool operator==(const TestResult&) const = default;
};

struct CorrelationResult {
  double coefficient = 0.0;
  TestResult test;
  bool operator==(const CorrelationResult&) const = default;
};

struct Interval {
  double low = 0.0;
  double high = 0.0;
  bool operator==(const Interval&) const = default;
};

struct ConcordanceResult {
  double ccc = 0.0;
  double confidence = 0.95;
  Maybe<Interval> ci = Undefined{};
  Maybe<double> bias_correction = Undefined{};
  double pearson_r = 0.0;
  double location_shift = 0.0;  // (mean_x - mean_y) / sqrt(s_x * s_y)
  double scale_shift = 0.0;     // s_x / s_y
  bool operator==(const ConcordanceResult&) const = default;
};

struct RegressionFit {
  double slope = 0.0;
  double intercept = 0.0;
  bool with_intercept = true;
  bool operator==(const RegressionFit&) const = default;
};

struct WilcoxonResult {
  TestResult test;  // statistic = W+
  double w_minus = 0.0;
  std::size_t zeros_dropped = 0;
  bool ties = false;
  bool operator==(const WilcoxonResult&) const = default;
};

/// Largest number of nonzero differences for which the exact null
/// distribution is used (tie-free data only).
inline constexpr std::size_t kWilcoxonExactLimit = 20;

/// Mid-ranks (1-based; ties share the average rank).
std::vector<double> midranks(std::span<const double> values);

/// Pearson r of two equal-length vectors. Throws ZeroVariance if either is
/// constant.
double pearson_coefficient(std::span<const double> x, std::span<const double> y);

CorrelationResult pearson(const PairedSample& sample);
CorrelationResult spearman(const PairedSample& sample);
ConcordanceResult lin_ccc(const PairedSample& sample, double confidence = 0.95);

/// X = reference, Y = measured.
RegressionFit fit_line(std::span<const double> x, std::span<const double> y, bool with_intercept);
RegressionFit fit_line(const PairedSample& sample, bool with_intercept);

enum class WilcoxonMode { Auto, Exact, NormalApprox };

/// Signed-rank test on measured - reference; zeros dropped. Auto picks the
/// exact distribution for tie-free data with m <= kWilcoxonExactLimit and
/// the tie- and continuity-corrected normal approximation otherwise.
/// Forcing Exact on tied data (or m > 30) throws InvalidConfig.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> differences, WilcoxonMode mode = WilcoxonMode::Auto);
WilcoxonResult wilcoxon_paired(const PairedSample& sample);

/// Exact two-sided p for a tie-free signed-rank statistic with m nonzero
/// differences: min(1, 2 * min(P(W <= w), P(W >= w))).
double wilcoxon_exact_p(double w_plus, std::size_t m);

/// Paired t-test on the differences; df = n - 1. Throws ZeroVariance when
/// all differences are equal.
TestResult paired_t(std::span<const double> differences);
TestResult paired_t(const PairedSample& sample);

}  // namespace ahi
