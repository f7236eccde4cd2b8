#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ahi/bland_altman.hpp"
#include "ahi/classify.hpp"
#include "ahi/config.hpp"
#include "ahi/correlation.hpp"
#include "ahi/error.hpp"
#include "ahi/ingest.hpp"
#include "ahi/ranking.hpp"
#include "ahi/roc.hpp"

namespace ahi {

using Json = nlohmann::ordered_json;

struct DataSummary {
  std::size_t n = 0;
  std::array<std::size_t, kClassCount> reference_counts{};
  std::array<std::size_t, kClassCount> measured_counts{};
  std::vector<double> reference;
  std::vector<double> measured;
  bool operator==(const DataSummary&) const = default;
};

struct LinearModels {
  RegressionFit with_intercept;
  RegressionFit through_origin;
  bool operator==(const LinearModels&) const = default;
};

struct QualitativeSection {
  ConfusionMatrix matrix;
  ClassStats stats;
  bool operator==(const QualitativeSection&) const = default;
};

/// The complete result set; one section per analysis tab. A section that
/// could not be computed holds Undefined with the reason.
struct AnalysisBundle {
  AnalysisConfig config;
  DataSummary data;
  Maybe<CorrelationResult> pearson = Undefined{"not computed"};
  Maybe<CorrelationResult> spearman = Undefined{"not computed"};
  Maybe<ConcordanceResult> lin = Undefined{"not computed"};
  Maybe<LinearModels> linear_models = Undefined{"not computed"};
  Maybe<WilcoxonResult> wilcoxon = Undefined{"not computed"};
  Maybe<TestResult> paired_t = Undefined{"not computed"};
  Maybe<BlandAltmanResult> bland_altman = Undefined{"not computed"};
  Maybe<BlandAltmanResult> modified_ba = Undefined{"not computed"};
  Maybe<BlandAltmanResult> relative_ba = Undefined{"not computed"};
  Maybe<ErrorSummary> errors = Undefined{"not computed"};
  Maybe<QualitativeSection> qualitative = Undefined{"not computed"};
  Maybe<MulticlassAuc> roc = Undefined{"not computed"};
  std::vector<Warning> warnings;

  bool operator==(const AnalysisBundle&) const = default;
};

inline constexpr std::array<std::string_view, 12> kSectionKeys = {
    "pearson",      "spearman",    "lin",        "linear_models", "wilcoxon",    "paired_t",
    "bland_altman", "modified_ba", "relative_ba", "errors",       "qualitative", "roc"};

/// Runs every analysis. Statistic-level failures degrade that section to
/// Undefined; nothing but configuration errors is thrown.
AnalysisBundle analyze(const PairedSample& sample, const AnalysisConfig& config);

/// Canonical report tree: stable key order, shortest round-trip numbers,
/// Undefined as {"undefined": true, "reason": ...}.
Json to_json(const AnalysisBundle& bundle);
AnalysisBundle bundle_from_json(const Json& j);

/// Pretty-printed canonical report with a trailing newline.
std::string render_report(const AnalysisBundle& bundle);

/// Sampled ranking curve plus hotspot/midpoint markers.
Json ranking_curve_json(const RankingConfig& cfg, std::size_t samples);

std::string_view to_string(TestMethod method);
std::string_view to_string(BlandAltmanVariant variant);

}  // namespace ahi
