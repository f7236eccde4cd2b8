#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ahi/report.hpp"

namespace ahi {

struct Histogram {
  double lower = 0.0;
  double bin_width = 1.0;
  std::vector<std::size_t> counts;
};

/// Freedman-Diaconis bin width (2 * IQR * n^(-1/3)); 10 equal bins when the
/// IQR is zero.
Histogram histogram_bins(std::span<const double> values);

/// Reference vs measured with the identity line, both regression lines and
/// the clinical squares of the scheme.
std::string render_scatter(const AnalysisBundle& bundle);
/// Points, mean difference and limits of agreement (plus the fit line for
/// the modified variant).
std::string render_ba(const AnalysisBundle& bundle, BlandAltmanVariant variant);
std::string render_ranking(const RankingConfig& cfg);
/// Differences (measured - reference).
std::string render_histogram(const AnalysisBundle& bundle);
std::string render_roc(const AnalysisBundle& bundle);

/// Every figure keyed by file stem ("scatter", "bland_altman", ...).
std::map<std::string, std::string> render_all(const AnalysisBundle& bundle);

}  // namespace ahi
