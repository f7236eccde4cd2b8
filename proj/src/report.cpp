#include "ahi/report.hpp"

#include <fmt/format.h>

namespace ahi {

namespace {

template <class F>
auto section(F&& compute) -> Maybe<decltype(compute())> {
  try {
    return compute();
  } catch (const AnalysisError& e) {
    if (e.code() == ErrorCode::InvalidConfig || e.code() == ErrorCode::InvalidScheme) throw;
    return Undefined{fmt::format("{}: {}", to_string(e.code()), e.what())};
  }
}

}  // namespace

AnalysisBundle analyze(const PairedSample& sample, const AnalysisConfig& config) {
  config.ranking.validate();
  if (config.ranking.hotspots != config.scheme.thresholds())
    throw AnalysisError(ErrorCode::InvalidConfig, "ranking hotspots must equal the subrange thresholds");

  AnalysisBundle b;
  b.config = config;
  const auto& scheme = config.scheme;

  b.data.n = sample.size();
  b.data.reference = sample.reference();
  b.data.measured = sample.measured();
  for (std::size_t i = 0; i < sample.size(); ++i) {
    ++b.data.reference_counts[classify(sample.reference()[i], scheme)];
    ++b.data.measured_counts[classify(sample.measured()[i], scheme)];
  }

  b.pearson = section([&] { return pearson(sample); });
  b.spearman = section([&] { return spearman(sample); });
  b.lin = section([&] { return lin_ccc(sample, config.confidence); });
  b.linear_models = section([&] { return LinearModels{fit_line(sample, true), fit_line(sample, false)}; });
  b.wilcoxon = section([&] { return wilcoxon_paired(sample); });
  b.paired_t = section([&] { return paired_t(sample); });
  b.bland_altman = section([&] { return bland_altman(sample); });
  b.modified_ba = section([&] { return modified_bland_altman(sample); });
  b.relative_ba = section([&] { return relative_deviation_ba(sample); });
  b.errors = section([&] { return summarize_errors(sample, scheme, config.ranking); });
  b.qualitative = section([&] {
    auto m = confusion(sample, scheme);
    return QualitativeSection{m, qualitative_stats(m)};
  });
  b.roc = section([&] { return multiclass_auc(sample, scheme); });

  b.warnings = plausibility_warnings(sample);
  if (b.relative_ba && b.relative_ba->n_excluded > 0)
    b.warnings.push_back({std::nullopt, fmt::format("relative deviation: {} pair(s) with zero mean excluded",
                                                    b.relative_ba->n_excluded)});
  return b;
}

}  // namespace ahi
