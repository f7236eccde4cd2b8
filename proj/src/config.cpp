#include "ahi/config.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

namespace ahi {

AnalysisConfig AnalysisConfig::make(std::array<double, 3> thresholds, double ranking_min,
                                    double ranking_max, RankingShape shape, double confidence) {
  AnalysisConfig cfg;
  cfg.scheme = SubrangeScheme(thresholds);
  cfg.ranking = RankingConfig::for_scheme(cfg.scheme, ranking_min, ranking_max, shape);
  if (!(confidence > 0.0 && confidence < 1.0))
    throw AnalysisError(ErrorCode::InvalidConfig,
                        fmt::format("confidence level must lie in (0, 1), got {}", confidence));
  cfg.confidence = confidence;
  return cfg;
}

std::array<double, 3> parse_thresholds(std::string_view text) {
  std::array<double, 3> out{};
  std::size_t k = 0;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto cell = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                         : comma - start);
    const auto v = parse_real(cell);
    if (!v || k >= 3)
      throw AnalysisError(ErrorCode::InvalidScheme,
                          fmt::format("thresholds must be three comma-separated numbers, got '{}'", text));
    out[k++] = *v;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (k != 3)
    throw AnalysisError(ErrorCode::InvalidScheme,
                        fmt::format("thresholds must be three comma-separated numbers, got '{}'", text));
  return out;
}

SubrangeScheme preset_scheme(std::string_view name) {
  if (name == "adult") return SubrangeScheme::adult();
  if (name == "pediatric") return SubrangeScheme::pediatric();
  throw AnalysisError(ErrorCode::InvalidScheme, fmt::format("unknown preset '{}'", name));
}

}  // namespace ahi
