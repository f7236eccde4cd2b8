#pragma once

#include <array>
#include <string_view>

#include "ahi/classify.hpp"
#include "ahi/ranking.hpp"

namespace ahi {

/// Everything the user can steer: thresholds, ranking function, CI level.
struct AnalysisConfig {
  SubrangeScheme scheme = SubrangeScheme::adult();
  RankingConfig ranking = RankingConfig::for_scheme(SubrangeScheme::adult());
  double confidence = 0.95;

  /// Validates every field; hotspots are taken from the thresholds.
  /// Throws InvalidScheme or InvalidConfig.
  static AnalysisConfig make(std::array<double, 3> thresholds, double ranking_min = 0.5,
                             double ranking_max = 1.5, RankingShape shape = RankingShape::Cubic,
                             double confidence = 0.95);

  bool operator==(const AnalysisConfig&) const = default;
};

/// "a,b,c" -> {a, b, c}. Throws InvalidScheme on malformed text.
std::array<double, 3> parse_thresholds(std::string_view text);

/// "adult" or "pediatric". Throws InvalidScheme otherwise.
SubrangeScheme preset_scheme(std::string_view name);

}  // namespace ahi
