#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ahi/correlation.hpp"
#include "ahi/ingest.hpp"

namespace ahi {

enum class BlandAltmanVariant { Classic, Modified, RelativeDeviation };

/// Multiplier for the limits of agreement.
inline constexpr double kLoaMultiplier = 1.96;

struct PlotPoint {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const PlotPoint&) const = default;
};

struct BlandAltmanResult {
  BlandAltmanVariant variant = BlandAltmanVariant::Classic;
  std::vector<PlotPoint> points;
  double mean_diff = 0.0;
  double sd_diff = 0.0;  // sample SD (n - 1)
  double loa_low = 0.0;
  double loa_high = 0.0;
  std::optional<RegressionFit> fit;  // Modified only
  std::size_t n_excluded = 0;        // RelativeDeviation only

  /// 1.96 * sd
  double half_width() const { return kLoaMultiplier * sd_diff; }
  /// loa_high - loa_low
  double full_width() const { return 2.0 * kLoaMultiplier * sd_diff; }

  bool operator==(const BlandAltmanResult&) const = default;
};

/// Kernels over raw paired vectors; n >= 2 since the SD needs two points.
/// Throws TooFewRows below that and InvalidConfig on a length mismatch.
BlandAltmanResult bland_altman(std::span<const double> reference, std::span<const double> measured);
BlandAltmanResult modified_bland_altman(std::span<const double> reference, std::span<const double> measured);
BlandAltmanResult relative_deviation_ba(std::span<const double> reference, std::span<const double> measured);

/// x = pair mean, y = measured - reference.
BlandAltmanResult bland_altman(const PairedSample& sample);

/// x = reference, y = measured - reference, plus an OLS fit of y on x.
/// Throws Degenerate when all reference values are equal.
BlandAltmanResult modified_bland_altman(const PairedSample& sample);

/// x = pair mean, y = 100 * (measured - reference) / pair mean. Pairs with a
/// zero mean are skipped and counted in n_excluded; throws AllExcluded when
/// fewer than two pairs remain.
BlandAltmanResult relative_deviation_ba(const PairedSample& sample);

}  // namespace ahi
