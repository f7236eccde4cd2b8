#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ahi/classify.hpp"
#include "ahi/error.hpp"
#include "ahi/ingest.hpp"

namespace ahi {

enum class RankingShape { Cubic, Sinusoidal, Linear };

inline constexpr std::array<RankingShape, 3> kAllShapes = {RankingShape::Cubic, RankingShape::Sinusoidal,
                                                           RankingShape::Linear};

std::string_view to_string(RankingShape shape);
std::optional<RankingShape> parse_shape(std::string_view name);

/// Ranking function B: weight vmax at each hotspot (and at 0), vmin at the
/// middle of each subrange, decaying from vmax at h3 to vmin at 2*h3, then
/// constant vmin.
struct RankingConfig {
  std::array<double, 3> hotspots{5.0, 15.0, 30.0};
  double vmin = 0.5;
  double vmax = 1.5;
  RankingShape shape = RankingShape::Cubic;

  double tail_end() const { return 2.0 * hotspots[2]; }

  /// Throws InvalidConfig unless vmin < vmax (finite) and 0 < h1 < h2 < h3.
  void validate() const;

  static RankingConfig for_scheme(const SubrangeScheme& scheme, double vmin = 0.5, double vmax = 1.5,
                                  RankingShape shape = RankingShape::Cubic);

  bool operator==(const RankingConfig&) const = default;
};

double ranking_value(double ahi, const RankingConfig& cfg);

/// Multipliers A(e): `same_class` when reference and measured fall in the
/// same subrange, `other_class` otherwise.
struct Attenuation {
  double same_class = 0.5;
  double other_class = 1.0;
};

/// (1/n) * sum A(e_i) * B(ref_i) * |res_i - ref_i| with B from `cfg`.
double emae(const PairedSample& sample, const SubrangeScheme& scheme, const RankingConfig& cfg);

/// Same sum with an arbitrary weight function B and multipliers A.
double emae(const PairedSample& sample, const SubrangeScheme& scheme,
            const std::function<double(double)>& weight, const Attenuation& attenuation);

double mae(const PairedSample& sample);

/// Raw-vector forms of the above for any n >= 1 (a single pair is allowed).
double emae(std::span<const double> reference, std::span<const double> measured, const SubrangeScheme& scheme,
            const RankingConfig& cfg);
double emae(std::span<const double> reference, std::span<const double> measured, const SubrangeScheme& scheme,
            const std::function<double(double)>& weight, const Attenuation& attenuation);
double mae(std::span<const double> reference, std::span<const double> measured);

struct LineCounts {
  std::size_t above = 0;  // measured > reference
  std::size_t below = 0;  // measured < reference
  std::size_t on = 0;
  bool operator==(const LineCounts&) const = default;
};

struct HeuristicRatio {
  Maybe<double> ratio = Undefined{};
  LineCounts counts;
  bool operator==(const HeuristicRatio&) const = default;
};

/// above / below, ignoring points on the identity line.
HeuristicRatio heuristic_ratio(const PairedSample& sample);

struct ErrorSummary {
  double mae = 0.0;
  double emae = 0.0;
  RankingShape emae_shape = RankingShape::Cubic;
  /// eMAE for every shape, indexed like kAllShapes.
  std::array<double, 3> emae_by_shape{};
  Maybe<double> heuristic_ratio = Undefined{};
  LineCounts counts;
  bool operator==(const ErrorSummary&) const = default;
};

ErrorSummary summarize_errors(const PairedSample& sample, const SubrangeScheme& scheme,
                              const RankingConfig& cfg);

struct CurvePoint {
  double x = 0.0;
  double value = 0.0;
};

/// `samples` evenly spaced points of B over [0, 1.2 * tail_end].
std::vector<CurvePoint> sample_ranking_curve(const RankingConfig& cfg, std::size_t samples);

struct CurveMarker {
  double x = 0.0;
  double value = 0.0;
  std::string_view kind;  // "hotspot", "midpoint", "quarter" or "tail_end"
};

/// Hotspots, subrange midpoints and quarter points, and the tail end, with
/// their B values; ordered by x.
std::vector<CurveMarker> ranking_markers(const RankingConfig& cfg);

}  // namespace ahi
