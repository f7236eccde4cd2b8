#include "ahi/ranking.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace ahi {

std::string_view to_string(RankingShape shape) {
  switch (shape) {
    case RankingShape::Cubic: return "cubic";
    case RankingShape::Sinusoidal: return "sinusoidal";
    case RankingShape::Linear: return "linear";
  }
  return "cubic";
}

std::optional<RankingShape> parse_shape(std::string_view name) {
  for (auto s : kAllShapes)
    if (to_string(s) == name) return s;
  return std::nullopt;
}

void RankingConfig::validate() const {
  if (!(std::isfinite(vmin) && std::isfinite(vmax) && vmin < vmax))
    throw AnalysisError(ErrorCode::InvalidConfig,
                        fmt::format("ranking minimum must be below maximum (got {} and {})", vmin, vmax));
  const auto& h = hotspots;
  if (!(std::isfinite(h[2]) && h[0] > 0.0 && h[0] < h[1] && h[1] < h[2]))
    throw AnalysisError(ErrorCode::InvalidConfig, "ranking hotspots must be positive and strictly increasing");
}

RankingConfig RankingConfig::for_scheme(const SubrangeScheme& scheme, double vmin, double vmax,
                                        RankingShape shape) {
  RankingConfig cfg{scheme.thresholds(), vmin, vmax, shape};
  cfg.validate();
  return cfg;
}

double ranking_value(double ahi, const RankingConfig& cfg) {
  const double span = cfg.vmax - cfg.vmin;
  const auto& h = cfg.hotspots;
  const double tail = cfg.tail_end();
  if (ahi >= tail) return cfg.vmin;

  if (ahi > h[2]) {
    // Descends from vmax at h3 to vmin at the tail end.
    const double s = (ahi - h[2]) / (tail - h[2]);
    switch (cfg.shape) {
      case RankingShape::Cubic: return cfg.vmin + span * (1.0 - s) * (1.0 - s);
      case RankingShape::Sinusoidal: return cfg.vmin + span * (0.5 + 0.5 * std::cos(std::numbers::pi * s));
      case RankingShape::Linear: return cfg.vmin + span * (1.0 - s);
    }
  }

  // Interior segment [a, b]: vmax at both ends, vmin at the middle.
  double a = 0.0, b = h[0];
  if (ahi > h[1]) {
    a = h[1];
    b = h[2];
  } else if (ahi > h[0]) {
    a = h[0];
    b = h[1];
  }
  const double t = (ahi - (a + b) / 2.0) / ((b - a) / 2.0);
  switch (cfg.shape) {
    case RankingShape::Cubic: return cfg.vmin + span * t * t;
    case RankingShape::Sinusoidal:
      return cfg.vmin + span * (0.5 + 0.5 * std::cos(2.0 * std::numbers::pi * (ahi - a) / (b - a)));
    case RankingShape::Linear: return cfg.vmin + span * std::fabs(t);
  }
  return cfg.vmin;
}

namespace {

void check_pairs(std::span<const double> ref, std::span<const double> res) {
  if (ref.size() != res.size())
    throw AnalysisError(ErrorCode::InvalidConfig,
                        fmt::format("reference has {} values, measured has {}", ref.size(), res.size()));
  if (ref.empty()) throw AnalysisError(ErrorCode::EmptyInput, "no pairs");
}

}  // namespace

double emae(std::span<const double> ref, std::span<const double> res, const SubrangeScheme& scheme,
            const std::function<double(double)>& weight, const Attenuation& attenuation) {
  check_pairs(ref, res);
  double sum = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double a = classify(ref[i], scheme) == classify(res[i], scheme) ? attenuation.same_class
                                                                          : attenuation.other_class;
    sum += a * weight(ref[i]) * std::fabs(res[i] - ref[i]);
  }
  return sum / static_cast<double>(ref.size());
}

double emae(std::span<const double> ref, std::span<const double> res, const SubrangeScheme& scheme,
            const RankingConfig& cfg) {
  cfg.validate();
  if (cfg.hotspots != scheme.thresholds())
    throw AnalysisError(ErrorCode::InvalidConfig, "ranking hotspots must equal the subrange thresholds");
  return emae(ref, res, scheme, [&cfg](double x) { return ranking_value(x, cfg); }, Attenuation{});
}

double emae(const PairedSample& sample, const SubrangeScheme& scheme,
            const std::function<double(double)>& weight, const Attenuation& attenuation) {
  return emae(sample.reference(), sample.measured(), scheme, weight, attenuation);
}

double emae(const PairedSample& sample, const SubrangeScheme& scheme, const RankingConfig& cfg) {
  return emae(sample.reference(), sample.measured(), scheme, cfg);
}

double mae(std::span<const double> ref, std::span<const double> res) {
  check_pairs(ref, res);
  double sum = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) sum += std::fabs(res[i] - ref[i]);
  return sum / static_cast<double>(ref.size());
}

double mae(const PairedSample& sample) { return mae(sample.reference(), sample.measured()); }

HeuristicRatio heuristic_ratio(const PairedSample& sample) {
  HeuristicRatio out;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double d = sample.difference(i);
    if (d > 0.0)
      ++out.counts.above;
    else if (d < 0.0)
      ++out.counts.below;
    else
      ++out.counts.on;
  }
  if (out.counts.below == 0)
    out.ratio = Maybe<double>::undefined(
        fmt::format("no points below the identity line ({} above, {} on it)", out.counts.above,
                    out.counts.on));
  else
    out.ratio = static_cast<double>(out.counts.above) / static_cast<double>(out.counts.below);
  return out;
}

ErrorSummary summarize_errors(const PairedSample& sample, const SubrangeScheme& scheme,
                              const RankingConfig& cfg) {
  ErrorSummary out;
  out.mae = mae(sample);
  out.emae_shape = cfg.shape;
  for (std::size_t k = 0; k < kAllShapes.size(); ++k) {
    RankingConfig c = cfg;
    c.shape = kAllShapes[k];
    out.emae_by_shape[k] = emae(sample, scheme, c);
    if (c.shape == cfg.shape) out.emae = out.emae_by_shape[k];
  }
  auto hr = heuristic_ratio(sample);
  out.heuristic_ratio = hr.ratio;
  out.counts = hr.counts;
  return out;
}

std::vector<CurvePoint> sample_ranking_curve(const RankingConfig& cfg, std::size_t samples) {
  cfg.validate();
  if (samples < 2) throw AnalysisError(ErrorCode::InvalidConfig, "at least two samples are required");
  const double upper = 1.2 * cfg.tail_end();
  std::vector<CurvePoint> out(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const double x = upper * static_cast<double>(k) / static_cast<double>(samples - 1);
    out[k] = {x, ranking_value(x, cfg)};
  }
  return out;
}

std::vector<CurveMarker> ranking_markers(const RankingConfig& cfg) {
  const auto& h = cfg.hotspots;
  std::vector<CurveMarker> out;
  double prev = 0.0;
  for (double hot : h) {
    const double mid = (prev + hot) / 2.0;
    const double q1 = prev + (hot - prev) / 4.0;
    const double q3 = prev + 3.0 * (hot - prev) / 4.0;
    out.push_back({q1, ranking_value(q1, cfg), "quarter"});
    out.push_back({mid, ranking_value(mid, cfg), "midpoint"});
    out.push_back({q3, ranking_value(q3, cfg), "quarter"});
    out.push_back({hot, ranking_value(hot, cfg), "hotspot"});
    prev = hot;
  }
  out.push_back({cfg.tail_end(), ranking_value(cfg.tail_end(), cfg), "tail_end"});
  return out;
}

}  // namespace ahi
