#include "ahi/bland_altman.hpp"

#include <cmath>

#include <fmt/format.h>

namespace ahi {

namespace {

void summarize(BlandAltmanResult& out) {
  const double n = static_cast<double>(out.points.size());
  double sum = 0.0;
  for (const auto& p : out.points) sum += p.y;
  out.mean_diff = sum / n;
  double ss = 0.0;
  for (const auto& p : out.points) ss += (p.y - out.mean_diff) * (p.y - out.mean_diff);
  out.sd_diff = std::sqrt(ss / (n - 1.0));
  out.loa_low = out.mean_diff - out.half_width();
  out.loa_high = out.mean_diff + out.half_width();
}

void check_pairs(std::span<const double> ref, std::span<const double> res) {
  if (ref.size() != res.size())
    throw AnalysisError(ErrorCode::InvalidConfig,
                        fmt::format("reference has {} values, measured has {}", ref.size(), res.size()));
  if (ref.size() < 2) throw AnalysisError(ErrorCode::TooFewRows, "Bland-Altman analysis needs n >= 2");
}

}  // namespace

BlandAltmanResult bland_altman(std::span<const double> ref, std::span<const double> res) {
  check_pairs(ref, res);
  BlandAltmanResult out;
  out.variant = BlandAltmanVariant::Classic;
  out.points.reserve(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) out.points.push_back({(ref[i] + res[i]) / 2.0, res[i] - ref[i]});
  summarize(out);
  return out;
}

BlandAltmanResult modified_bland_altman(std::span<const double> ref, std::span<const double> res) {
  check_pairs(ref, res);
  BlandAltmanResult out;
  out.variant = BlandAltmanVariant::Modified;
  std::vector<double> ys;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    out.points.push_back({ref[i], res[i] - ref[i]});
    ys.push_back(res[i] - ref[i]);
  }
  out.fit = fit_line(ref, ys, true);
  summarize(out);
  return out;
}

BlandAltmanResult relative_deviation_ba(std::span<const double> ref, std::span<const double> res) {
  check_pairs(ref, res);
  BlandAltmanResult out;
  out.variant = BlandAltmanVariant::RelativeDeviation;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double m = (ref[i] + res[i]) / 2.0;
    if (m == 0.0) {
      ++out.n_excluded;
      continue;
    }
    out.points.push_back({m, 100.0 * (res[i] - ref[i]) / m});
  }
  if (out.points.size() < 2)
    throw AnalysisError(ErrorCode::AllExcluded,
                        fmt::format("relative deviation needs two pairs with nonzero mean; {} of {} "
                                    "pairs have a zero mean",
                                    out.n_excluded, ref.size()));
  summarize(out);
  return out;
}

BlandAltmanResult bland_altman(const PairedSample& sample) {
  return bland_altman(sample.reference(), sample.measured());
}

BlandAltmanResult modified_bland_altman(const PairedSample& sample) {
  return modified_bland_altman(sample.reference(), sample.measured());
}

BlandAltmanResult relative_deviation_ba(const PairedSample& sample) {
  return relative_deviation_ba(sample.reference(), sample.measured());
}

}  // namespace ahi
