#include "ahi/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

namespace ahi {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 24.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 56.0;

constexpr std::array<std::string_view, kClassCount> kSquareFill = {"#d8f0d8", "#f4f0c8", "#f8dcc0", "#f4c8c8"};
constexpr std::array<std::string_view, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c",
                                                      "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Coordinates are written with fixed precision so output is byte-stable.
std::string num(double v) {
  auto s = fmt::format("{:.3f}", v);
  if (s == "-0.000") s = "0.000";
  return s;
}

double nice_step(double span) {
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
    if (raw <= m * mag) return m * mag;
  return 10.0 * mag;
}

class Plot {
 public:
  Plot(std::string title, std::string x_label, std::string y_label, double x0, double x1, double y0, double y1)
      : x0_(x0), x1_(x1 > x0 ? x1 : x0 + 1.0), y0_(y0), y1_(y1 > y0 ? y1 : y0 + 1.0) {
    body_ += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" "
        "viewBox=\"0 0 {0} {1}\">\n",
        kWidth, kHeight);
    body_ += fmt::format("<title>{}</title>\n", escape(title));
    body_ += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n", kWidth, kHeight);
    body_ += fmt::format(
        "<defs><clipPath id=\"plot-area\"><rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/></clipPath></defs>\n",
        num(kLeft), num(kTop), num(kWidth - kLeft - kRight), num(kHeight - kTop - kBottom));
    body_ += fmt::format("<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\" font-family=\"sans-serif\">{}</text>\n",
                         num(kWidth / 2), escape(title));
    axes(x_label, y_label);
    body_ += "<g clip-path=\"url(#plot-area)\">\n";
  }

  double sx(double x) const { return kLeft + (x - x0_) / (x1_ - x0_) * (kWidth - kLeft - kRight); }
  double sy(double y) const { return kHeight - kBottom - (y - y0_) / (y1_ - y0_) * (kHeight - kTop - kBottom); }

  void raw(std::string_view s) { body_ += s; }

  void line(double xa, double ya, double xb, double yb, std::string_view cls, std::string_view stroke,
            std::string_view extra = {}) {
    body_ += fmt::format(
        "<line class=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"1.5\"{}/>\n", cls,
        num(sx(xa)), num(sy(ya)), num(sx(xb)), num(sy(yb)), stroke, extra);
  }

  void point(double x, double y, std::string_view fill = "#1f77b4") {
    body_ += fmt::format("<circle class=\"point\" cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{}\" fill-opacity=\"0.75\"/>\n",
                         num(sx(x)), num(sy(y)), fill);
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, std::string_view cls, std::string_view stroke) {
    body_ += fmt::format("<polyline class=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"", cls, stroke);
    for (std::size_t i = 0; i < pts.size(); ++i)
      body_ += fmt::format("{}{},{}", i ? " " : "", num(sx(pts[i].first)), num(sy(pts[i].second)));
    body_ += "\"/>\n";
  }

  void label(double x, double y, std::string_view text, std::string_view anchor = "start") {
    body_ += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\" font-family=\"sans-serif\" text-anchor=\"{}\">{}</text>\n",
                         num(sx(x)), num(sy(y)), anchor, escape(text));
  }

  std::string finish(const std::vector<std::pair<std::string, std::string_view>>& legend = {}) {
    body_ += "</g>\n";
    double y = kTop + 14.0;
    for (const auto& [text, color] : legend) {
      body_ += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"10\" height=\"10\" fill=\"{}\"/>\n", num(kLeft + 8),
                           num(y - 9), color);
      body_ += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\" font-family=\"sans-serif\">{}</text>\n",
                           num(kLeft + 22), num(y), escape(text));
      y += 15.0;
    }
    body_ += "</svg>\n";
    return std::move(body_);
  }

 private:
  void axes(const std::string& x_label, const std::string& y_label) {
    const double left = kLeft, right = kWidth - kRight, top = kTop, bottom = kHeight - kBottom;
    body_ += fmt::format("<g class=\"axes\" stroke=\"#000000\" stroke-width=\"1\">\n");
    body_ += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\"/>\n", num(left), num(bottom), num(right));
    body_ += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\"/>\n", num(left), num(bottom), num(top));
    body_ += "</g>\n";
    const double xs = nice_step(x1_ - x0_);
    for (double t = std::ceil(x0_ / xs) * xs; t <= x1_ + 1e-9 * xs; t += xs) {
      body_ += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#000000\"/>\n", num(sx(t)),
                           num(bottom), num(bottom + 4));
      body_ += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\" font-family=\"sans-serif\" text-anchor=\"middle\">{:g}</text>\n",
                           num(sx(t)), num(bottom + 16), std::fabs(t) < 1e-12 ? 0.0 : t);
    }
    const double ys = nice_step(y1_ - y0_);
    for (double t = std::ceil(y0_ / ys) * ys; t <= y1_ + 1e-9 * ys; t += ys) {
      body_ += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"#000000\"/>\n", num(left - 4),
                           num(sy(t)), num(left));
      body_ += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\" font-family=\"sans-serif\" text-anchor=\"end\">{:g}</text>\n",
                           num(left - 6), num(sy(t) + 4), std::fabs(t) < 1e-12 ? 0.0 : t);
    }
    body_ += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\" font-family=\"sans-serif\" text-anchor=\"middle\">{}</text>\n",
                         num((left + right) / 2), num(kHeight - 14), escape(x_label));
    body_ += fmt::format(
        "<text x=\"16\" y=\"{0}\" font-size=\"12\" font-family=\"sans-serif\" text-anchor=\"middle\" "
        "transform=\"rotate(-90 16 {0})\">{1}</text>\n",
        num((top + bottom) / 2), escape(y_label));
  }

  double x0_, x1_, y0_, y1_;
  std::string body_;
};

std::string placeholder(std::string_view title, std::string_view reason) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
      "<title>{2}</title>\n"
      "<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{1}\" fill=\"#ffffff\"/>\n"
      "<text class=\"undefined\" x=\"{3}\" y=\"{4}\" text-anchor=\"middle\" font-size=\"13\" "
      "font-family=\"sans-serif\">{2}: not available ({5})</text>\n</svg>\n",
      kWidth, kHeight, escape(title), num(kWidth / 2), num(kHeight / 2), escape(reason));
}

std::pair<double, double> padded(double lo, double hi) {
  const double pad = hi > lo ? 0.05 * (hi - lo) : 1.0;
  return {lo - pad, hi + pad};
}

double quantile_sorted(const std::vector<double>& s, double q) {
  const double pos = q * static_cast<double>(s.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  if (i + 1 >= s.size()) return s.back();
  return s[i] + (pos - static_cast<double>(i)) * (s[i + 1] - s[i]);
}

}  // namespace

Histogram histogram_bins(std::span<const double> values) {
  Histogram h;
  if (values.empty()) return h;
  std::vector<double> s(values.begin(), values.end());
  std::sort(s.begin(), s.end());
  const double lo = s.front(), hi = s.back();
  const double iqr = quantile_sorted(s, 0.75) - quantile_sorted(s, 0.25);
  std::size_t bins = 10;
  double width = 0.0;
  if (iqr > 0.0 && hi > lo) {
    width = 2.0 * iqr / std::cbrt(static_cast<double>(s.size()));
    bins = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / width)));
  } else {
    width = hi > lo ? (hi - lo) / 10.0 : 0.1;
  }
  h.lower = hi > lo ? lo : lo - 0.5 * width * static_cast<double>(bins);
  h.bin_width = width;
  h.counts.assign(bins, 0);
  for (double v : s) {
    auto k = static_cast<std::size_t>(std::floor((v - h.lower) / width));
    h.counts[std::min(k, bins - 1)]++;
  }
  return h;
}

std::string render_scatter(const AnalysisBundle& b) {
  const auto& ref = b.data.reference;
  const auto& res = b.data.measured;
  double top = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) top = std::max({top, ref[i], res[i]});
  top = std::max(top, b.config.scheme.thresholds()[2]) * 1.08;

  Plot p("Reference vs measured AHI", "reference AHI [events/h]", "measured AHI [events/h]", 0.0, top, 0.0, top);
  std::array<double, kClassCount + 1> edges{0.0, b.config.scheme.thresholds()[0], b.config.scheme.thresholds()[1],
                                            b.config.scheme.thresholds()[2], top};
  for (std::size_t k = 0; k < kClassCount; ++k) {
    const double lo = edges[k], hi = edges[k + 1];
    p.raw(fmt::format(
        "<rect class=\"clinical-square\" data-class=\"{}\" data-lo=\"{:g}\" data-hi=\"{:g}\" x=\"{}\" y=\"{}\" "
        "width=\"{}\" height=\"{}\" fill=\"{}\" fill-opacity=\"0.7\"/>\n",
        escape(b.config.scheme.label(k)), lo, k + 1 < kClassCount ? hi : INFINITY, num(p.sx(lo)), num(p.sy(hi)),
        num(p.sx(hi) - p.sx(lo)), num(p.sy(lo) - p.sy(hi)), kSquareFill[k]));
  }
  double lo = ref.empty() ? 0.0 : ref[0], hi = lo;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    lo = std::min({lo, ref[i], res[i]});
    hi = std::max({hi, ref[i], res[i]});
  }
  p.line(lo, lo, hi, hi, "identity", "#555555",
         fmt::format(" stroke-dasharray=\"4 3\" data-x1=\"{:g}\" data-x2=\"{:g}\"", lo, hi));
  std::vector<std::pair<std::string, std::string_view>> legend = {{"Y = X", "#555555"}};
  if (b.linear_models) {
    const auto& m = *b.linear_models;
    p.line(0.0, m.with_intercept.intercept, top, m.with_intercept.intercept + m.with_intercept.slope * top,
           "fit-intercept", kPalette[1]);
    p.line(0.0, 0.0, top, m.through_origin.slope * top, "fit-origin", kPalette[2], " stroke-dasharray=\"6 3\"");
    legend.emplace_back(fmt::format("y = {:.3f}x + {:.3f}", m.with_intercept.slope, m.with_intercept.intercept),
                        kPalette[1]);
    legend.emplace_back(fmt::format("y = {:.3f}x", m.through_origin.slope), kPalette[2]);
  }
  for (std::size_t i = 0; i < ref.size(); ++i) p.point(ref[i], res[i]);
  if (b.pearson) legend.emplace_back(fmt::format("Pearson r = {:.3f} (p = {:.3g})", b.pearson->coefficient,
                                                 b.pearson->test.p_value), kPalette[0]);
  return p.finish(legend);
}

std::string render_ba(const AnalysisBundle& b, BlandAltmanVariant variant) {
  const Maybe<BlandAltmanResult>* section = &b.bland_altman;
  std::string title = "Bland-Altman plot";
  std::string x_label = "mean of reference and measured AHI";
  std::string y_label = "measured - reference AHI";
  if (variant == BlandAltmanVariant::Modified) {
    section = &b.modified_ba;
    title = "Modified Bland-Altman plot";
    x_label = "reference AHI";
  } else if (variant == BlandAltmanVariant::RelativeDeviation) {
    section = &b.relative_ba;
    title = "Relative deviation Bland-Altman plot";
    y_label = "100 * (measured - reference) / mean [%]";
  }
  if (!*section) return placeholder(title, section->reason());
  const auto& ba = section->value();

  double xl = 0.0, xh = 1.0, yl = ba.loa_low, yh = ba.loa_high;
  if (!ba.points.empty()) {
    xl = xh = ba.points[0].x;
    for (const auto& pt : ba.points) {
      xl = std::min(xl, pt.x);
      xh = std::max(xh, pt.x);
      yl = std::min(yl, pt.y);
      yh = std::max(yh, pt.y);
    }
  }
  auto [x0, x1] = padded(std::min(0.0, xl), xh);
  auto [y0, y1] = padded(yl, yh);
  Plot p(title, x_label, y_label, x0, x1, y0, y1);
  p.line(x0, 0.0, x1, 0.0, "zero", "#999999", " stroke-dasharray=\"2 2\"");
  p.line(x0, ba.mean_diff, x1, ba.mean_diff, "mean", kPalette[0],
         fmt::format(" data-value=\"{}\"", ba.mean_diff));
  p.line(x0, ba.loa_low, x1, ba.loa_low, "loa", kPalette[1],
         fmt::format(" stroke-dasharray=\"6 3\" data-value=\"{}\"", ba.loa_low));
  p.line(x0, ba.loa_high, x1, ba.loa_high, "loa", kPalette[1],
         fmt::format(" stroke-dasharray=\"6 3\" data-value=\"{}\"", ba.loa_high));
  if (ba.fit) p.line(x0, ba.fit->intercept + ba.fit->slope * x0, x1, ba.fit->intercept + ba.fit->slope * x1,
                     "fit", kPalette[2]);
  for (const auto& pt : ba.points) p.point(pt.x, pt.y);

  std::vector<std::pair<std::string, std::string_view>> legend = {
      {fmt::format("mean = {:.2f}", ba.mean_diff), kPalette[0]},
      {fmt::format("mean +/- 1.96 SD = [{:.2f}, {:.2f}]", ba.loa_low, ba.loa_high), kPalette[1]}};
  if (ba.fit) legend.emplace_back(fmt::format("fit: y = {:.3f}x + {:.3f}", ba.fit->slope, ba.fit->intercept), kPalette[2]);
  return p.finish(legend);
}

std::string render_ranking(const RankingConfig& cfg) {
  const double upper = 1.2 * cfg.tail_end();
  const double span = cfg.vmax - cfg.vmin;
  Plot p(fmt::format("Ranking function ({})", to_string(cfg.shape)), "reference AHI [events/h]", "weight B(AHI)",
         0.0, upper, std::min(0.0, cfg.vmin - 0.1 * span), cfg.vmax + 0.1 * span);
  std::vector<std::pair<double, double>> pts;
  for (const auto& c : sample_ranking_curve(cfg, 601)) pts.emplace_back(c.x, c.value);
  p.polyline(pts, "ranking-curve", kPalette[0]);
  for (const auto& m : ranking_markers(cfg)) {
    if (m.kind == "quarter") continue;
    p.raw(fmt::format("<circle class=\"marker\" data-kind=\"{}\" data-x=\"{:g}\" data-y=\"{:g}\" cx=\"{}\" cy=\"{}\" "
                      "r=\"4\" fill=\"{}\"/>\n",
                      m.kind, m.x, m.value, num(p.sx(m.x)), num(p.sy(m.value)),
                      m.kind == "hotspot" ? kPalette[1] : kPalette[2]));
  }
  return p.finish({{"B(x)", kPalette[0]}, {"hotspot", kPalette[1]}, {"midpoint / tail end", kPalette[2]}});
}

std::string render_histogram(const AnalysisBundle& b) {
  std::vector<double> d(b.data.reference.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = b.data.measured[i] - b.data.reference[i];
  if (d.empty()) return placeholder("Histogram of differences", "no data");
  const auto h = histogram_bins(d);
  const double upper_edge = h.lower + h.bin_width * static_cast<double>(h.counts.size());
  const double peak = static_cast<double>(*std::max_element(h.counts.begin(), h.counts.end()));
  auto [x0, x1] = padded(h.lower, upper_edge);
  Plot p("Histogram of differences", "measured - reference AHI", "count", x0, x1, 0.0, peak * 1.1);
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    const double a = h.lower + h.bin_width * static_cast<double>(k);
    const double c = static_cast<double>(h.counts[k]);
    p.raw(fmt::format("<rect class=\"bar\" data-count=\"{}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" "
                      "fill=\"{}\" stroke=\"#ffffff\"/>\n",
                      h.counts[k], num(p.sx(a)), num(p.sy(c)), num(p.sx(a + h.bin_width) - p.sx(a)),
                      num(p.sy(0.0) - p.sy(c)), kPalette[0]));
  }
  return p.finish({{fmt::format("n = {}, bin width = {:.3g}", d.size(), h.bin_width), kPalette[0]}});
}

std::string render_roc(const AnalysisBundle& b) {
  if (!b.roc) return placeholder("Pairwise ROC curves", b.roc.reason());
  const auto& roc = *b.roc;
  Plot p(fmt::format("Pairwise ROC curves (multi-class AUC = {:.3f})", roc.overall), "false positive rate",
         "true positive rate", 0.0, 1.0, 0.0, 1.0);
  p.line(0.0, 0.0, 1.0, 1.0, "chance", "#999999", " stroke-dasharray=\"4 3\"");
  std::vector<std::pair<std::string, std::string_view>> legend;
  for (std::size_t i = 0; i < roc.pairwise.size(); ++i) {
    const auto& c = roc.pairwise[i];
    std::vector<std::pair<double, double>> pts;
    for (const auto& pt : c.points) pts.emplace_back(pt.fpr, pt.tpr);
    const auto color = kPalette[i % kPalette.size()];
    p.polyline(pts, "roc-curve", color);
    legend.emplace_back(fmt::format("{} vs {}: AUC = {:.3f}", b.config.scheme.label(c.pair.first),
                                    b.config.scheme.label(c.pair.second), c.auc),
                        color);
  }
  return p.finish(legend);
}

std::map<std::string, std::string> render_all(const AnalysisBundle& b) {
  return {
      {"scatter", render_scatter(b)},
      {"bland_altman", render_ba(b, BlandAltmanVariant::Classic)},
      {"modified_ba", render_ba(b, BlandAltmanVariant::Modified)},
      {"relative_ba", render_ba(b, BlandAltmanVariant::RelativeDeviation)},
      {"ranking", render_ranking(b.config.ranking)},
      {"histogram", render_histogram(b)},
      {"roc", render_roc(b)},
  };
}

}  // namespace ahi
