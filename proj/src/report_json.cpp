#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "ahi/report.hpp"

namespace ahi {

std::string_view to_string(TestMethod method) {
  switch (method) {
    case TestMethod::PearsonT: return "PearsonT";
    case TestMethod::SpearmanT: return "SpearmanT";
    case TestMethod::WilcoxonExact: return "WilcoxonExact";
    case TestMethod::WilcoxonNormalApprox: return "WilcoxonNormalApprox";
    case TestMethod::PairedT: return "PairedT";
  }
  return "PearsonT";
}

std::string_view to_string(BlandAltmanVariant variant) {
  switch (variant) {
    case BlandAltmanVariant::Classic: return "Classic";
    case BlandAltmanVariant::Modified: return "Modified";
    case BlandAltmanVariant::RelativeDeviation: return "RelativeDeviation";
  }
  return "Classic";
}

namespace {

constexpr double kSignificance = 0.05;
constexpr std::string_view kPosInf = "+infinity";
constexpr std::string_view kNegInf = "-infinity";

[[noreturn]] void malformed(std::string_view what) {
  throw std::invalid_argument(fmt::format("malformed report: {}", what));
}

Json undefined_json(std::string_view reason) {
  Json j;
  j["undefined"] = true;
  j["reason"] = reason;
  return j;
}

bool is_undefined(const Json& j) { return j.is_object() && j.value("undefined", false); }

// Infinite values keep the undefined shape; the reason names the sign so
// they survive a round trip.
Json real(double v) {
  if (std::isinf(v)) return undefined_json(v > 0 ? kPosInf : kNegInf);
  if (std::isnan(v)) return undefined_json("not a number");
  return v;
}

double real_from(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (is_undefined(j)) {
    const auto reason = j.at("reason").get<std::string>();
    if (reason == kPosInf) return std::numeric_limits<double>::infinity();
    if (reason == kNegInf) return -std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  malformed("expected a number");
}

template <class T, class F>
Json maybe(const Maybe<T>& m, F&& encode) {
  if (!m) return undefined_json(m.reason());
  return encode(*m);
}

Json maybe_real(const Maybe<double>& m) {
  return maybe(m, [](double v) { return real(v); });
}

template <class T, class F>
Maybe<T> maybe_from(const Json& j, F&& decode) {
  if (is_undefined(j)) return Undefined{j.at("reason").get<std::string>()};
  return decode(j);
}

Maybe<double> maybe_real_from(const Json& j) {
  if (is_undefined(j)) {
    const auto reason = j.at("reason").get<std::string>();
    if (reason != kPosInf && reason != kNegInf) return Undefined{reason};
  }
  return real_from(j);
}

Json reals(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(real(x));
  return a;
}

std::vector<double> reals_from(const Json& j) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(real_from(x));
  return out;
}

template <class E, std::size_t N>
E enum_from(const Json& j, const std::array<E, N>& all) {
  const auto name = j.get<std::string>();
  for (E e : all)
    if (to_string(e) == name) return e;
  malformed(fmt::format("unknown enum value '{}'", name));
}

constexpr std::array kMethods = {TestMethod::PearsonT, TestMethod::SpearmanT, TestMethod::WilcoxonExact,
                                 TestMethod::WilcoxonNormalApprox, TestMethod::PairedT};
constexpr std::array kVariants = {BlandAltmanVariant::Classic, BlandAltmanVariant::Modified,
                                  BlandAltmanVariant::RelativeDeviation};

// --- config ---------------------------------------------------------------

Json encode(const AnalysisConfig& c) {
  Json j;
  j["thresholds"] = c.scheme.thresholds();
  j["labels"] = c.scheme.labels();
  Json r;
  r["min"] = c.ranking.vmin;
  r["max"] = c.ranking.vmax;
  r["shape"] = to_string(c.ranking.shape);
  r["hotspots"] = c.ranking.hotspots;
  r["tail_end"] = c.ranking.tail_end();
  j["ranking"] = r;
  j["ci"] = c.confidence;
  return j;
}

AnalysisConfig decode_config(const Json& j) {
  AnalysisConfig c;
  c.scheme = SubrangeScheme(j.at("thresholds").get<std::array<double, 3>>(),
                            j.at("labels").get<std::array<std::string, kClassCount>>());
  const auto& r = j.at("ranking");
  c.ranking.hotspots = r.at("hotspots").get<std::array<double, 3>>();
  c.ranking.vmin = r.at("min").get<double>();
  c.ranking.vmax = r.at("max").get<double>();
  c.ranking.shape = enum_from(r.at("shape"), kAllShapes);
  c.confidence = j.at("ci").get<double>();
  return c;
}

// --- data -----------------------------------------------------------------

Json encode(const DataSummary& d, const SubrangeScheme& scheme) {
  Json j;
  j["n"] = d.n;
  Json counts = Json::array();
  for (std::size_t k = 0; k < kClassCount; ++k)
    counts.push_back(
        {{"class", scheme.label(k)}, {"reference", d.reference_counts[k]}, {"measured", d.measured_counts[k]}});
  j["class_counts"] = counts;
  j["reference"] = reals(d.reference);
  j["measured"] = reals(d.measured);
  return j;
}

DataSummary decode_data(const Json& j) {
  DataSummary d;
  d.n = j.at("n").get<std::size_t>();
  const auto& counts = j.at("class_counts");
  for (std::size_t k = 0; k < kClassCount; ++k) {
    d.reference_counts[k] = counts.at(k).at("reference").get<std::size_t>();
    d.measured_counts[k] = counts.at(k).at("measured").get<std::size_t>();
  }
  d.reference = reals_from(j.at("reference"));
  d.measured = reals_from(j.at("measured"));
  return d;
}

// --- tests ------------------------------------------------------------------

Json encode(const TestResult& t) {
  Json j;
  j["statistic"] = real(t.statistic);
  j["p_value"] = t.p_value;
  j["method"] = to_string(t.method);
  j["n_effective"] = t.n_effective;
  if (t.df) j["df"] = *t.df;
  j["significant_at_0.05"] = t.p_value < kSignificance;
  return j;
}

TestResult decode_test(const Json& j) {
  TestResult t;
  t.statistic = real_from(j.at("statistic"));
  t.p_value = j.at("p_value").get<double>();
  t.method = enum_from(j.at("method"), kMethods);
  t.n_effective = j.at("n_effective").get<std::size_t>();
  if (j.contains("df")) t.df = j.at("df").get<double>();
  return t;
}

Json encode(const CorrelationResult& c) {
  Json j;
  j["coefficient"] = c.coefficient;
  j["test"] = encode(c.test);
  return j;
}

CorrelationResult decode_correlation(const Json& j) {
  return {j.at("coefficient").get<double>(), decode_test(j.at("test"))};
}

Json encode(const ConcordanceResult& c) {
  Json j;
  j["ccc"] = c.ccc;
  j["ci_level"] = c.confidence;
  j["ci"] = maybe(c.ci, [](const Interval& i) { return Json{{"low", i.low}, {"high", i.high}}; });
  j["bias_correction"] = maybe_real(c.bias_correction);
  j["pearson_r"] = c.pearson_r;
  j["location_shift"] = c.location_shift;
  j["scale_shift"] = c.scale_shift;
  return j;
}

ConcordanceResult decode_concordance(const Json& j) {
  ConcordanceResult c;
  c.ccc = j.at("ccc").get<double>();
  c.confidence = j.at("ci_level").get<double>();
  c.ci = maybe_from<Interval>(j.at("ci"), [](const Json& i) {
    return Interval{i.at("low").get<double>(), i.at("high").get<double>()};
  });
  c.bias_correction = maybe_real_from(j.at("bias_correction"));
  c.pearson_r = j.at("pearson_r").get<double>();
  c.location_shift = j.at("location_shift").get<double>();
  c.scale_shift = j.at("scale_shift").get<double>();
  return c;
}

Json encode(const RegressionFit& f) {
  return Json{{"slope", f.slope}, {"intercept", f.intercept}, {"with_intercept", f.with_intercept}};
}

RegressionFit decode_fit(const Json& j) {
  return {j.at("slope").get<double>(), j.at("intercept").get<double>(), j.at("with_intercept").get<bool>()};
}

Json encode(const LinearModels& m) {
  return Json{{"with_intercept", encode(m.with_intercept)}, {"through_origin", encode(m.through_origin)}};
}

Json encode(const WilcoxonResult& w) {
  Json j;
  j["test"] = encode(w.test);
  j["w_plus"] = w.test.statistic;
  j["w_minus"] = w.w_minus;
  j["zeros_dropped"] = w.zeros_dropped;
  j["ties"] = w.ties;
  j["interpretation"] = w.test.p_value < kSignificance
                            ? "medians differ at the 0.05 level"
                            : "no evidence at the 0.05 level that the medians differ";
  return j;
}

WilcoxonResult decode_wilcoxon(const Json& j) {
  WilcoxonResult w;
  w.test = decode_test(j.at("test"));
  w.w_minus = j.at("w_minus").get<double>();
  w.zeros_dropped = j.at("zeros_dropped").get<std::size_t>();
  w.ties = j.at("ties").get<bool>();
  return w;
}

Json encode_paired_t(const TestResult& t) {
  Json j;
  j["test"] = encode(t);
  j["note"] = "the paired t-test presumes normally distributed differences; see the Wilcoxon section otherwise";
  return j;
}

// --- Bland-Altman -----------------------------------------------------------

Json encode(const BlandAltmanResult& b) {
  Json j;
  j["variant"] = to_string(b.variant);
  j["n"] = b.points.size();
  j["mean_diff"] = b.mean_diff;
  j["sd_diff"] = b.sd_diff;
  j["loa_low"] = b.loa_low;
  j["loa_high"] = b.loa_high;
  j["half_width"] = b.half_width();
  j["full_width"] = b.full_width();
  if (b.fit) j["fit"] = encode(*b.fit);
  if (b.variant == BlandAltmanVariant::RelativeDeviation) j["n_excluded"] = b.n_excluded;
  Json xs = Json::array(), ys = Json::array();
  for (const auto& p : b.points) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  j["points"] = Json{{"x", xs}, {"y", ys}};
  return j;
}

BlandAltmanResult decode_ba(const Json& j) {
  BlandAltmanResult b;
  b.variant = enum_from(j.at("variant"), kVariants);
  b.mean_diff = j.at("mean_diff").get<double>();
  b.sd_diff = j.at("sd_diff").get<double>();
  b.loa_low = j.at("loa_low").get<double>();
  b.loa_high = j.at("loa_high").get<double>();
  if (j.contains("fit")) b.fit = decode_fit(j.at("fit"));
  b.n_excluded = j.value("n_excluded", std::size_t{0});
  const auto xs = reals_from(j.at("points").at("x"));
  const auto ys = reals_from(j.at("points").at("y"));
  if (xs.size() != ys.size()) malformed("point arrays differ in length");
  for (std::size_t i = 0; i < xs.size(); ++i) b.points.push_back({xs[i], ys[i]});
  return b;
}

// --- errors -----------------------------------------------------------------

Json encode(const ErrorSummary& e) {
  Json j;
  j["mae"] = e.mae;
  j["emae"] = e.emae;
  j["emae_shape"] = to_string(e.emae_shape);
  Json by_shape;
  for (std::size_t k = 0; k < kAllShapes.size(); ++k) by_shape[std::string(to_string(kAllShapes[k]))] = e.emae_by_shape[k];
  j["emae_by_shape"] = by_shape;
  j["heuristic_ratio"] = maybe_real(e.heuristic_ratio);
  j["counts"] = Json{{"above", e.counts.above}, {"below", e.counts.below}, {"on", e.counts.on}};
  return j;
}

ErrorSummary decode_errors(const Json& j) {
  ErrorSummary e;
  e.mae = j.at("mae").get<double>();
  e.emae = j.at("emae").get<double>();
  e.emae_shape = enum_from(j.at("emae_shape"), kAllShapes);
  for (std::size_t k = 0; k < kAllShapes.size(); ++k)
    e.emae_by_shape[k] = j.at("emae_by_shape").at(std::string(to_string(kAllShapes[k]))).get<double>();
  e.heuristic_ratio = maybe_real_from(j.at("heuristic_ratio"));
  const auto& c = j.at("counts");
  e.counts = {c.at("above").get<std::size_t>(), c.at("below").get<std::size_t>(), c.at("on").get<std::size_t>()};
  return e;
}

// --- qualitative ------------------------------------------------------------

Json encode(const QualitativeSection& q, const SubrangeScheme& scheme) {
  Json j;
  j["accuracy"] = q.stats.accuracy;
  j["kappa"] = maybe_real(q.stats.kappa);
  Json per_class;
  for (std::size_t k = 0; k < kClassCount; ++k) {
    const auto& m = q.stats.per_class[k];
    per_class[scheme.label(k)] = Json{{"sensitivity", maybe_real(m.sensitivity)},
                                      {"specificity", maybe_real(m.specificity)},
                                      {"ppv", maybe_real(m.ppv)},
                                      {"npv", maybe_real(m.npv)}};
  }
  j["per_class"] = per_class;
  j["confusion_matrix"] = Json{{"rows", "reference"}, {"columns", "measured"},
                               {"classes", scheme.labels()}, {"counts", q.matrix.counts}};
  return j;
}

QualitativeSection decode_qualitative(const Json& j, const SubrangeScheme& scheme) {
  QualitativeSection q;
  q.stats.accuracy = j.at("accuracy").get<double>();
  q.stats.kappa = maybe_real_from(j.at("kappa"));
  for (std::size_t k = 0; k < kClassCount; ++k) {
    const auto& c = j.at("per_class").at(scheme.label(k));
    q.stats.per_class[k] = ClassMetrics{maybe_real_from(c.at("sensitivity")), maybe_real_from(c.at("specificity")),
                                        maybe_real_from(c.at("ppv")), maybe_real_from(c.at("npv"))};
  }
  q.matrix.counts = j.at("confusion_matrix").at("counts").get<decltype(q.matrix.counts)>();
  return q;
}

// --- ROC --------------------------------------------------------------------

Json pair_labels(const ClassPair& p, const SubrangeScheme& scheme) {
  return Json::array({scheme.label(p.first), scheme.label(p.second)});
}

Json encode(const MulticlassAuc& m, const SubrangeScheme& scheme) {
  Json j;
  j["overall"] = m.overall;
  j["n_pairs_evaluated"] = m.n_pairs_evaluated();
  Json pairwise = Json::array(), curves = Json::array(), skipped = Json::array();
  for (const auto& c : m.pairwise) {
    pairwise.push_back(Json{{"classes", pair_labels(c.pair, scheme)},
                            {"class_indices", {c.pair.first, c.pair.second}},
                            {"auc", c.auc},
                            {"n_negative", c.n_negative},
                            {"n_positive", c.n_positive}});
    Json fpr = Json::array(), tpr = Json::array();
    for (const auto& p : c.points) {
      fpr.push_back(p.fpr);
      tpr.push_back(p.tpr);
    }
    curves.push_back(Json{{"classes", pair_labels(c.pair, scheme)}, {"fpr", fpr}, {"tpr", tpr}});
  }
  for (const auto& p : m.skipped)
    skipped.push_back(Json{{"classes", pair_labels(p, scheme)}, {"class_indices", {p.first, p.second}}});
  j["pairwise"] = pairwise;
  j["skipped"] = skipped;
  j["curves"] = curves;
  return j;
}

MulticlassAuc decode_roc(const Json& j) {
  MulticlassAuc m;
  m.overall = j.at("overall").get<double>();
  const auto& pairwise = j.at("pairwise");
  const auto& curves = j.at("curves");
  if (pairwise.size() != curves.size()) malformed("roc pairwise/curves length mismatch");
  for (std::size_t i = 0; i < pairwise.size(); ++i) {
    RocCurve c;
    const auto idx = pairwise[i].at("class_indices").get<std::array<std::size_t, 2>>();
    c.pair = {idx[0], idx[1]};
    c.auc = pairwise[i].at("auc").get<double>();
    c.n_negative = pairwise[i].at("n_negative").get<std::size_t>();
    c.n_positive = pairwise[i].at("n_positive").get<std::size_t>();
    const auto fpr = reals_from(curves[i].at("fpr"));
    const auto tpr = reals_from(curves[i].at("tpr"));
    for (std::size_t k = 0; k < fpr.size() && k < tpr.size(); ++k) c.points.push_back({fpr[k], tpr[k]});
    m.pairwise.push_back(std::move(c));
  }
  for (const auto& s : j.at("skipped")) {
    const auto idx = s.at("class_indices").get<std::array<std::size_t, 2>>();
    m.skipped.emplace_back(idx[0], idx[1]);
  }
  return m;
}

}  // namespace

Json to_json(const AnalysisBundle& b) {
  const auto& scheme = b.config.scheme;
  Json j;
  j["config"] = encode(b.config);
  j["data"] = encode(b.data, scheme);
  j["pearson"] = maybe(b.pearson, [](const auto& v) { return encode(v); });
  j["spearman"] = maybe(b.spearman, [](const auto& v) { return encode(v); });
  j["lin"] = maybe(b.lin, [](const auto& v) { return encode(v); });
  j["linear_models"] = maybe(b.linear_models, [](const auto& v) { return encode(v); });
  j["wilcoxon"] = maybe(b.wilcoxon, [](const auto& v) { return encode(v); });
  j["paired_t"] = maybe(b.paired_t, [](const auto& v) { return encode_paired_t(v); });
  j["bland_altman"] = maybe(b.bland_altman, [](const auto& v) { return encode(v); });
  j["modified_ba"] = maybe(b.modified_ba, [](const auto& v) { return encode(v); });
  j["relative_ba"] = maybe(b.relative_ba, [](const auto& v) { return encode(v); });
  j["errors"] = maybe(b.errors, [](const auto& v) { return encode(v); });
  j["qualitative"] = maybe(b.qualitative, [&](const auto& v) { return encode(v, scheme); });
  j["roc"] = maybe(b.roc, [&](const auto& v) { return encode(v, scheme); });
  Json warnings = Json::array();
  for (const auto& w : b.warnings) {
    Json item;
    if (w.row) item["row"] = *w.row;
    item["message"] = w.message;
    warnings.push_back(item);
  }
  j["warnings"] = warnings;
  return j;
}

AnalysisBundle bundle_from_json(const Json& j) {
  AnalysisBundle b;
  b.config = decode_config(j.at("config"));
  const auto& scheme = b.config.scheme;
  b.data = decode_data(j.at("data"));
  b.pearson = maybe_from<CorrelationResult>(j.at("pearson"), decode_correlation);
  b.spearman = maybe_from<CorrelationResult>(j.at("spearman"), decode_correlation);
  b.lin = maybe_from<ConcordanceResult>(j.at("lin"), decode_concordance);
  b.linear_models = maybe_from<LinearModels>(j.at("linear_models"), [](const Json& m) {
    return LinearModels{decode_fit(m.at("with_intercept")), decode_fit(m.at("through_origin"))};
  });
  b.wilcoxon = maybe_from<WilcoxonResult>(j.at("wilcoxon"), decode_wilcoxon);
  b.paired_t = maybe_from<TestResult>(j.at("paired_t"), [](const Json& t) { return decode_test(t.at("test")); });
  b.bland_altman = maybe_from<BlandAltmanResult>(j.at("bland_altman"), decode_ba);
  b.modified_ba = maybe_from<BlandAltmanResult>(j.at("modified_ba"), decode_ba);
  b.relative_ba = maybe_from<BlandAltmanResult>(j.at("relative_ba"), decode_ba);
  b.errors = maybe_from<ErrorSummary>(j.at("errors"), decode_errors);
  b.qualitative = maybe_from<QualitativeSection>(
      j.at("qualitative"), [&](const Json& q) { return decode_qualitative(q, scheme); });
  b.roc = maybe_from<MulticlassAuc>(j.at("roc"), decode_roc);
  for (const auto& w : j.at("warnings")) {
    Warning warning;
    if (w.contains("row")) warning.row = w.at("row").get<std::size_t>();
    warning.message = w.at("message").get<std::string>();
    b.warnings.push_back(std::move(warning));
  }
  return b;
}

std::string render_report(const AnalysisBundle& bundle) { return to_json(bundle).dump(2) + "\n"; }

Json ranking_curve_json(const RankingConfig& cfg, std::size_t samples) {
  Json j;
  j["hotspots"] = cfg.hotspots;
  j["min"] = cfg.vmin;
  j["max"] = cfg.vmax;
  j["shape"] = to_string(cfg.shape);
  j["tail_end"] = cfg.tail_end();
  Json points = Json::array();
  for (const auto& p : sample_ranking_curve(cfg, samples)) points.push_back({p.x, p.value});
  j["samples"] = samples;
  j["points"] = points;
  Json markers = Json::array();
  for (const auto& m : ranking_markers(cfg))
    markers.push_back(Json{{"kind", m.kind}, {"x", m.x}, {"value", m.value}});
  j["markers"] = markers;
  return j;
}

}  // namespace ahi
