#include <doctest.h>

#include <cmath>
#include <random>

#include "ahi/report.hpp"
#include "generators.hpp"
#include "golden_values.hpp"

using namespace ahi;

namespace {

PairedSample ten_rows() {
  return PairedSample::create({2, 4, 7, 12, 14, 18, 25, 33, 41, 60}, {3, 3.5, 9, 10, 16, 17, 28, 30, 45, 52});
}

// Same keys and strings, numbers equal to a relative 1e-12.
void check_close(const Json& got, const Json& want, const std::string& path = "$") {
  CAPTURE(path);
  if (want.is_number() && got.is_number()) {
    const double a = got.get<double>(), b = want.get<double>();
    CHECK(std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(b)));
    return;
  }
  REQUIRE(got.type() == want.type());
  if (want.is_object()) {
    std::vector<std::string> gk, wk;
    for (const auto& [k, v] : got.items()) gk.push_back(k);
    for (const auto& [k, v] : want.items()) wk.push_back(k);
    REQUIRE(gk == wk);
    for (const auto& [k, v] : want.items()) check_close(got.at(k), v, path + "." + k);
  } else if (want.is_array()) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) check_close(got[i], want[i], path + "[" + std::to_string(i) + "]");
  } else {
    CHECK(got == want);
  }
}

}  // namespace

TEST_CASE("ten-row sample fills every section") {
  const auto b = analyze(ten_rows(), AnalysisConfig{});
  CHECK(b.pearson);
  CHECK(b.spearman);
  CHECK(b.lin);
  CHECK(b.linear_models);
  CHECK(b.wilcoxon);
  CHECK(b.paired_t);
  CHECK(b.bland_altman);
  CHECK(b.modified_ba);
  CHECK(b.relative_ba);
  CHECK(b.errors);
  CHECK(b.qualitative);
  CHECK(b.roc);
  CHECK(b.data.n == 10);
  CHECK(b.data.reference_counts == std::array<std::size_t, 4>{2, 3, 2, 3});

  const auto j = to_json(b);
  for (auto key : kSectionKeys) {
    CAPTURE(key);
    REQUIRE(j.contains(std::string(key)));
    CHECK_FALSE(j.at(std::string(key)).contains("undefined"));
  }
}

TEST_CASE("constant measured vector degrades only the affected sections") {
  const auto b = analyze(PairedSample::create({1, 8, 20, 40}, {10, 10, 10, 10}), AnalysisConfig{});
  REQUIRE_FALSE(b.pearson);
  CHECK(b.pearson.reason().find("zero variance") != std::string::npos);
  CHECK_FALSE(b.spearman);
  CHECK_FALSE(b.lin);
  CHECK(b.bland_altman);
  CHECK(b.modified_ba);
  CHECK(b.errors);
  CHECK(b.qualitative);
  CHECK(b.roc);
  CHECK(b.wilcoxon);

  const auto j = to_json(b);
  CHECK(j["pearson"]["undefined"] == true);
  CHECK(j["pearson"]["reason"].get<std::string>().find("zero variance") != std::string::npos);
}

TEST_CASE("configuration errors propagate") {
  AnalysisConfig cfg;
  cfg.ranking.hotspots = {1, 5, 10};
  CHECK_THROWS_AS(analyze(ten_rows(), cfg), AnalysisError);
  CHECK_THROWS_AS(AnalysisConfig::make({15, 5, 30}), AnalysisError);
  CHECK_THROWS_AS(AnalysisConfig::make({5, 15, 30}, 1.5, 0.5), AnalysisError);
  CHECK_THROWS_AS(AnalysisConfig::make({5, 15, 30}, 0.5, 1.5, RankingShape::Cubic, 1.0), AnalysisError);
  CHECK(parse_thresholds(" 1, 5 ,10") == std::array<double, 3>{1, 5, 10});
  CHECK_THROWS_AS(parse_thresholds("1,5"), AnalysisError);
  CHECK_THROWS_AS(preset_scheme("infant"), AnalysisError);
}

TEST_CASE("pediatric configuration is echoed") {
  const auto cfg = AnalysisConfig::make(preset_scheme("pediatric").thresholds());
  const auto j = to_json(analyze(ten_rows(), cfg));
  CHECK(j["config"]["thresholds"] == Json::array({1, 5, 10}));
  CHECK(j["config"]["ranking"]["hotspots"] == Json::array({1, 5, 10}));
  CHECK(j["config"]["ranking"]["tail_end"] == 20);
}

TEST_CASE("warnings for implausible values and excluded pairs") {
  const auto b = analyze(PairedSample::create({0, 10, 250, 30}, {0, 12, 240, 25}), AnalysisConfig{});
  CHECK(b.warnings.size() == 2);
  CHECK(b.relative_ba->n_excluded == 1);
}

TEST_CASE("property: JSON round trip is lossless") {
  std::mt19937_64 rng(71);
  const std::array<RankingShape, 3> shapes = kAllShapes;
  for (int iter = 0; iter < 200; ++iter) {
    const auto s = testgen::random_sample(rng);
    const auto cfg = AnalysisConfig::make({5, 15, 30}, 0.5, 1.5, shapes[iter % 3], 0.9);
    const auto b = analyze(s, cfg);
    const auto text = render_report(b);
    const auto back = bundle_from_json(Json::parse(text));
    REQUIRE(back == b);
    REQUIRE(render_report(back) == text);
  }
}

TEST_CASE("perfect agreement round-trips its infinite statistics") {
  const auto b = analyze(PairedSample::create({1, 5, 9, 20}, {1, 5, 9, 20}), AnalysisConfig{});
  REQUIRE(b.pearson);
  CHECK(std::isinf(b.pearson->test.statistic));
  const auto j = to_json(b);
  CHECK(j["pearson"]["test"]["statistic"]["reason"] == "+infinity");
  CHECK(bundle_from_json(j) == b);
}

TEST_CASE("golden dataset reproduces the recorded report") {
  const auto b = analyze(parse_pairs(testgen::slurp(golden::dataset_path())), AnalysisConfig{});
  const auto want = Json::parse(testgen::slurp(std::string(AHI_TEST_DATA_DIR) + "/golden_report.json"));
  check_close(to_json(b), want);
  // spot checks against the independent oracle values
  const auto j = to_json(b);
  CHECK(std::fabs(j["pearson"]["coefficient"].get<double>() - golden::kPearsonR) < 1e-9);
  CHECK(std::fabs(j["lin"]["ccc"].get<double>() - golden::kLinCcc) < 1e-9);
}

TEST_CASE("ranking curve JSON") {
  const auto j = ranking_curve_json(RankingConfig{}, 601);
  CHECK(j["samples"] == 601);
  CHECK(j["points"].size() == 601);
  bool saw = false;
  for (const auto& m : j["markers"])
    if (m["x"] == 5.0 && m["value"] == 1.5) saw = true;
  CHECK(saw);
}
