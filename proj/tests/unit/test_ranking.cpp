#include <doctest.h>

#include <cmath>
#include <random>

#include "ahi/ranking.hpp"
#include "generators.hpp"

using namespace ahi;

namespace {

RankingConfig with_shape(RankingShape shape) {
  RankingConfig c;
  c.shape = shape;
  return c;
}

// Straight loop over the error formula with the weights written out.
double emae_oracle(const PairedSample& s, const SubrangeScheme& scheme, const RankingConfig& cfg) {
  long double sum = 0.0L;
  const auto& t = scheme.thresholds();
  auto cls = [&](double v) { return (v >= t[0]) + (v >= t[1]) + (v >= t[2]); };
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double ref = s.reference()[i], res = s.measured()[i];
    const double a = cls(ref) == cls(res) ? 0.5 : 1.0;
    sum += a * ranking_value(ref, cfg) * std::fabs(res - ref);
  }
  return double(sum / s.size());
}

}  // namespace

TEST_CASE("exact values at hotspots, midpoints and past the tail") {
  for (auto shape : kAllShapes) {
    const auto c = with_shape(shape);
    CAPTURE(to_string(shape));
    for (double x : {5.0, 15.0, 30.0, 0.0}) CHECK(std::fabs(ranking_value(x, c) - 1.5) < 1e-12);
    for (double x : {2.5, 10.0, 22.5, 60.0, 100.0, 1e6}) CHECK(std::fabs(ranking_value(x, c) - 0.5) < 1e-12);
  }
  CHECK(std::fabs(ranking_value(7.5, with_shape(RankingShape::Cubic)) - 0.75) < 1e-12);
  CHECK(std::fabs(ranking_value(7.5, with_shape(RankingShape::Sinusoidal)) - 1.0) < 1e-12);
  CHECK(std::fabs(ranking_value(7.5, with_shape(RankingShape::Linear)) - 1.0) < 1e-12);
}

TEST_CASE("tail segment descends monotonically") {
  for (auto shape : kAllShapes) {
    const auto c = with_shape(shape);
    double prev = ranking_value(30.0, c);
    for (double x = 30.05; x <= 60.0; x += 0.05) {
      const double v = ranking_value(x, c);
      REQUIRE(v <= prev + 1e-15);
      prev = v;
    }
  }
  // cubic tail: vertex with zero slope at the tail end
  const auto c = with_shape(RankingShape::Cubic);
  CHECK(std::fabs(ranking_value(60.0 - 1e-4, c) - 0.5) < 1e-7);
}

TEST_CASE("custom configurations") {
  RankingConfig c;
  c.hotspots = {1, 5, 10};
  c.vmin = 0.2;
  c.vmax = 3.0;
  CHECK(ranking_value(1, c) == doctest::Approx(3.0));
  CHECK(ranking_value(3, c) == doctest::Approx(0.2));
  CHECK(ranking_value(20, c) == doctest::Approx(0.2));
  CHECK(c.tail_end() == 20.0);

  RankingConfig bad;
  bad.vmin = 2.0;
  CHECK_THROWS_AS(bad.validate(), AnalysisError);
  bad = RankingConfig{};
  bad.hotspots = {5, 5, 30};
  CHECK_THROWS_AS(bad.validate(), AnalysisError);
}

TEST_CASE("shape names") {
  CHECK(parse_shape("sinusoidal") == RankingShape::Sinusoidal);
  CHECK_FALSE(parse_shape("quartic").has_value());
  CHECK(to_string(RankingShape::Linear) == "linear");
}

TEST_CASE("property: continuity, bounds and flat midpoints") {
  for (auto shape : kAllShapes) {
    CAPTURE(to_string(shape));
    const auto c = with_shape(shape);
    double prev = ranking_value(0.0, c);
    double max_jump = 0.0;
    for (int i = 1; i <= 10000; ++i) {
      const double x = i * 0.01;
      const double v = ranking_value(x, c);
      REQUIRE(v >= c.vmin - 1e-15);
      REQUIRE(v <= c.vmax + 1e-15);
      max_jump = std::max(max_jump, std::fabs(v - prev));
      prev = v;
    }
    // Lipschitz bound of the steepest piece (parabola edge on [0, 5]) is
    // 2 * (vmax - vmin) / 2.5 = 0.8 per unit, so a 0.01 step moves at most 0.008.
    CHECK(max_jump <= 0.008 + 1e-12);
    if (shape != RankingShape::Linear) {
      for (double mid : {2.5, 10.0, 22.5}) {
        const double h = 1e-6;
        const double slope = (ranking_value(mid + h, c) - ranking_value(mid - h, c)) / (2 * h);
        CHECK(std::fabs(slope) < 1e-5);
      }
    }
  }
}

TEST_CASE("segment means by numerical integration") {
  auto segment_mean = [](RankingShape shape) {
    const auto c = with_shape(shape);
    const int steps = 200000;
    const double a = 5.0, b = 15.0, h = (b - a) / steps;
    double sum = 0.5 * (ranking_value(a, c) + ranking_value(b, c));
    for (int i = 1; i < steps; ++i) sum += ranking_value(a + i * h, c);
    return sum * h / (b - a);
  };
  const double cubic = segment_mean(RankingShape::Cubic);
  const double sine = segment_mean(RankingShape::Sinusoidal);
  const double lin = segment_mean(RankingShape::Linear);
  CHECK(cubic == doctest::Approx(0.5 + 1.0 / 3.0).epsilon(1e-8));
  CHECK(sine == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(lin == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(cubic < lin);
}

TEST_CASE("eMAE hand cases") {
  const auto adult = SubrangeScheme::adult();
  const RankingConfig cubic;
  CHECK(emae(std::vector<double>{10}, std::vector<double>{12}, adult, cubic) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(emae(std::vector<double>{14}, std::vector<double>{16}, adult, cubic) == doctest::Approx(2.28).epsilon(1e-12));
  const auto same = PairedSample::create({3, 9, 40}, {3, 9, 40});
  CHECK(emae(same, adult, cubic) == 0.0);
  CHECK(mae(same) == 0.0);
  CHECK(mae(std::vector<double>{10, 20}, std::vector<double>{12, 18}) == 2.0);

  RankingConfig ped;
  CHECK_THROWS_AS(emae(PairedSample::create({1, 2, 3}, {1, 2, 4}), SubrangeScheme::pediatric(), ped), AnalysisError);
}

TEST_CASE("property: eMAE matches the straight-loop oracle and its bounds") {
  std::mt19937_64 rng(51);
  const auto adult = SubrangeScheme::adult();
  for (int iter = 0; iter < 1000; ++iter) {
    const auto s = testgen::random_sample(rng);
    const double m = mae(s);
    for (auto shape : kAllShapes) {
      const auto c = with_shape(shape);
      const double e = emae(s, adult, c);
      REQUIRE(std::fabs(e - emae_oracle(s, adult, c)) < 1e-12);
      REQUIRE(e <= c.vmax * m + 1e-12);
      REQUIRE(e >= 0.5 * c.vmin * m - 1e-12);
    }
    const double ones = emae(s, adult, [](double) { return 1.0; }, Attenuation{1.0, 1.0});
    REQUIRE(ones == m);
  }
}

TEST_CASE("heuristic ratio") {
  const auto r = heuristic_ratio(PairedSample::create({1, 2, 3, 4}, {2, 3, 4, 3}));
  CHECK(*r.ratio == 3.0);
  CHECK(r.counts == LineCounts{3, 1, 0});

  const auto sym = heuristic_ratio(PairedSample::create({10, 20, 5, 5}, {12, 18, 5, 5}));
  CHECK(*sym.ratio == 1.0);
  CHECK(sym.counts.on == 2);

  const auto none = heuristic_ratio(PairedSample::create({1, 2, 3}, {1, 2, 3}));
  CHECK_FALSE(none.ratio.has_value());
  CHECK(none.counts.on == 3);
}

TEST_CASE("error summary covers every shape") {
  const auto s = PairedSample::create({10, 14, 40}, {12, 16, 30});
  RankingConfig c;
  c.shape = RankingShape::Linear;
  const auto sum = summarize_errors(s, SubrangeScheme::adult(), c);
  CHECK(sum.emae_shape == RankingShape::Linear);
  CHECK(sum.emae == sum.emae_by_shape[2]);
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(sum.emae_by_shape[k] == emae(s, SubrangeScheme::adult(), with_shape(kAllShapes[k])));
  CHECK(sum.mae == doctest::Approx(14.0 / 3.0));
}

TEST_CASE("curve sampling and markers") {
  const RankingConfig c;
  const auto pts = sample_ranking_curve(c, 601);
  REQUIRE(pts.size() == 601);
  CHECK(pts.front().x == 0.0);
  CHECK(pts.back().x == doctest::Approx(72.0));
  for (std::size_t i = 1; i < pts.size(); ++i) REQUIRE(pts[i].x > pts[i - 1].x);
  CHECK_THROWS_AS(sample_ranking_curve(c, 1), AnalysisError);

  const auto marks = ranking_markers(c);
  bool saw5 = false, saw7 = false;
  for (const auto& m : marks) {
    if (m.x == 5.0) saw5 = m.value == 1.5 && m.kind == "hotspot";
    if (m.x == 7.5) saw7 = m.value == 0.75;
  }
  CHECK(saw5);
  CHECK(saw7);
}
