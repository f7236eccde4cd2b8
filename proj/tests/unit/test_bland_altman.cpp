#include <doctest.h>

#include <cmath>
#include <random>

#include "ahi/bland_altman.hpp"
#include "generators.hpp"

using namespace ahi;

TEST_CASE("classic hand case") {
  const std::vector<double> ref{10, 20}, res{12, 18};
  const auto ba = bland_altman(ref, res);
  CHECK(ba.points == std::vector<PlotPoint>{{11, 2}, {19, -2}});
  CHECK(std::fabs(ba.mean_diff) < 1e-10);
  CHECK(std::fabs(ba.sd_diff - std::sqrt(8.0)) < 1e-10);
  CHECK(std::fabs(ba.loa_high - 1.96 * std::sqrt(8.0)) < 1e-10);
  CHECK(std::fabs(ba.loa_low + 1.96 * std::sqrt(8.0)) < 1e-10);
  CHECK(ba.half_width() == doctest::Approx(5.543).epsilon(1e-3));
}

TEST_CASE("identical vectors collapse the limits") {
  const auto ba = bland_altman(PairedSample::create({3, 8, 40}, {3, 8, 40}));
  CHECK(ba.mean_diff == 0.0);
  CHECK(ba.sd_diff == 0.0);
  CHECK(ba.loa_low == 0.0);
  CHECK(ba.loa_high == 0.0);
}

TEST_CASE("kernel argument checks") {
  const std::vector<double> one{1}, two{1, 2};
  CHECK_THROWS_AS(bland_altman(one, one), AnalysisError);
  CHECK_THROWS_AS(bland_altman(one, two), AnalysisError);
}

TEST_CASE("modified hand cases") {
  const std::vector<double> ref{10, 20}, res{12, 18};
  const auto m = modified_bland_altman(ref, res);
  REQUIRE(m.fit);
  CHECK(m.fit->slope == doctest::Approx(-0.4).epsilon(1e-12));
  CHECK(m.fit->intercept == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(m.points[0] == PlotPoint{10, 2});

  const auto offset = modified_bland_altman(PairedSample::create({1, 7, 20, 33}, {4, 10, 23, 36}));
  CHECK(std::fabs(offset.fit->slope) < 1e-10);
  CHECK(offset.fit->intercept == doctest::Approx(3.0));

  CHECK_THROWS_AS(modified_bland_altman(PairedSample::create({5, 5, 5}, {1, 2, 3})), AnalysisError);
}

TEST_CASE("relative deviation") {
  const auto r = relative_deviation_ba(PairedSample::create({10, 20, 30}, {12, 20, 30}));
  CHECK(r.points[0].y == doctest::Approx(100.0 * 2.0 / 11.0));
  CHECK(r.points[0].y == doctest::Approx(18.18).epsilon(1e-3));

  const auto same = relative_deviation_ba(PairedSample::create({1, 2, 3}, {1, 2, 3}));
  for (const auto& p : same.points) CHECK(p.y == 0.0);

  const auto excl = relative_deviation_ba(PairedSample::create({0, 10, 20}, {0, 12, 18}));
  CHECK(excl.n_excluded == 1);
  CHECK(excl.points.size() == 2);

  try {
    relative_deviation_ba(PairedSample::create({0, 0, 5}, {0, 0, 6}));
    FAIL("expected AllExcluded");
  } catch (const AnalysisError& e) {
    CHECK(e.code() == ErrorCode::AllExcluded);
  }
}

TEST_CASE("property: Bland-Altman invariants on random samples") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> shift(0.0, 20.0), scale(0.1, 10.0);
  for (int iter = 0; iter < 500; ++iter) {
    const auto s = testgen::random_varying_sample(rng);
    const auto ba = bland_altman(s);
    REQUIRE(ba.points.size() == s.size());
    REQUIRE(ba.loa_high - ba.loa_low == doctest::Approx(2.0 * 1.96 * ba.sd_diff).epsilon(1e-15));

    double direct = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) direct += s.measured()[i] - s.reference()[i];
    REQUIRE(std::fabs(ba.mean_diff - direct / double(s.size())) < 1e-12);

    const auto sw = bland_altman(s.measured(), s.reference());
    REQUIRE(sw.mean_diff == -ba.mean_diff);
    for (std::size_t i = 0; i < s.size(); ++i) REQUIRE(sw.points[i].y == -ba.points[i].y);

    const double c = shift(rng);
    std::vector<double> moved;
    for (double v : s.measured()) moved.push_back(v + c);
    const auto mv = bland_altman(s.reference(), moved);
    REQUIRE(std::fabs(mv.mean_diff - (ba.mean_diff + c)) < 1e-10);
    REQUIRE(std::fabs(mv.sd_diff - ba.sd_diff) < 1e-10);

    const auto mod = modified_bland_altman(s.reference(), [&] {
      std::vector<double> off;
      for (double v : s.reference()) off.push_back(v + c);
      return off;
    }());
    REQUIRE(std::fabs(mod.fit->slope) < 1e-10);

    try {
      const auto rel = relative_deviation_ba(s);
      const double k = scale(rng);
      std::vector<double> kr, km;
      for (double v : s.reference()) kr.push_back(k * v);
      for (double v : s.measured()) km.push_back(k * v);
      const auto rel2 = relative_deviation_ba(kr, km);
      REQUIRE(rel2.points.size() == rel.points.size());
      for (std::size_t i = 0; i < rel.points.size(); ++i)
        REQUIRE(std::fabs(rel2.points[i].y - rel.points[i].y) < 1e-9);
    } catch (const AnalysisError& e) {
      REQUIRE(e.code() == ErrorCode::AllExcluded);
    }
  }
}
