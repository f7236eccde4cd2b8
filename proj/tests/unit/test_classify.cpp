#include <doctest.h>

#include <random>

#include "ahi/classify.hpp"
#include "generators.hpp"

using namespace ahi;

namespace {

ConfusionMatrix matrix(std::initializer_list<std::initializer_list<std::size_t>> rows) {
  ConfusionMatrix m;
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (auto v : row) m.counts[r][c++] = v;
    ++r;
  }
  return m;
}

}  // namespace

TEST_CASE("adult subranges") {
  const auto adult = SubrangeScheme::adult();
  CHECK(classify(16, adult) == 2);
  CHECK(classify(28, adult) == 2);
  CHECK(classify(14, adult) == 1);
  CHECK(classify(5, adult) == 1);
  CHECK(classify(4.999999, adult) == 0);
  CHECK(classify(0, adult) == 0);
  CHECK(classify(15, adult) == 2);
  CHECK(classify(30, adult) == 3);
  CHECK(classify(1e6, adult) == 3);
}

TEST_CASE("pediatric preset") {
  const auto ped = SubrangeScheme::pediatric();
  CHECK(ped.thresholds() == std::array<double, 3>{1, 5, 10});
  CHECK(classify(0.5, ped) == 0);
  CHECK(classify(1, ped) == 1);
  CHECK(classify(7, ped) == 2);
  CHECK(classify(10, ped) == 3);
}

TEST_CASE("scheme validation") {
  CHECK_THROWS_AS(SubrangeScheme({15, 5, 30}), AnalysisError);
  CHECK_THROWS_AS(SubrangeScheme({5, 5, 30}), AnalysisError);
  CHECK_THROWS_AS(SubrangeScheme({0, 5, 30}), AnalysisError);
  CHECK_THROWS_AS(SubrangeScheme({1, 5, INFINITY}), AnalysisError);
  try {
    SubrangeScheme({15, 5, 30});
  } catch (const AnalysisError& e) {
    CHECK(e.code() == ErrorCode::InvalidScheme);
    CHECK(std::string(e.what()).find("strictly increasing") != std::string::npos);
  }
}

TEST_CASE("property: every value falls in exactly one class, monotonically") {
  for (const auto& scheme : {SubrangeScheme::adult(), SubrangeScheme::pediatric(), SubrangeScheme({2.5, 7.25, 40})}) {
    std::vector<double> grid;
    for (int k = 0; k <= 10000; ++k) grid.push_back(k * 0.01);
    for (double t : scheme.thresholds()) {
      grid.push_back(t);
      grid.push_back(std::nextafter(t, 0.0));
    }
    std::sort(grid.begin(), grid.end());
    std::size_t prev = 0;
    for (double v : grid) {
      std::size_t hits = 0;
      const auto& t = scheme.thresholds();
      hits += v < t[0];
      hits += v >= t[0] && v < t[1];
      hits += v >= t[1] && v < t[2];
      hits += v >= t[2];
      REQUIRE(hits == 1);
      const auto c = classify(v, scheme);
      REQUIRE(c >= prev);
      prev = c;
    }
  }
}

TEST_CASE("confusion matrix hand case") {
  const auto s = PairedSample::create({4, 6, 20, 35}, {4.5, 5, 25, 10});
  const auto m = confusion(s, SubrangeScheme::adult());
  CHECK(m.counts[0][0] == 1);
  CHECK(m.counts[1][1] == 1);
  CHECK(m.counts[2][2] == 1);
  CHECK(m.counts[3][1] == 1);
  CHECK(m.total() == 4);
  CHECK(qualitative_stats(m).accuracy == doctest::Approx(0.75));
}

TEST_CASE("identical vectors give a diagonal matrix") {
  const auto s = PairedSample::create({1, 7, 20, 40, 3}, {1, 7, 20, 40, 3});
  const auto m = confusion(s, SubrangeScheme::adult());
  for (std::size_t r = 0; r < kClassCount; ++r)
    for (std::size_t c = 0; c < kClassCount; ++c)
      if (r != c) CHECK(m.counts[r][c] == 0);
  const auto st = qualitative_stats(m);
  CHECK(st.accuracy == 1.0);
  CHECK(*st.kappa == 1.0);
  for (const auto& pc : st.per_class) CHECK(*pc.sensitivity == 1.0);
}

TEST_CASE("total disagreement gives kappa -1") {
  const auto st = qualitative_stats(matrix({{0, 2, 0, 0}, {2, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}));
  CHECK(st.accuracy == 0.0);
  CHECK(*st.kappa == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("one-vs-rest metrics") {
  // rows: reference, cols: measured
  const auto m = matrix({{5, 1, 0, 0}, {2, 6, 2, 0}, {0, 1, 7, 2}, {0, 0, 1, 9}});
  const auto st = qualitative_stats(m);
  // class Mild: TP 6, FN 4, FP 2, TN 24
  CHECK(*st.per_class[1].sensitivity == doctest::Approx(0.6));
  CHECK(*st.per_class[1].specificity == doctest::Approx(24.0 / 26.0));
  CHECK(*st.per_class[1].ppv == doctest::Approx(0.75));
  CHECK(*st.per_class[1].npv == doctest::Approx(24.0 / 28.0));
  CHECK(st.accuracy == doctest::Approx(27.0 / 36.0));
  // p_e = (6*7 + 10*8 + 10*10 + 10*11) / 36^2
  const double pe = (42.0 + 80.0 + 100.0 + 110.0) / 1296.0;
  CHECK(*st.kappa == doctest::Approx((27.0 / 36.0 - pe) / (1 - pe)));
}

TEST_CASE("absent classes give Undefined, not zero") {
  const auto m = matrix({{3, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
  const auto st = qualitative_stats(m);
  CHECK_FALSE(st.per_class[2].sensitivity.has_value());
  CHECK_FALSE(st.per_class[2].ppv.has_value());
  CHECK(*st.per_class[2].specificity == 1.0);
  CHECK(st.per_class[2].sensitivity.reason().find("zero denominator") != std::string::npos);
}

TEST_CASE("kappa undefined when expected agreement is 1") {
  const auto st = qualitative_stats(matrix({{4, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}));
  CHECK(st.accuracy == 1.0);
  CHECK_FALSE(st.kappa.has_value());
}

TEST_CASE("empty matrix is rejected") {
  CHECK_THROWS_AS(qualitative_stats(ConfusionMatrix{}), AnalysisError);
}

TEST_CASE("property: accuracy equals a brute-force recount; kappa bounds") {
  std::mt19937_64 rng(21);
  const auto scheme = SubrangeScheme::adult();
  for (int iter = 0; iter < 1000; ++iter) {
    const auto s = testgen::random_sample(rng);
    std::size_t agree = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto& t = scheme.thresholds();
      auto cls = [&](double v) { return v < t[0] ? 0 : v < t[1] ? 1 : v < t[2] ? 2 : 3; };
      agree += cls(s.reference()[i]) == cls(s.measured()[i]);
    }
    const auto m = confusion(s, scheme);
    REQUIRE(m.total() == s.size());
    const auto st = qualitative_stats(m);
    REQUIRE(st.accuracy == doctest::Approx(double(agree) / double(s.size())).epsilon(1e-15));
    if (st.kappa) {
      REQUIRE(*st.kappa <= 1.0 + 1e-15);
      REQUIRE(*st.kappa <= st.accuracy + 1e-15);
      const bool diagonal = m.trace() == m.total();
      REQUIRE((std::fabs(*st.kappa - 1.0) < 1e-15) == diagonal);
    }
    for (const auto& pc : st.per_class)
      for (const auto* v : {&pc.sensitivity, &pc.specificity, &pc.ppv, &pc.npv})
        if (*v) REQUIRE((v->value() >= 0.0 && v->value() <= 1.0));
  }
}

TEST_CASE("switching to the pediatric scheme leaves the sample untouched") {
  std::mt19937_64 rng(22);
  const auto s = testgen::random_sample(rng);
  const auto copy = s;
  const auto a = confusion(s, SubrangeScheme::adult());
  const auto p = confusion(s, SubrangeScheme::pediatric());
  CHECK(s == copy);
  CHECK(a.total() == p.total());
}
