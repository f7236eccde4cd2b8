#include "ahi/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "ahi/special.hpp"

namespace ahi {

namespace {

double mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::vector<double> differences(const PairedSample& sample) {
  std::vector<double> d(sample.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = sample.difference(i);
  return d;
}

// t statistic for a correlation coefficient with n - 2 degrees of freedom.
TestResult correlation_t_test(double r, std::size_t n, TestMethod method) {
  const double df = static_cast<double>(n) - 2.0;
  TestResult out;
  out.method = method;
  out.n_effective = n;
  out.df = df;
  if (std::fabs(r) >= 1.0) {
    out.statistic = std::copysign(std::numeric_limits<double>::infinity(), r);
    out.p_value = 0.0;
  } else {
    out.statistic = r * std::sqrt(df / (1.0 - r * r));
    out.p_value = special::student_t_two_sided(out.statistic, df);
  }
  return out;
}

}  // namespace

std::vector<double> midranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double pearson_coefficient(std::span<const double> x, std::span<const double> y) {
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw AnalysisError(ErrorCode::ZeroVariance,
                        sxx == 0.0 ? "zero variance in reference values"
                                   : "zero variance in measured values");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationResult pearson(const PairedSample& sample) {
  const double r = pearson_coefficient(sample.reference(), sample.measured());
  return {r, correlation_t_test(r, sample.size(), TestMethod::PearsonT)};
}

CorrelationResult spearman(const PairedSample& sample) {
  const auto rx = midranks(sample.reference());
  const auto ry = midranks(sample.measured());
  const double rho = pearson_coefficient(rx, ry);
  return {rho, correlation_t_test(rho, sample.size(), TestMethod::SpearmanT)};
}

ConcordanceResult lin_ccc(const PairedSample& sample, double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0))
    throw AnalysisError(ErrorCode::InvalidConfig, "confidence level must lie in (0, 1)");

  const auto& x = sample.reference();
  const auto& y = sample.measured();
  const double n = static_cast<double>(sample.size());
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0)
    throw AnalysisError(ErrorCode::ZeroVariance,
                        sxx == 0.0 ? "zero variance in reference values"
                                   : "zero variance in measured values");
  // Population (1/n) moments.
  const double var_x = sxx / n;
  const double var_y = syy / n;
  const double cov = sxy / n;
  const double sd_x = std::sqrt(var_x);
  const double sd_y = std::sqrt(var_y);

  ConcordanceResult out;
  out.confidence = confidence;
  out.ccc = 2.0 * cov / (var_x + var_y + (mx - my) * (mx - my));
  out.pearson_r = std::clamp(cov / (sd_x * sd_y), -1.0, 1.0);
  out.scale_shift = sd_x / sd_y;
  out.location_shift = (mx - my) / std::sqrt(sd_x * sd_y);

  // C_b = ccc / r in closed form; exactly 1 when the two vectors coincide.
  const double v = out.scale_shift;
  const double u = out.location_shift;
  out.bias_correction = 2.0 / (v + 1.0 / v + u * u);

  const double pc = out.ccc;
  const double r = out.pearson_r;
  if (std::fabs(pc) >= 1.0) {
    out.ci = Interval{pc, pc};
  } else if (r == 0.0) {
    out.ci = Maybe<Interval>::undefined("pearson r is zero; asymptotic variance undefined");
  } else {
    const double one_m_pc2 = 1.0 - pc * pc;
    const double u2 = u * u;
    const double var_z = ((1.0 - r * r) * pc * pc / (one_m_pc2 * r * r) +
                          2.0 * pc * pc * pc * (1.0 - pc) * u2 / (r * one_m_pc2 * one_m_pc2) -
                          pc * pc * pc * pc * u2 * u2 / (2.0 * r * r * one_m_pc2 * one_m_pc2)) /
                         (n - 2.0);
    if (!(std::isfinite(var_z) && var_z >= 0.0)) {
      out.ci = Maybe<Interval>::undefined(
          fmt::format("asymptotic variance of z-transformed ccc is not positive ({})", var_z));
    } else {
      const double z = std::atanh(pc);
      const double q = special::normal_quantile(1.0 - (1.0 - confidence) / 2.0);
      const double half = q * std::sqrt(var_z);
      out.ci = Interval{std::tanh(z - half), std::tanh(z + half)};
    }
  }
  return out;
}

RegressionFit fit_line(std::span<const double> x, std::span<const double> y, bool with_intercept) {
  if (x.size() < 2 || std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; }))
    throw AnalysisError(ErrorCode::Degenerate,
                        "linear model needs at least two distinct reference values");
  RegressionFit fit;
  fit.with_intercept = with_intercept;
  if (with_intercept) {
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sxx += (x[i] - mx) * (x[i] - mx);
      sxy += (x[i] - mx) * (y[i] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
  } else {
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sxx += x[i] * x[i];
      sxy += x[i] * y[i];
    }
    fit.slope = sxy / sxx;
    fit.intercept = 0.0;
  }
  return fit;
}

RegressionFit fit_line(const PairedSample& sample, bool with_intercept) {
  return fit_line(sample.reference(), sample.measured(), with_intercept);
}

double wilcoxon_exact_p(double w_plus, std::size_t m) {
  // counts[s] = number of sign assignments whose positive-rank sum is s.
  const std::size_t max_sum = m * (m + 1) / 2;
  std::vector<double> counts(max_sum + 1, 0.0);
  counts[0] = 1.0;
  for (std::size_t rank = 1; rank <= m; ++rank)
    for (std::size_t s = max_sum; s >= rank; --s) counts[s] += counts[s - rank];

  const double total = std::ldexp(1.0, static_cast<int>(m));
  const double w = std::round(w_plus);
  double le = 0.0, ge = 0.0;
  for (std::size_t s = 0; s <= max_sum; ++s) {
    const double sd = static_cast<double>(s);
    if (sd <= w) le += counts[s];
    if (sd >= w) ge += counts[s];
  }
  return std::min(1.0, 2.0 * std::min(le, ge) / total);
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> diffs, WilcoxonMode mode) {
  std::vector<double> nonzero;
  for (double d : diffs)
    if (d != 0.0) nonzero.push_back(d);
  if (nonzero.empty())
    throw AnalysisError(ErrorCode::AllZeroDifferences,
                        "all differences are zero; signed-rank test undefined");

  const std::size_t m = nonzero.size();
  std::vector<double> abs_d(m);
  std::transform(nonzero.begin(), nonzero.end(), abs_d.begin(), [](double d) { return std::fabs(d); });
  const auto ranks = midranks(abs_d);

  WilcoxonResult out;
  out.zeros_dropped = diffs.size() - m;
  double w_plus = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    if (nonzero[i] > 0.0) w_plus += ranks[i];
  const double md = static_cast<double>(m);
  out.w_minus = md * (md + 1.0) / 2.0 - w_plus;

  // Tie groups among |d| for the variance correction.
  std::sort(abs_d.begin(), abs_d.end());
  double tie_term = 0.0;
  for (std::size_t i = 0; i < m;) {
    std::size_t j = i;
    while (j < m && abs_d[j] == abs_d[i]) ++j;
    const double t = static_cast<double>(j - i);
    if (j - i > 1) out.ties = true;
    tie_term += t * t * t - t;
    i = j;
  }

  out.test.statistic = w_plus;
  out.test.n_effective = m;
  if (mode == WilcoxonMode::Exact && (out.ties || m > 30))
    throw AnalysisError(ErrorCode::InvalidConfig, "exact signed-rank distribution needs tie-free data and m <= 30");
  const bool exact = mode == WilcoxonMode::Exact ||
                     (mode == WilcoxonMode::Auto && m <= kWilcoxonExactLimit && !out.ties);
  if (exact) {
    out.test.method = TestMethod::WilcoxonExact;
    out.test.p_value = wilcoxon_exact_p(w_plus, m);
  } else {
    out.test.method = TestMethod::WilcoxonNormalApprox;
    const double mu = md * (md + 1.0) / 4.0;
    const double var = md * (md + 1.0) * (2.0 * md + 1.0) / 24.0 - tie_term / 48.0;
    const double diff = w_plus - mu;
    const double correction = diff > 0.0 ? 0.5 : (diff < 0.0 ? -0.5 : 0.0);
    const double z = var > 0.0 ? (diff - correction) / std::sqrt(var) : 0.0;
    out.test.p_value = special::normal_two_sided(z);
  }
  return out;
}

WilcoxonResult wilcoxon_paired(const PairedSample& sample) {
  return wilcoxon_signed_rank(differences(sample));
}

TestResult paired_t(std::span<const double> d) {
  if (d.size() < 2) throw AnalysisError(ErrorCode::TooFewRows, "paired t-test needs n >= 2");
  const double n = static_cast<double>(d.size());
  const double md = mean(d);
  double ss = 0.0;
  for (double v : d) ss += (v - md) * (v - md);
  if (ss == 0.0)
    throw AnalysisError(ErrorCode::ZeroVariance, "all differences are equal; t statistic undefined");
  const double sd = std::sqrt(ss / (n - 1.0));
  TestResult out;
  out.method = TestMethod::PairedT;
  out.n_effective = d.size();
  out.df = n - 1.0;
  out.statistic = md / (sd / std::sqrt(n));
  out.p_value = special::student_t_two_sided(out.statistic, n - 1.0);
  return out;
}

TestResult paired_t(const PairedSample& sample) { return paired_t(differences(sample)); }

}  // namespace ahi
