#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "ahi/error.hpp"
#include "ahi/ingest.hpp"

namespace ahi {

inline constexpr std::size_t kClassCount = 4;

/// Severity classes [0,t1), [t1,t2), [t2,t3), [t3,inf).
class SubrangeScheme {
 public:
  /// Throws InvalidScheme unless 0 < t1 < t2 < t3 (all finite).
  SubrangeScheme(std::array<double, 3> thresholds,
                 std::array<std::string, kClassCount> labels = default_labels());

  static SubrangeScheme adult() { return SubrangeScheme({5.0, 15.0, 30.0}); }
  static SubrangeScheme pediatric() { return SubrangeScheme({1.0, 5.0, 10.0}); }
  static std::array<std::string, kClassCount> default_labels() {
    return {"Normal", "Mild", "Moderate", "Severe"};
  }

  const std::array<double, 3>& thresholds() const noexcept { return thresholds_; }
  const std::array<std::string, kClassCount>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t cls) const { return labels_.at(cls); }

  bool operator==(const SubrangeScheme&) const = default;

 private:
  std::array<double, 3> thresholds_;
  std::array<std::string, kClassCount> labels_;
};

/// Class index 0..3; lower bounds inclusive, upper bounds exclusive.
std::size_t classify(double ahi, const SubrangeScheme& scheme);

/// Rows are the reference class, columns the measured class.
struct ConfusionMatrix {
  std::array<std::array<std::size_t, kClassCount>, kClassCount> counts{};

  std::size_t total() const;
  std::size_t trace() const;
  std::size_t row_sum(std::size_t r) const;
  std::size_t col_sum(std::size_t c) const;
  bool operator==(const ConfusionMatrix&) const = default;
};

ConfusionMatrix confusion(const PairedSample& sample, const SubrangeScheme& scheme);

/// One-vs-rest statistics for a single class.
struct ClassMetrics {
  Maybe<double> sensitivity = Undefined{};
  Maybe<double> specificity = Undefined{};
  Maybe<double> ppv = Undefined{};
  Maybe<double> npv = Undefined{};
  bool operator==(const ClassMetrics&) const = default;
};

struct ClassStats {
  std::array<ClassMetrics, kClassCount> per_class;
  double accuracy = 0.0;
  Maybe<double> kappa = Undefined{};
  bool operator==(const ClassStats&) const = default;
};

/// Accuracy, one-vs-rest sensitivity/specificity/PPV/NPV and Cohen's kappa.
/// Ratios with a zero denominator are Undefined. Throws EmptyInput for an
/// all-zero matrix.
ClassStats qualitative_stats(const ConfusionMatrix& m);

}  // namespace ahi
