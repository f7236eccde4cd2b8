#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ahi {

/// Paired AHI values (events/hour): the reference study and the device
/// under test, row-aligned. Always valid once constructed: n >= 3, every
/// value finite and non-negative.
class PairedSample {
 public:
  static constexpr std::size_t kMinRows = 3;

  /// Validates and builds a sample. Row numbers in errors are 1-based
  /// positions in the given vectors.
  static PairedSample create(std::vector<double> reference, std::vector<double> measured,
                             std::vector<std::string> labels = {});

  const std::vector<double>& reference() const noexcept { return reference_; }
  const std::vector<double>& measured() const noexcept { return measured_; }
  /// Empty, or one label per row.
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return reference_.size(); }

  /// measured[i] - reference[i]
  double difference(std::size_t i) const { return measured_[i] - reference_[i]; }

  bool operator==(const PairedSample&) const = default;

 private:
  PairedSample(std::vector<double> reference, std::vector<double> measured,
               std::vector<std::string> labels)
      : reference_(std::move(reference)), measured_(std::move(measured)), labels_(std::move(labels)) {}

  std::vector<double> reference_;
  std::vector<double> measured_;
  std::vector<std::string> labels_;
};

enum class HeaderMode { Auto, Present, Absent };
enum class ColumnOrder { ReferenceFirst, MeasuredFirst };

struct ParseOptions {
  char delimiter = ',';
  HeaderMode header = HeaderMode::Auto;
  ColumnOrder order = ColumnOrder::ReferenceFirst;
};

/// Parses two-column delimited text. Blank lines are skipped; in Auto mode
/// the first non-blank row is a header iff one of its cells is not a number.
/// Errors carry the 1-based line number of the offending row.
PairedSample parse_pairs(std::string_view raw, const ParseOptions& options = {});

/// Parses a single cell as a finite decimal real. "." is the only accepted
/// decimal separator.
std::optional<double> parse_real(std::string_view cell);

/// Writes the sample as two-column text (reference first) with a header row.
std::string to_csv(const PairedSample& sample, char delimiter = ',');

/// Values above this are flagged as physiologically implausible.
inline constexpr double kPlausibleAhiLimit = 200.0;

struct Warning {
  std::optional<std::size_t> row;  // 1-based sample row
  std::string message;
  bool operator==(const Warning&) const = default;
};

/// Non-fatal data checks (currently: values above kPlausibleAhiLimit).
std::vector<Warning> plausibility_warnings(const PairedSample& sample);

}  // namespace ahi
