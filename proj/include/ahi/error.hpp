#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace ahi {

enum class ErrorCode {
  // input validation
  EmptyInput,
  ColumnCount,
  NonNumeric,
  NegativeValue,
  TooFewRows,
  // configuration
  InvalidScheme,
  InvalidConfig,
  // analysis preconditions
  ZeroVariance,
  Degenerate,
  AllZeroDifferences,
  AllExcluded,
  ClassAbsent,
  SingleClass,
};

std::string_view to_string(ErrorCode code);

/// True for errors caused by the paired data itself (as opposed to the
/// analysis configuration or a statistic-specific precondition).
bool is_input_error(ErrorCode code);

class AnalysisError : public std::runtime_error {
 public:
  AnalysisError(ErrorCode code, const std::string& message,
                std::optional<std::size_t> row = std::nullopt)
      : std::runtime_error(message), code_(code), row_(row) {}

  ErrorCode code() const noexcept { return code_; }
  /// 1-based row the error refers to, if any.
  std::optional<std::size_t> row() const noexcept { return row_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> row_;
};

/// Marker for a statistic that could not be computed, with the reason.
struct Undefined {
  std::string reason;
  bool operator==(const Undefined&) const = default;
};

/// Either a value or an explicit Undefined(reason). Zero-denominator
/// ratios and failed report sections use this instead of NaN or 0.
template <class T>
class Maybe {
 public:
  Maybe(T value) : state_(std::move(value)) {}
  Maybe(Undefined u) : state_(std::move(u)) {}

  static Maybe undefined(std::string reason) { return Maybe(Undefined{std::move(reason)}); }

  bool has_value() const noexcept { return std::holds_alternative<T>(state_); }
  explicit operator bool() const noexcept { return has_value(); }

  const T& value() const {
    if (auto* v = std::get_if<T>(&state_)) return *v;
    throw std::logic_error("Maybe::value() on undefined: " + reason());
  }
  const T& operator*() const { return value(); }
  const T* operator->() const { return &value(); }

  const std::string& reason() const {
    static const std::string empty;
    if (auto* u = std::get_if<Undefined>(&state_)) return u->reason;
    return empty;
  }

  bool operator==(const Maybe&) const = default;

 private:
  std::variant<T, Undefined> state_;
};

}  // namespace ahi
