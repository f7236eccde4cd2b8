#include "ahi/ingest.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "ahi/error.hpp"

namespace ahi {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ColumnCount: return "ColumnCount";
    case ErrorCode::NonNumeric: return "NonNumeric";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::InvalidScheme: return "InvalidScheme";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::AllZeroDifferences: return "AllZeroDifferences";
    case ErrorCode::AllExcluded: return "AllExcluded";
    case ErrorCode::ClassAbsent: return "ClassAbsent";
    case ErrorCode::SingleClass: return "SingleClass";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput:
    case ErrorCode::ColumnCount:
    case ErrorCode::NonNumeric:
    case ErrorCode::NegativeValue:
    case ErrorCode::TooFewRows:
      return true;
    default:
      return false;
  }
}

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\v\f";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string_view unquote(std::string_view s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return trim(s.substr(1, s.size() - 2));
  return s;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    cells.push_back(unquote(trim(line.substr(start, pos - start))));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

void check_value(double v, std::size_t row, std::string_view column) {
  if (!std::isfinite(v))
    throw AnalysisError(ErrorCode::NonNumeric,
                        fmt::format("row {}: {} value is not a finite number", row, column), row);
  if (v < 0.0)
    throw AnalysisError(ErrorCode::NegativeValue,
                        fmt::format("row {}: {} AHI {} is negative", row, column, v), row);
}

}  // namespace

PairedSample PairedSample::create(std::vector<double> reference, std::vector<double> measured,
                                  std::vector<std::string> labels) {
  if (reference.size() != measured.size())
    throw AnalysisError(ErrorCode::ColumnCount,
                        fmt::format("reference has {} values but measured has {}",
                                    reference.size(), measured.size()));
  if (!labels.empty() && labels.size() != reference.size())
    throw AnalysisError(ErrorCode::ColumnCount, "labels must be empty or one per row");
  for (std::size_t i = 0; i < reference.size(); ++i) {
    check_value(reference[i], i + 1, "reference");
    check_value(measured[i], i + 1, "measured");
  }
  if (reference.empty()) throw AnalysisError(ErrorCode::EmptyInput, "no data rows");
  if (reference.size() < kMinRows)
    throw AnalysisError(ErrorCode::TooFewRows,
                        fmt::format("n < 3: at least {} pairs are required, got {}", kMinRows,
                                    reference.size()));
  return PairedSample(std::move(reference), std::move(measured), std::move(labels));
}

std::optional<double> parse_real(std::string_view cell) {
  cell = trim(cell);
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, value, std::chars_format::general);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

PairedSample parse_pairs(std::string_view raw, const ParseOptions& options) {
  if (raw.substr(0, 3) == "\xEF\xBB\xBF") raw.remove_prefix(3);

  std::vector<double> reference;
  std::vector<double> measured;
  bool header_pending = options.header != HeaderMode::Absent;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    auto nl = raw.find('\n', pos);
    if (nl == std::string_view::npos) nl = raw.size();
    const auto line = trim(raw.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;

    const auto cells = split(line, options.delimiter);
    if (header_pending) {
      header_pending = false;
      if (options.header == HeaderMode::Present) continue;
      const bool numeric = cells.size() >= 2 && parse_real(cells[0]) && parse_real(cells[1]);
      if (!numeric) continue;
    }
    if (cells.size() != 2)
      throw AnalysisError(ErrorCode::ColumnCount,
                          fmt::format("row {}: expected 2 columns, found {}", line_no, cells.size()),
                          line_no);

    double values[2];
    for (int c = 0; c < 2; ++c) {
      const auto v = parse_real(cells[c]);
      if (!v)
        throw AnalysisError(ErrorCode::NonNumeric,
                            fmt::format("row {}: cannot parse '{}' as a number", line_no, cells[c]),
                            line_no);
      values[c] = *v;
    }
    const bool ref_first = options.order == ColumnOrder::ReferenceFirst;
    const double ref = ref_first ? values[0] : values[1];
    const double res = ref_first ? values[1] : values[0];
    check_value(ref, line_no, "reference");
    check_value(res, line_no, "measured");
    reference.push_back(ref);
    measured.push_back(res);
  }

  if (reference.empty()) throw AnalysisError(ErrorCode::EmptyInput, "no data rows");
  return PairedSample::create(std::move(reference), std::move(measured));
}

std::string to_csv(const PairedSample& sample, char delimiter) {
  std::string out = fmt::format("reference{}measured\n", delimiter);
  for (std::size_t i = 0; i < sample.size(); ++i)
    out += fmt::format("{}{}{}\n", sample.reference()[i], delimiter, sample.measured()[i]);
  return out;
}

std::vector<Warning> plausibility_warnings(const PairedSample& sample) {
  std::vector<Warning> out;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double worst = std::max(sample.reference()[i], sample.measured()[i]);
    if (worst > kPlausibleAhiLimit)
      out.push_back({i + 1, fmt::format("row {}: AHI {} exceeds {} events/hour", i + 1, worst,
                                        kPlausibleAhiLimit)});
  }
  return out;
}

}  // namespace ahi
