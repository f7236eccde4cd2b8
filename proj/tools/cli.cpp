#include "cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ahi/report.hpp"
#include "ahi/service.hpp"
#include "ahi/svg.hpp"

namespace ahi::cli {

namespace {

namespace fs = std::filesystem;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Diagnostics {
  std::ostream& err;
  bool color;

  void error(std::string_view msg) const {
    err << (color ? "\033[31merror:\033[0m " : "error: ") << msg << '\n';
  }
  void warning(std::string_view msg) const {
    err << (color ? "\033[33mwarning:\033[0m " : "warning: ") << msg << '\n';
  }
};

bool use_color(const std::ostream& err) {
  if (std::getenv("NO_COLOR") != nullptr) return false;
  return &err == &std::cerr && ::isatty(STDERR_FILENO) == 1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError(fmt::format("cannot read '{}'", path));
  return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError(fmt::format("cannot write '{}'", path.string()));
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw IoError(fmt::format("cannot write '{}'", path.string()));
}

void emit(const std::string& target, std::string_view content, std::ostream& out) {
  if (target == "-") {
    out << content;
    out.flush();
  } else {
    write_file(target, content);
  }
}

struct InputFlags {
  std::string path;
  std::string delimiter = "auto";
  std::string header = "auto";
  bool measured_first = false;

  void attach(CLI::App& cmd) {
    cmd.add_option("--input", path, "CSV/TSV file with reference and measured AHI columns")->required();
    cmd.add_option("--delimiter", delimiter, "comma, tab, semicolon or auto (by file extension)")
        ->check(CLI::IsMember({"auto", "comma", "tab", "semicolon"}));
    cmd.add_option("--header", header, "first row is a header: auto, yes or no")
        ->check(CLI::IsMember({"auto", "yes", "no"}));
    cmd.add_flag("--measured-first", measured_first, "column 1 holds the measured values");
  }

  ParseOptions options() const {
    ParseOptions o;
    if (delimiter == "tab" || (delimiter == "auto" && fs::path(path).extension() == ".tsv"))
      o.delimiter = '\t';
    else if (delimiter == "semicolon")
      o.delimiter = ';';
    o.header = header == "yes" ? HeaderMode::Present : header == "no" ? HeaderMode::Absent : HeaderMode::Auto;
    o.order = measured_first ? ColumnOrder::MeasuredFirst : ColumnOrder::ReferenceFirst;
    return o;
  }

  PairedSample load() const { return parse_pairs(read_file(path), options()); }
};

struct SchemeFlags {
  std::string thresholds;
  std::string preset;
  double ranking_min = 0.5;
  double ranking_max = 1.5;
  std::string shape = "cubic";

  void attach(CLI::App& cmd) {
    auto* t = cmd.add_option("--thresholds", thresholds, "subrange thresholds a,b,c (default 5,15,30)");
    auto* p = cmd.add_option("--preset", preset, "adult (5,15,30) or pediatric (1,5,10)")
                  ->check(CLI::IsMember({"adult", "pediatric"}));
    t->excludes(p);
    cmd.add_option("--ranking-min", ranking_min, "ranking function minimum (default 0.5)");
    cmd.add_option("--ranking-max", ranking_max, "ranking function maximum (default 1.5)");
    cmd.add_option("--shape", shape, "cubic, sinusoidal or linear (default cubic)")
        ->check(CLI::IsMember({"cubic", "sinusoidal", "linear"}));
  }

  std::array<double, 3> threshold_values() const {
    if (!thresholds.empty()) return parse_thresholds(thresholds);
    if (!preset.empty()) return preset_scheme(preset).thresholds();
    return SubrangeScheme::adult().thresholds();
  }

  AnalysisConfig config(double ci) const {
    return AnalysisConfig::make(threshold_values(), ranking_min, ranking_max, *parse_shape(shape), ci);
  }
};

int cmd_analyze(const InputFlags& input, const SchemeFlags& scheme, double ci, const std::string& out_path,
                const std::string& plots_dir, std::ostream& out, const Diagnostics& diag) {
  const auto config = scheme.config(ci);
  const auto sample = input.load();
  const auto bundle = analyze(sample, config);
  for (const auto& w : bundle.warnings) diag.warning(w.message);

  emit(out_path, render_report(bundle), out);
  if (!plots_dir.empty()) {
    std::error_code ec;
    fs::create_directories(plots_dir, ec);
    if (ec) throw IoError(fmt::format("cannot create '{}': {}", plots_dir, ec.message()));
    for (const auto& [name, svg] : render_all(bundle)) write_file(fs::path(plots_dir) / (name + ".svg"), svg);
  }
  return kOk;
}

int cmd_ranking_curve(const SchemeFlags& scheme, std::size_t samples, const std::string& format,
                      const std::string& out_path, std::ostream& out) {
  if (samples < service::kMinCurveSamples || samples > service::kMaxCurveSamples)
    throw AnalysisError(ErrorCode::InvalidConfig, fmt::format("--samples must lie in [{}, {}]",
                                                              service::kMinCurveSamples, service::kMaxCurveSamples));
  const auto cfg = scheme.config(0.95).ranking;
  if (format == "svg") {
    emit(out_path, render_ranking(cfg), out);
    return kOk;
  }
  std::string csv = "x,value,kind\n";
  for (const auto& p : sample_ranking_curve(cfg, samples)) csv += fmt::format("{},{},sample\n", p.x, p.value);
  for (const auto& m : ranking_markers(cfg)) csv += fmt::format("{},{},{}\n", m.x, m.value, m.kind);
  emit(out_path, csv, out);
  return kOk;
}

int cmd_validate(const InputFlags& input, std::ostream& out, const Diagnostics& diag) {
  const auto sample = input.load();
  for (const auto& w : plausibility_warnings(sample)) diag.warning(w.message);
  out << sample.size() << " rows OK\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const Diagnostics diag{err, use_color(err)};

  CLI::App app{"Method-agreement analysis of Apnea-Hypopnea Index measurements", "ahicmp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(service::version()));

  InputFlags input;
  SchemeFlags scheme;
  double ci = 0.95;
  std::string out_path = "-";
  std::string plots_dir;
  std::size_t samples = 601;
  std::string format = "csv";
  std::string listen = "127.0.0.1:8080";

  auto* analyze_cmd = app.add_subcommand("analyze", "run every analysis and write the JSON report");
  input.attach(*analyze_cmd);
  scheme.attach(*analyze_cmd);
  analyze_cmd->add_option("--ci", ci, "confidence level for Lin's CCC interval (default 0.95)");
  analyze_cmd->add_option("--out", out_path, "report path, '-' for standard output");
  analyze_cmd->add_option("--plots", plots_dir, "directory for SVG figures");

  SchemeFlags curve_scheme;
  std::string curve_out = "-";
  auto* curve_cmd = app.add_subcommand("ranking-curve", "sample the ranking function");
  curve_scheme.attach(*curve_cmd);
  curve_cmd->add_option("--samples", samples, "number of evenly spaced samples (default 601)");
  curve_cmd->add_option("--format", format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
  curve_cmd->add_option("--out", curve_out, "output path, '-' for standard output");

  InputFlags validate_input;
  auto* validate_cmd = app.add_subcommand("validate", "check an input file");
  validate_input.attach(*validate_cmd);

  auto* serve_cmd = app.add_subcommand("serve", "run the HTTP JSON API");
  serve_cmd->add_option("--listen", listen, "host:port (default 127.0.0.1:8080)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(input, scheme, ci, out_path, plots_dir, out, diag);
    if (*curve_cmd) return cmd_ranking_curve(curve_scheme, samples, format, curve_out, out);
    if (*validate_cmd) return cmd_validate(validate_input, out, diag);
    if (*serve_cmd) {
      service::Options opts;
      service::parse_listen(listen, opts);
      opts.allowed_origins = service::origins_from_env();
      err << fmt::format("listening on http://{}:{}\n", opts.host, opts.port);
      if (!service::serve(opts)) {
        diag.error(fmt::format("cannot listen on {}", listen));
        return kIoFailure;
      }
      return kOk;
    }
  } catch (const AnalysisError& e) {
    diag.error(e.what());
    return kInvalidInput;
  } catch (const IoError& e) {
    diag.error(e.what());
    return kIoFailure;
  } catch (const std::invalid_argument& e) {
    diag.error(e.what());
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace ahi::cli
