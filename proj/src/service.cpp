#include "ahi/service.hpp"

#include <charconv>
#include <cstdlib>

#include <fmt/format.h>
#include <httplib.h>

#include "ahi/report.hpp"

namespace ahi::service {

namespace {

Response error_response(int status, std::string_view code, std::string_view message,
                        std::optional<std::size_t> row = std::nullopt) {
  Json j;
  j["error"] = code;
  j["message"] = message;
  if (row) j["row"] = *row;
  return {status, j.dump()};
}

Response from_error(const AnalysisError& e) {
  const int status = is_input_error(e.code()) ? 400 : 422;
  return error_response(status, to_string(e.code()), e.what(), e.row());
}

double config_number(const Json& cfg, const char* key, double fallback) {
  if (!cfg.contains(key)) return fallback;
  const auto& v = cfg.at(key);
  if (!v.is_number())
    throw AnalysisError(ErrorCode::InvalidConfig, fmt::format("config.{} must be a number", key));
  return v.get<double>();
}

AnalysisConfig config_from_json(const Json& body) {
  if (!body.contains("config")) return AnalysisConfig{};
  const auto& cfg = body.at("config");
  if (!cfg.is_object()) throw AnalysisError(ErrorCode::InvalidConfig, "config must be an object");

  std::array<double, 3> thresholds = SubrangeScheme::adult().thresholds();
  if (cfg.contains("preset")) {
    if (!cfg.at("preset").is_string()) throw AnalysisError(ErrorCode::InvalidConfig, "config.preset must be a string");
    thresholds = preset_scheme(cfg.at("preset").get<std::string>()).thresholds();
  }
  if (cfg.contains("thresholds")) {
    const auto& t = cfg.at("thresholds");
    if (!t.is_array() || t.size() != 3 || !std::all_of(t.begin(), t.end(), [](const Json& v) { return v.is_number(); }))
      throw AnalysisError(ErrorCode::InvalidScheme, "config.thresholds must be an array of three numbers");
    for (std::size_t k = 0; k < 3; ++k) thresholds[k] = t[k].get<double>();
  }
  auto shape = RankingShape::Cubic;
  if (cfg.contains("shape")) {
    const auto& s = cfg.at("shape");
    const auto parsed = s.is_string() ? parse_shape(s.get<std::string>()) : std::nullopt;
    if (!parsed) throw AnalysisError(ErrorCode::InvalidConfig, "config.shape must be cubic, sinusoidal or linear");
    shape = *parsed;
  }
  return AnalysisConfig::make(thresholds, config_number(cfg, "ranking_min", 0.5),
                              config_number(cfg, "ranking_max", 1.5), shape, config_number(cfg, "ci", 0.95));
}

PairedSample pairs_from_json(const Json& body) {
  if (!body.contains("pairs") || !body.at("pairs").is_array())
    throw AnalysisError(ErrorCode::EmptyInput, "body must contain a 'pairs' array");
  std::vector<double> ref, res;
  std::size_t row = 0;
  for (const auto& pair : body.at("pairs")) {
    ++row;
    if (!pair.is_array() || pair.size() != 2)
      throw AnalysisError(ErrorCode::ColumnCount, fmt::format("row {}: expected [reference, measured]", row), row);
    for (const auto& v : pair)
      if (!v.is_number())
        throw AnalysisError(ErrorCode::NonNumeric, fmt::format("row {}: values must be numbers", row), row);
    ref.push_back(pair[0].get<double>());
    res.push_back(pair[1].get<double>());
  }
  return PairedSample::create(std::move(ref), std::move(res));
}

std::optional<std::string> param(const QueryParams& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  return it->second;
}

double number_param(const QueryParams& params, const std::string& key, double fallback) {
  const auto text = param(params, key);
  if (!text) return fallback;
  const auto v = parse_real(*text);
  if (!v) throw AnalysisError(ErrorCode::InvalidConfig, fmt::format("parameter '{}' must be a number", key));
  return *v;
}

}  // namespace

std::string_view version() { return AHI_VERSION; }

Response handle_analyze(std::string_view body) {
  if (body.size() > kMaxBodyBytes)
    return error_response(413, "PayloadTooLarge", fmt::format("body exceeds {} bytes", kMaxBodyBytes));
  Json parsed = Json::parse(body, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object())
    return error_response(400, "MalformedJson", "body must be a JSON object");
  try {
    const auto sample = pairs_from_json(parsed);
    const auto config = config_from_json(parsed);
    return {200, render_report(analyze(sample, config))};
  } catch (const AnalysisError& e) {
    return from_error(e);
  }
}

Response handle_ranking_function(const QueryParams& params) {
  try {
    std::array<double, 3> thresholds = SubrangeScheme::adult().thresholds();
    if (auto t = param(params, "thresholds")) thresholds = parse_thresholds(*t);
    auto shape = RankingShape::Cubic;
    if (auto s = param(params, "shape")) {
      const auto parsed = parse_shape(*s);
      if (!parsed) throw AnalysisError(ErrorCode::InvalidConfig, "shape must be cubic, sinusoidal or linear");
      shape = *parsed;
    }
    std::size_t samples = 601;
    if (auto s = param(params, "samples")) {
      const auto [ptr, ec] = std::from_chars(s->data(), s->data() + s->size(), samples);
      if (ec != std::errc{} || ptr != s->data() + s->size())
        throw AnalysisError(ErrorCode::InvalidConfig, "samples must be a positive integer");
    }
    if (samples < kMinCurveSamples || samples > kMaxCurveSamples)
      throw AnalysisError(ErrorCode::InvalidConfig, fmt::format("samples must lie in [{}, {}]", kMinCurveSamples,
                                                                kMaxCurveSamples));
    const auto cfg = RankingConfig::for_scheme(SubrangeScheme(thresholds), number_param(params, "min", 0.5),
                                               number_param(params, "max", 1.5), shape);
    return {200, ranking_curve_json(cfg, samples).dump()};
  } catch (const AnalysisError& e) {
    return error_response(422, to_string(e.code()), e.what());
  }
}

Response handle_health() {
  Json j;
  j["status"] = "ok";
  j["version"] = version();
  return {200, j.dump()};
}

std::vector<std::string> origins_from_env() {
  const char* env = std::getenv("ALLOWED_ORIGINS");
  if (!env || !*env) return Options{}.allowed_origins;
  std::vector<std::string> out;
  std::string_view s(env);
  std::size_t start = 0;
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    if (comma == std::string_view::npos) comma = s.size();
    auto item = s.substr(start, comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.emplace_back(item);
    start = comma + 1;
  }
  return out;
}

void parse_listen(std::string_view listen, Options& options) {
  const auto colon = listen.rfind(':');
  if (colon == std::string_view::npos || colon == 0)
    throw std::invalid_argument(fmt::format("listen address must be host:port, got '{}'", listen));
  int port = 0;
  const auto p = listen.substr(colon + 1);
  const auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), port);
  if (ec != std::errc{} || ptr != p.data() + p.size() || port < 0 || port > 65535)
    throw std::invalid_argument(fmt::format("invalid port in '{}'", listen));
  options.host = std::string(listen.substr(0, colon));
  options.port = port;
}

void install_routes(httplib::Server& server, const Options& options) {
  server.set_payload_max_length(kMaxBodyBytes);

  const auto write = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };

  server.Post("/api/v1/analyze", [write](const httplib::Request& req, httplib::Response& res) {
    write(res, handle_analyze(req.body));
  });
  server.Get("/api/v1/ranking-function", [write](const httplib::Request& req, httplib::Response& res) {
    QueryParams params(req.params.begin(), req.params.end());
    write(res, handle_ranking_function(params));
  });
  server.Get("/api/v1/health", [write](const httplib::Request&, httplib::Response& res) {
    write(res, handle_health());
  });
  server.Options(R"(/api/v1/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.set_post_routing_handler([origins = options.allowed_origins](const httplib::Request& req,
                                                                      httplib::Response& res) {
    const auto origin = req.get_header_value("Origin");
    if (origin.empty()) return;
    const bool any = std::find(origins.begin(), origins.end(), "*") != origins.end();
    if (!any && std::find(origins.begin(), origins.end(), origin) == origins.end()) return;
    res.set_header("Access-Control-Allow-Origin", any ? "*" : origin);
    res.set_header("Vary", "Origin");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  });

  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    std::string_view code = res.status == 413 ? "PayloadTooLarge" : res.status == 404 ? "NotFound" : "HttpError";
    Json j;
    j["error"] = code;
    j["message"] = httplib::status_message(res.status);
    res.set_content(j.dump(), "application/json");
  });
}

bool serve(const Options& options) {
  httplib::Server server;
  install_routes(server, options);
  return server.listen(options.host, options.port);
}

}  // namespace ahi::service
