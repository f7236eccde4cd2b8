#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace httplib {
class Server;
}

namespace ahi::service {

inline constexpr std::size_t kMaxBodyBytes = 1 << 20;
inline constexpr std::size_t kMinCurveSamples = 10;
inline constexpr std::size_t kMaxCurveSamples = 100000;

struct Response {
  int status = 200;
  std::string body;  // JSON
};

using QueryParams = std::multimap<std::string, std::string>;

std::string_view version();

/// POST /api/v1/analyze
Response handle_analyze(std::string_view body);
/// GET /api/v1/ranking-function
Response handle_ranking_function(const QueryParams& params);
/// GET /api/v1/health
Response handle_health();

struct Options {
  std::string host = "127.0.0.1";
  int port = 8080;
  /// Origins echoed in Access-Control-Allow-Origin; "*" allows any.
  std::vector<std::string> allowed_origins = {"http://localhost:5173"};
};

/// Origins from ALLOWED_ORIGINS (comma-separated), or the default.
std::vector<std::string> origins_from_env();

/// "host:port" -> Options fields. Throws std::invalid_argument.
void parse_listen(std::string_view listen, Options& options);

/// Registers the three endpoints, CORS handling and the body limit.
void install_routes(httplib::Server& server, const Options& options);

/// Blocks serving until the process is stopped. Returns false if the
/// address could not be bound.
bool serve(const Options& options);

}  // namespace ahi::service
