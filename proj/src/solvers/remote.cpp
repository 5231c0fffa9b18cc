#include "herald/solvers/remote.hpp"

#include "herald/answer/parse.hpp"
#include "herald/answer/simplify.hpp"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>

namespace herald::solvers {

namespace {

using nlohmann::json;

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint split_endpoint(const SolverSpec& spec) {
  const std::string& url = spec.endpoint;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw TransportError(spec.id, "endpoint has no scheme: " + url);
  const auto path_begin = url.find('/', scheme_end + 3);
  if (path_begin == std::string::npos) return {url, "/"};
  return {url.substr(0, path_begin), url.substr(path_begin)};
}

SolverVerdict parse_response(const SolverSpec& spec, const std::string& body, double latency_ms) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw MalformedResponse(spec.id, std::string("response is not JSON: ") + e.what());
  }
  if (!j.is_object()) throw MalformedResponse(spec.id, "response is not an object");
  if (!j.contains("answer") || !j["answer"].is_string()) throw MalformedResponse(spec.id, "missing string field 'answer'");
  if (!j.contains("confidence") || !j["confidence"].is_number())
    throw MalformedResponse(spec.id, "missing numeric field 'confidence'");
  const double confidence = j["confidence"].get<double>();
  if (!(confidence >= 0.0 && confidence <= 1.0)) throw MalformedResponse(spec.id, "confidence outside [0, 1]");

  SolverVerdict v;
  v.solver_id = spec.id;
  v.role = spec.role;
  v.raw_answer = j["answer"].get<std::string>();
  v.answer = answer::normalize_or_unparsed(answer::extract_answer_text(v.raw_answer));
  v.raw_score = confidence_to_score(confidence);
  v.latency_ms = latency_ms;
  if (j.contains("tool_trace") && !j["tool_trace"].is_null()) {
    if (!j["tool_trace"].is_array()) throw MalformedResponse(spec.id, "tool_trace is not an array");
    for (const auto& t : j["tool_trace"]) {
      try {
        ToolCall c;
        c.action = t.at("action").get<std::string>();
        c.duration_ms = t.value("duration_ms", 0.0);
        c.success = t.value("success", false);
        if (c.duration_ms < 0) throw MalformedResponse(spec.id, "negative tool duration");
        v.tool_trace.push_back(std::move(c));
      } catch (const json::exception& e) {
        throw MalformedResponse(spec.id, std::string("bad tool_trace entry: ") + e.what());
      }
    }
  }
  return v;
}

SolverVerdict attempt(const SolverSpec& spec, const Endpoint& ep, const std::string& payload, int timeout_ms) {
  httplib::Client client(ep.origin);
  const auto timeout = std::chrono::milliseconds(timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  if (const char* token = std::getenv(kTokenEnvVar); token && *token) client.set_bearer_token_auth(token);

  const auto start = std::chrono::steady_clock::now();
  auto res = client.Post(ep.path, payload, "application/json");
  const double elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (!res) {
    const auto err = res.error();
    if (err == httplib::Error::ConnectionTimeout || (err == httplib::Error::Read && elapsed_ms >= timeout_ms))
      throw Timeout(spec.id, "no response within " + std::to_string(timeout_ms) + " ms");
    throw TransportError(spec.id, "request failed: " + httplib::to_string(err));
  }
  if (res->status != 200) throw TransportError(spec.id, "HTTP status " + std::to_string(res->status));
  return parse_response(spec, res->body, elapsed_ms);
}

}  // namespace

double confidence_to_score(double confidence) {
  constexpr double kEdge = 1e-6;
  const double c = std::clamp(confidence, kEdge, 1.0 - kEdge);
  return std::log(c / (1.0 - c));
}

SolverVerdict solve_remote(const SolverSpec& spec, const std::string& prompt, int timeout_ms) {
  if (spec.kind != SolverKind::Remote) throw std::invalid_argument("not a remote solver");
  if (timeout_ms <= 0) throw std::invalid_argument("timeout must be positive");
  const Endpoint ep = split_endpoint(spec);
  const std::string payload = json{{"id", spec.id}, {"prompt", prompt}, {"max_tokens", spec.max_tokens}}.dump();

  for (int tries = 0;; ++tries) {
    try {
      return attempt(spec, ep, payload, timeout_ms);
    } catch (const Timeout&) {
      if (tries >= spec.retries) throw;
    } catch (const TransportError&) {
      if (tries >= spec.retries) throw;
    }
  }
}

}  // namespace herald::solvers
