#include "infodd/service.hpp"

#include <atomic>
#include <limits>
#include <sstream>

#include "httplib.h"
#include "infodd/table_io.hpp"
#include "json.hpp"

namespace infodd {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

ApiResponse reply(int status, const ordered_json& body) { return ApiResponse{status, body.dump()}; }

ApiResponse error(int status, const std::string& message) {
  ordered_json body;
  body["error"] = message;
  return reply(status, body);
}

ordered_json state_object(const Session& session) {
  const auto& schema = session.diagram().schema();
  ordered_json state;
  switch (session.status()) {
    case SessionStatus::question: {
      state["status"] = "question";
      const QuestionView q = session.question();
      ordered_json question;
      question["variable"] = q.variable;
      question["options"] = q.options;
      state["question"] = std::move(question);
      break;
    }
    case SessionStatus::resolved: {
      state["status"] = "resolved";
      const ResultView r = session.result();
      ordered_json result;
      result["product_id"] = *r.product;
      result["label"] = r.label;
      state["result"] = std::move(result);
      break;
    }
    case SessionStatus::no_match:
      state["status"] = "no_match";
      break;
  }
  ordered_json trail = ordered_json::array();
  for (const auto& step : session.trail()) {
    const auto& var = schema.variables[step.var];
    ordered_json item;
    item["variable"] = var.name;
    item["value"] = step.value;
    item["label"] = var.value_labels[static_cast<std::size_t>(step.value)];
    trail.push_back(std::move(item));
  }
  state["trail"] = std::move(trail);
  return state;
}

ordered_json wrap_state(const Session& session) {
  ordered_json body;
  body["state"] = state_object(session);
  return body;
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  while (!path.empty()) {
    if (path.front() == '/') {
      path.remove_prefix(1);
      continue;
    }
    auto slash = path.find('/');
    parts.push_back(path.substr(0, slash));
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash);
  }
  return parts;
}

std::string query_param(std::string_view query, std::string_view key) {
  std::istringstream is{std::string(query)};
  for (std::string pair; std::getline(is, pair, '&');) {
    const auto eq = pair.find('=');
    if (pair.compare(0, eq, key) == 0) return eq == std::string::npos ? std::string() : pair.substr(eq + 1);
  }
  return {};
}

int status_for(SessionError::Kind kind) {
  switch (kind) {
    case SessionError::Kind::invalid_value:
      return 400;
    case SessionError::Kind::resolved:
    case SessionError::Kind::empty_trail:
      return 409;
    case SessionError::Kind::not_found:
      return 404;
  }
  return 500;
}

}  // namespace

std::string session_state_json(const Session& session) { return state_object(session).dump(); }

NavigatorService::NavigatorService(std::vector<CatalogBinding> catalogs, std::chrono::seconds idle_timeout)
    : catalogs_(std::move(catalogs)), sessions_(idle_timeout) {
  if (catalogs_.empty()) throw std::invalid_argument("navigator service needs at least one catalog");
}

const CatalogBinding* NavigatorService::find_catalog(std::string_view name) const {
  if (name.empty()) return &catalogs_.front();
  for (const auto& c : catalogs_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ApiResponse NavigatorService::handle(std::string_view method, std::string_view target, std::string_view body) {
  std::string_view path = target;
  std::string_view query;
  if (auto q = target.find('?'); q != std::string_view::npos) {
    path = target.substr(0, q);
    query = target.substr(q + 1);
  }
  const auto parts = split_path(path);
  if (parts.size() < 2 || parts[0] != "api") return error(404, "not found");

  json input = json::object();
  if (method == "POST" && body.find_first_not_of(" \t\r\n") != std::string_view::npos) {
    try {
      input = json::parse(body);
    } catch (const json::parse_error&) {
      return error(400, "request body is not valid JSON");
    }
    if (!input.is_object()) return error(400, "request body must be a JSON object");
  }

  try {
    if (parts[1] == "catalog" && parts.size() == 2) {
      if (method != "GET") return error(405, "method not allowed");
      const CatalogBinding* catalog = find_catalog(query_param(query, "catalog"));
      if (!catalog) return error(404, "unknown catalog");
      ordered_json doc = ordered_json::parse(schema_to_json(*catalog->schema));
      doc["name"] = catalog->name;
      return reply(200, doc);
    }

    if (parts[1] != "sessions") return error(404, "not found");

    if (parts.size() == 2) {
      if (method != "POST") return error(405, "method not allowed");
      std::string name;
      if (input.contains("catalog")) {
        if (!input["catalog"].is_string()) return error(400, "'catalog' must be a string");
        name = input["catalog"].get<std::string>();
      }
      const CatalogBinding* catalog = find_catalog(name);
      if (!catalog) return error(404, "unknown catalog '" + name + "'");
      sessions_.expire();
      const std::string id = sessions_.create(catalog->diagram);
      ordered_json out;
      out["session_id"] = id;
      out["state"] = sessions_.with(id, [](Session& s) { return state_object(s); });
      return reply(201, out);
    }

    const std::string id(parts[2]);
    if (parts.size() == 3) {
      if (method != "GET") return error(405, "method not allowed");
      return reply(200, sessions_.with(id, [](Session& s) { return wrap_state(s); }));
    }
    if (parts.size() != 4) return error(404, "not found");
    if (method != "POST") return error(405, "method not allowed");

    if (parts[3] == "answer") {
      if (!input.contains("value") || !input["value"].is_number_integer()) {
        return error(400, "'value' must be an integer");
      }
      const long long raw = input["value"].get<long long>();
      const int value = raw < 0 || raw > std::numeric_limits<int>::max() ? -1 : static_cast<int>(raw);
      return reply(200, sessions_.with(id, [value](Session& s) {
        s.answer(value);
        return wrap_state(s);
      }));
    }
    if (parts[3] == "undo") {
      return reply(200, sessions_.with(id, [](Session& s) {
        s.undo();
        return wrap_state(s);
      }));
    }
    if (parts[3] == "restart") {
      return reply(200, sessions_.with(id, [](Session& s) {
        s.restart();
        return wrap_state(s);
      }));
    }
    return error(404, "not found");
  } catch (const SessionError& e) {
    return error(status_for(e.kind()), e.what());
  }
}

struct HttpServer::Impl {
  NavigatorService& service;
  httplib::Server server;
  std::atomic<bool> running{false};

  explicit Impl(NavigatorService& s) : service(s) {}
};

HttpServer::HttpServer(NavigatorService& service, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(service)) {
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    std::string target = req.path;
    if (req.has_param("catalog")) target += "?catalog=" + req.get_param_value("catalog");
    const ApiResponse r = impl_->service.handle(req.method, target, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json; charset=utf-8");
  };
  auto& srv = impl_->server;
  srv.Get(R"(/api/.*)", forward);
  srv.Post(R"(/api/.*)", forward);
  srv.Put(R"(/api/.*)", forward);
  srv.Delete(R"(/api/.*)", forward);
  if (static_dir && std::filesystem::is_directory(*static_dir)) srv.set_mount_point("/", static_dir->string());
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen_after_bind() {
  impl_->running = true;
  const bool ok = impl_->server.listen_after_bind();
  impl_->running = false;
  return ok;
}

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

bool HttpServer::running() const { return impl_->server.is_running(); }

}  // namespace infodd
