#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infodd/diagram.hpp"
#include "infodd/navigator.hpp"

namespace infodd {

/// A named diagram together with the schema that labels its questions.
struct CatalogBinding {
  std::string name;
  std::shared_ptr<const TableSchema> schema;
  std::shared_ptr<const Diagram> diagram;
};

struct ApiResponse {
  int status = 200;
  std::string body;
};

/// HTTP+JSON navigator API, independent of the transport:
///
///   POST /api/sessions                {catalog?}  -> 201 {session_id, state}
///   GET  /api/sessions/{id}                       -> 200 {state}
///   POST /api/sessions/{id}/answer    {value}     -> 200 {state} | 400 | 409
///   POST /api/sessions/{id}/undo                  -> 200 {state} | 409
///   POST /api/sessions/{id}/restart               -> 200 {state}
///   GET  /api/catalog[?catalog=name]              -> schema and labels
///
/// state = {status, question?: {variable, options}, result?: {product_id,
/// label}, trail: [{variable, value, label}]}. Errors are {"error": text}.
class NavigatorService {
 public:
  explicit NavigatorService(std::vector<CatalogBinding> catalogs,
                            std::chrono::seconds idle_timeout = std::chrono::minutes(30));

  ApiResponse handle(std::string_view method, std::string_view target, std::string_view body);

  SessionStore& sessions() { return sessions_; }
  const std::vector<CatalogBinding>& catalogs() const { return catalogs_; }

 private:
  const CatalogBinding* find_catalog(std::string_view name) const;

  std::vector<CatalogBinding> catalogs_;
  SessionStore sessions_;
};

/// JSON state object for a session.
std::string session_state_json(const Session& session);

/// cpp-httplib transport for a NavigatorService; serves static assets from
/// `static_dir` when given.
class HttpServer {
 public:
  HttpServer(NavigatorService& service, std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  bool listen_after_bind();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace infodd
