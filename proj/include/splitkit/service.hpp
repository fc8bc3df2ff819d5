#pragma once

// In-memory game sessions behind a small JSON-over-HTTP API. GameService holds
// the logic and is usable without sockets; HttpServer binds it to routes.

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>

#include "splitkit/game.hpp"

namespace splitkit {

struct ServiceResponse {
  int status = 200;
  nlohmann::json body;
};

class GameService {
 public:
  /// With a log path, every create/move/delete is appended as one JSON line.
  explicit GameService(std::optional<std::string> event_log_path = std::nullopt);
  ~GameService();
  GameService(const GameService&) = delete;
  GameService& operator=(const GameService&) = delete;

  /// Body: {"board": {...}} or a top-level preset, plus optional "first" and
  /// "human" ("Split" | "Skew", default Split). 201 on success; the engine
  /// moves at once if it is first.
  ServiceResponse create(const std::string& body);
  ServiceResponse get(const std::string& id) const;
  /// Body: {"element": int}. Applies the human move, then the engine reply.
  ServiceResponse move(const std::string& id, const std::string& body);
  ServiceResponse hint(const std::string& id);
  ServiceResponse remove(const std::string& id);

  std::size_t session_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

class HttpServer {
 public:
  explicit HttpServer(GameService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds to host:port (port 0 picks a free port) and returns the bound port.
  /// Throws std::runtime_error when binding fails.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace splitkit
