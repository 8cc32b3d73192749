#pragma once

#include <atomic>
#include <memory>
#include <string>

#include "ramsey/session.hpp"

namespace ramsey {

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON
};

// HTTP-independent request dispatch for the session API; the HTTP server and
// the tests both go through here.
class ApiRouter {
 public:
  explicit ApiRouter(std::shared_ptr<SessionManager> sessions) : sessions_(std::move(sessions)) {}

  ApiResponse handle(const std::string& method, const std::string& path, const std::string& body) const;
  SessionManager& sessions() const noexcept { return *sessions_; }

 private:
  std::shared_ptr<SessionManager> sessions_;
};

// Blocking HTTP front end for an ApiRouter.
class HttpServer {
 public:
  explicit HttpServer(std::shared_ptr<ApiRouter> router);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds and serves until stop(); returns false if the port cannot be bound.
  // Port 0 picks a free port, readable through port() once listening.
  bool listen(const std::string& host, int port);
  int port() const noexcept { return port_.load(); }
  bool running() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::atomic<int> port_{0};
};

}  // namespace ramsey
