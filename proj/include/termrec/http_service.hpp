#pragma once

#include <memory>
#include <string>

#include "termrec/engine.hpp"

namespace termrec {

// JSON-over-HTTP front end for an Engine:
//   POST /api/users                        {keywords}        -> 201 {user_id, model}
//   GET  /api/users/{id}/model                               -> 200 {entries}
//   GET  /api/users/{id}/recommendations?n=N                 -> 200 {items}
//   POST /api/users/{id}/feedback          {item_id, label}  -> 200 {model_summary}
//   POST /api/items                        {item document}   -> 201
//   GET  /api/items                                          -> 200 {items}
//   GET  /api/config                                         -> 200 EngineConfig
//   PUT  /api/config                       partial config    -> 200 EngineConfig
// Errors carry {"error": message} with 400/404/409/500.
class HttpService {
 public:
  explicit HttpService(Engine& engine);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Binds to `port`, or to a free port when it is 0. Returns the bound port,
  // or -1 on failure.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  bool listen_after_bind();
  void stop();
  bool is_running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace termrec
