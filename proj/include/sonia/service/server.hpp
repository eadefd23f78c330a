#pragma once

#include <memory>
#include <string>

#include "sonia/scene/compiled_scene.hpp"

namespace sonia::service {

struct ServerOptions {
  std::string host = "127.0.0.1";
  unsigned short port = 8787;  // 0 picks a free port
  unsigned threads = 1;
};

/// HTTP + WebSocket front end for one compiled scene.
///
///   GET /health       -> "ok"
///   GET /scene        -> scene bundle JSON
///   GET /meshes/{id}  -> mesh payload JSON
///   /session          -> WebSocket; newline-delimited protocol messages,
///                        one reply frame per message, in order
///
/// Each WebSocket connection owns an independent session; sessions share only
/// the immutable scene.
class Server {
 public:
  Server(std::shared_ptr<const scene::CompiledScene> scene, ServerOptions options = {});
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds and serves on background threads. Throws std::runtime_error if
  /// the address cannot be bound.
  void start();
  /// Binds and serves on the calling thread until stop() is called.
  void run();
  void stop();

  /// The bound port; valid after start().
  unsigned short port() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sonia::service
