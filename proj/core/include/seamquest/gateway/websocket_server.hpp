#pragma once

#include <functional>
#include <memory>
#include <string>

#include "seamquest/gateway/transport.hpp"

namespace seamquest::gateway {

/// Accepts WebSocket connections and gives each one its own session thread.
/// Network I/O runs on the caller of run(); each connection reads and writes
/// through a strand and hands frames to its session via a ChannelTransport.
class WebSocketServer {
 public:
  using SessionHandler = std::function<void(Transport&)>;

  /// Binds immediately; port 0 picks an ephemeral port (see port()).
  WebSocketServer(const std::string& address, unsigned short port, SessionHandler handler);
  ~WebSocketServer();

  WebSocketServer(const WebSocketServer&) = delete;
  WebSocketServer& operator=(const WebSocketServer&) = delete;

  unsigned short port() const;

  /// Serves until stop(). With `max_sessions` > 0, stops accepting after that
  /// many connections and returns once they have all finished.
  void run(std::size_t max_sessions = 0);
  /// Thread-safe. Closes the listener and disconnects every client.
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace seamquest::gateway
