#pragma once

#include <condition_variable>
#include <deque>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace seamquest::gateway {

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered, framed, bidirectional text stream as seen by one session.
class Transport {
 public:
  virtual ~Transport() = default;

  /// Appends every frame received so far to `frames`. With `wait`, blocks
  /// until at least one frame is available or the peer is gone. Returns false
  /// once the peer has disconnected and nothing is left to read.
  virtual bool receive(std::vector<std::string>& frames, bool wait) = 0;

  /// Throws TransportError when the frame cannot be delivered.
  virtual void send(const std::string& frame) = 0;
};

/// Thread-safe hand-off between an I/O context that pushes inbound frames and
/// the session thread. Outbound frames go straight to the sink.
class ChannelTransport : public Transport {
 public:
  using Sink = std::function<void(const std::string&)>;

  explicit ChannelTransport(Sink sink) : sink_(std::move(sink)) {}

  void push(std::string frame);
  /// Marks the peer as gone; wakes a blocked receive().
  void close();
  bool closed() const;

  bool receive(std::vector<std::string>& frames, bool wait) override;
  void send(const std::string& frame) override;

 private:
  mutable std::mutex mutex_;
  std::condition_variable ready_;
  std::deque<std::string> inbox_;
  bool closed_{false};
  Sink sink_;
};

/// In-process transport with a fixed inbound script, for tests and replay.
/// Each receive() hands out the next batch; after the last batch the peer
/// counts as disconnected.
class ScriptedTransport : public Transport {
 public:
  explicit ScriptedTransport(std::vector<std::vector<std::string>> batches)
      : batches_(batches.begin(), batches.end()) {}

  bool receive(std::vector<std::string>& frames, bool wait) override;
  void send(const std::string& frame) override { sent_.push_back(frame); }

  const std::vector<std::string>& sent() const { return sent_; }

 private:
  std::deque<std::vector<std::string>> batches_;
  std::vector<std::string> sent_;
};

}  // namespace seamquest::gateway
