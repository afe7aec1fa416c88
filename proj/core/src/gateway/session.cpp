#include "seamquest/gateway/session.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

#include "seamquest/gateway/protocol.hpp"

namespace seamquest::gateway {

std::string_view to_string(SessionEnd end) {
  switch (end) {
    case SessionEnd::kDuration: return "duration";
    case SessionEnd::kDisconnect: return "disconnect";
    case SessionEnd::kTransportFailure: return "transport_failure";
  }
  return "?";
}

std::filesystem::path default_run_dir() {
  if (const char* dir = std::getenv("SEAMQUEST_RUN_DIR"); dir != nullptr && *dir != '\0') return dir;
  return "runs";
}

namespace {

struct Pending {
  std::size_t tick;
  ClientMessage message;
};

std::filesystem::path session_log_path(const std::filesystem::path& dir) {
  static std::atomic<unsigned> counter{0};
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::system_clock::now().time_since_epoch())
                      .count();
  for (;;) {
    auto p = dir / ("session-" + std::to_string(ms) + "-" + std::to_string(counter++) + ".jsonl");
    if (!std::filesystem::exists(p)) return p;
  }
}

class Session {
 public:
  Session(const Scenario& scenario, Transport& transport, const SessionOptions& options)
      : sim_(scenario), transport_(transport), options_(options) {}

  SessionSummary run() {
    try {
      loop();
    } catch (const TransportError&) {
      summary_.end = SessionEnd::kTransportFailure;
    }
    summary_.steps = sim_.steps();
    summary_.log = sim_.log();
    if (options_.persist_log) {
      const auto dir = options_.run_dir.empty() ? default_run_dir() : options_.run_dir;
      summary_.log_path = session_log_path(dir);
      summary_.log.write_file(summary_.log_path);
    }
    return summary_;
  }

 private:
  void loop() {
    transport_.send(encode_scenario_info(sim_.scenario(), options_.debug_rssi));
    publish(sim_.start());

    const auto origin = std::chrono::steady_clock::now();
    const double tick = sim_.scenario().tick;
    while (!sim_.finished()) {
      const std::size_t k = sim_.steps() + 1;
      if (options_.real_time) {
        if (options_.pace > 0.0) {
          std::this_thread::sleep_until(
              origin + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                           std::chrono::duration<double>(static_cast<double>(k) * tick * options_.pace)));
        }
        if (open_) pull(k, false);
        if (!open_) {
          summary_.end = SessionEnd::kDisconnect;
          return;
        }
      } else {
        while (open_ && !has_stamp_at_least(k)) pull(k, true);
        if (!open_ && pending_.empty()) {
          summary_.end = SessionEnd::kDisconnect;
          return;
        }
      }
      publish(sim_.step(take_command(k)));
    }
    summary_.end = SessionEnd::kDuration;
  }

  void pull(std::size_t k, bool wait) {
    std::vector<std::string> frames;
    open_ = transport_.receive(frames, wait);
    for (const std::string& f : frames) {
      try {
        ClientMessage m = parse_client_message(f);
        std::size_t stamp = k;
        if (!options_.real_time && m.tick && *m.tick > k) stamp = *m.tick;
        pending_.push_back({stamp, std::move(m)});
      } catch (const ProtocolError& e) {
        ++summary_.rejected_messages;
        transport_.send(encode_error(sim_.time(), e.what()));
      }
    }
  }

  bool has_stamp_at_least(std::size_t k) const {
    for (const auto& p : pending_) {
      if (p.tick >= k) return true;
    }
    return false;
  }

  // Consumes every message due at tick k; the last command among them wins.
  MoveCommand take_command(std::size_t k) {
    MoveCommand command = command::Idle{};
    std::vector<Pending> later;
    for (auto& p : pending_) {
      if (p.tick > k) {
        later.push_back(std::move(p));
        continue;
      }
      if (auto c = p.message.command()) command = *c;
      if (p.message.echo) echo_ = p.message.echo;
    }
    pending_ = std::move(later);
    return command;
  }

  void publish(const TickReport& report) {
    transport_.send(encode_state(sim_, echo_));
    for (const GameEvent& e : report.events) transport_.send(encode_feedback(e));
    if (options_.debug_rssi) transport_.send(encode_rssi_debug(report));
  }

  Simulation sim_;
  Transport& transport_;
  const SessionOptions& options_;
  std::vector<Pending> pending_;
  std::optional<double> echo_;
  bool open_{true};
  SessionSummary summary_;
};

}  // namespace

SessionSummary serve_session(const Scenario& scenario, Transport& transport, const SessionOptions& options) {
  return Session(scenario, transport, options).run();
}

}  // namespace seamquest::gateway
