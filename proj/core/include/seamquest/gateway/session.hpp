#pragma once

#include <cstddef>
#include <filesystem>
#include <string>

#include "seamquest/gateway/transport.hpp"
#include "seamquest/harness.hpp"

namespace seamquest::gateway {

struct SessionOptions {
  /// Wall-clock pacing. When false the loop runs in lockstep with the client:
  /// step k waits for a message stamped with tick >= k (unstamped messages
  /// count as the current tick) or for the peer to leave.
  bool real_time{true};
  /// Wall-clock seconds per simulated second when real_time; 0 disables sleeping.
  double pace{1.0};
  bool debug_rssi{false};
  std::filesystem::path run_dir;  ///< empty: default_run_dir()
  bool persist_log{true};
};

enum class SessionEnd { kDuration, kDisconnect, kTransportFailure };

std::string_view to_string(SessionEnd end);

struct SessionSummary {
  SessionEnd end{SessionEnd::kDuration};
  std::size_t steps{0};
  EventLog log;
  std::filesystem::path log_path;  ///< empty when not persisted
  std::size_t rejected_messages{0};
};

/// $SEAMQUEST_RUN_DIR, or "runs" under the working directory.
std::filesystem::path default_run_dir();

/// Plays one session of the scenario against a client. Sends scenario_info,
/// then a state frame per tick followed by one feedback frame per game event
/// (and rssi_debug when enabled). The latest command received before a tick
/// drives that tick; malformed messages are answered with an error frame.
/// Ends at the scenario duration, on disconnect or on transport failure, and
/// writes the event log to the run directory.
SessionSummary serve_session(const Scenario& scenario, Transport& transport, const SessionOptions& options);

}  // namespace seamquest::gateway
