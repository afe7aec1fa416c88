#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "seamquest/harness.hpp"
#include "seamquest/world.hpp"

namespace seamquest::gateway {

inline constexpr int kProtocolVersion = 1;

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Client -> server frame: {"v": 1, "kind": "walk"|"turn"|"raise"|"ping", ...}.
struct ClientMessage {
  enum class Kind { kWalk, kTurn, kRaise, kPing };

  Kind kind{Kind::kPing};
  double angle{0.0};   ///< walk direction or turn facing, radians
  bool raised{false};  ///< raise only
  std::optional<double> echo;       ///< client time, echoed back in state frames
  std::optional<std::size_t> tick;  ///< replay stamp: step that applies the message

  /// The move this message requests; nullopt for ping.
  std::optional<MoveCommand> command() const;
};

/// Throws ProtocolError for malformed JSON, a wrong or missing version,
/// unknown kinds, or non-finite angles.
ClientMessage parse_client_message(std::string_view frame);
std::string encode_client_message(const ClientMessage& message);

/// Server -> client frames: {"v": 1, "kind": ..., "t": seconds, "payload": {...}}.
std::string encode_scenario_info(const Scenario& scenario, bool debug);
std::string encode_state(const Simulation& sim, std::optional<double> echo);
std::string encode_feedback(const GameEvent& event);
std::string encode_rssi_debug(const TickReport& report);
std::string encode_error(double t, std::string_view message);

}  // namespace seamquest::gateway
