#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "seamquest/game.hpp"
#include "seamquest/radio.hpp"
#include "seamquest/sensing.hpp"
#include "seamquest/world.hpp"

namespace seamquest {

/// Line-delimited JSON event log. Each line is an object
/// {"t": seconds, "kind": string, "payload": object}, UTF-8, LF-terminated.
class EventLog {
 public:
  void append(std::string line) { lines_.push_back(std::move(line)); }
  const std::vector<std::string>& lines() const { return lines_; }
  std::size_t size() const { return lines_.size(); }

  std::string str() const;
  void write(std::ostream& out) const;
  /// Writes to `path`, creating parent directories.
  void write_file(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> lines_;
};

/// Splits a serialized log back into lines (blank trailing line ignored).
std::vector<std::string> split_lines(const std::string& text);

/// Time as written to the log: rounded to the microsecond so tick multiples
/// print as 0.3 rather than 0.30000000000000004.
double log_time(double t);

std::string format_command(double t, const MoveCommand& command);
std::string format_pose(double t, const VisitorState& visitor);
std::string format_sample(const RssiSample& sample);
std::string format_estimate(double t, const ProximityEstimate& estimate);
std::string format_game_event(const GameEvent& event);

/// Kind string of a log line ("command", "pose", "rssi", "estimate" or a
/// game event name).
inline constexpr const char* kCommandKind = "command";
inline constexpr const char* kPoseKind = "pose";
inline constexpr const char* kRssiKind = "rssi";
inline constexpr const char* kEstimateKind = "estimate";

class LogParseError : public std::runtime_error {
 public:
  LogParseError(std::size_t line, const std::string& message)
      : std::runtime_error("event log line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A parsed `command` line: the step starting at `time` used `command`.
struct LoggedCommand {
  double time;
  MoveCommand command;
};

/// Game events and commands recovered from a log; other kinds are skipped.
/// Throws LogParseError on malformed lines.
std::vector<GameEvent> parse_game_events(const std::vector<std::string>& lines);
std::vector<LoggedCommand> parse_commands(const std::vector<std::string>& lines);

}  // namespace seamquest
