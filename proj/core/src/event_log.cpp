#include "seamquest/event_log.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace seamquest {

using ojson = nlohmann::ordered_json;

std::string EventLog::str() const {
  std::string out;
  for (const auto& line : lines_) {
    out += line;
    out += '\n';
  }
  return out;
}

void EventLog::write(std::ostream& out) const {
  for (const auto& line : lines_) out << line << '\n';
}

void EventLog::write_file(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write event log '" + path.string() + "'");
  write(out);
  if (!out) throw std::runtime_error("failed writing event log '" + path.string() + "'");
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

double log_time(double t) { return std::round(t * 1e6) / 1e6; }

namespace {

std::string line(double t, std::string_view kind, ojson payload) {
  ojson j;
  j["t"] = log_time(t);
  j["kind"] = kind;
  j["payload"] = std::move(payload);
  return j.dump();
}

double facing_radians(Vec2 facing) { return std::atan2(facing.y, facing.x); }

}  // namespace

std::string format_command(double t, const MoveCommand& command) {
  ojson p;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, command::Walk>) {
          p["cmd"] = "walk";
          p["direction"] = c.direction;
        } else if constexpr (std::is_same_v<T, command::Turn>) {
          p["cmd"] = "turn";
          p["facing"] = c.facing;
        } else if constexpr (std::is_same_v<T, command::SetRaised>) {
          p["cmd"] = "raise";
          p["raised"] = c.raised;
        } else {
          p["cmd"] = "idle";
        }
      },
      command);
  return line(t, kCommandKind, std::move(p));
}

std::string format_pose(double t, const VisitorState& visitor) {
  ojson p;
  p["x"] = visitor.position.x;
  p["y"] = visitor.position.y;
  p["facing"] = facing_radians(visitor.facing);
  p["raised"] = visitor.phone_raised;
  return line(t, kPoseKind, std::move(p));
}

std::string format_sample(const RssiSample& sample) {
  ojson p;
  p["beacon"] = sample.beacon_id;
  p["detected"] = sample.detected();
  p["rssi"] = sample.rssi ? ojson(*sample.rssi) : ojson(nullptr);
  return line(sample.time, kRssiKind, std::move(p));
}

std::string format_estimate(double t, const ProximityEstimate& estimate) {
  ojson p;
  p["beacon"] = estimate.beacon_id;
  p["smoothed"] = estimate.smoothed_rssi ? ojson(*estimate.smoothed_rssi) : ojson(nullptr);
  p["zone"] = to_string(estimate.zone);
  p["trend"] = to_string(estimate.trend);
  return line(t, kEstimateKind, std::move(p));
}

std::string format_game_event(const GameEvent& e) {
  ojson p = ojson::object();
  if (e.quest) p["quest"] = *e.quest;
  if (!e.ghost_id.empty()) p["ghost"] = e.ghost_id;
  if (!e.museum_id.empty()) p["museum"] = e.museum_id;
  if (e.trend) p["trend"] = to_string(*e.trend);
  if (e.zone) p["zone"] = to_string(*e.zone);
  if (e.mood) p["mood"] = to_string(*e.mood);
  if (!e.text.empty()) p["text"] = e.text;
  return line(e.time, to_string(e.kind), std::move(p));
}

namespace {

struct ParsedLine {
  double t;
  std::string kind;
  ojson payload;
};

ParsedLine parse_line(const std::string& text, std::size_t number) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    throw LogParseError(number, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("t") || !j["t"].is_number() || !j.contains("kind") ||
      !j["kind"].is_string() || !j.contains("payload") || !j["payload"].is_object()) {
    throw LogParseError(number, "expected {\"t\": number, \"kind\": string, \"payload\": object}");
  }
  return {j["t"].get<double>(), j["kind"].get<std::string>(), j["payload"]};
}

template <class T>
T field(const ojson& payload, const char* key, std::size_t number) {
  try {
    return payload.at(key).get<T>();
  } catch (const ojson::exception&) {
    throw LogParseError(number, std::string("bad or missing payload field '") + key + "'");
  }
}

}  // namespace

std::vector<GameEvent> parse_game_events(const std::vector<std::string>& lines) {
  std::vector<GameEvent> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const ParsedLine pl = parse_line(lines[i], i + 1);
    const auto kind = parse_event_kind(pl.kind);
    if (!kind) continue;
    GameEvent e;
    e.time = pl.t;
    e.kind = *kind;
    const ojson& p = pl.payload;
    if (p.contains("quest")) e.quest = field<std::size_t>(p, "quest", i + 1);
    if (p.contains("ghost")) e.ghost_id = field<std::string>(p, "ghost", i + 1);
    if (p.contains("museum")) e.museum_id = field<std::string>(p, "museum", i + 1);
    if (p.contains("text")) e.text = field<std::string>(p, "text", i + 1);
    if (p.contains("trend")) {
      e.trend = parse_trend(field<std::string>(p, "trend", i + 1));
      if (!e.trend) throw LogParseError(i + 1, "unknown trend");
    }
    if (p.contains("zone")) {
      e.zone = parse_zone(field<std::string>(p, "zone", i + 1));
      if (!e.zone) throw LogParseError(i + 1, "unknown zone");
    }
    if (p.contains("mood")) {
      const auto m = field<std::string>(p, "mood", i + 1);
      for (Mood mood : {Mood::kHappy, Mood::kNeutral, Mood::kAngry}) {
        if (to_string(mood) == m) e.mood = mood;
      }
      if (!e.mood) throw LogParseError(i + 1, "unknown mood");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<LoggedCommand> parse_commands(const std::vector<std::string>& lines) {
  std::vector<LoggedCommand> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const ParsedLine pl = parse_line(lines[i], i + 1);
    if (pl.kind != kCommandKind) continue;
    const auto cmd = field<std::string>(pl.payload, "cmd", i + 1);
    MoveCommand c = command::Idle{};
    if (cmd == "walk") {
      c = command::Walk{field<double>(pl.payload, "direction", i + 1)};
    } else if (cmd == "turn") {
      c = command::Turn{field<double>(pl.payload, "facing", i + 1)};
    } else if (cmd == "raise") {
      c = command::SetRaised{field<bool>(pl.payload, "raised", i + 1)};
    } else if (cmd != "idle") {
      throw LogParseError(i + 1, "unknown command '" + cmd + "'");
    }
    out.push_back({pl.t, c});
  }
  return out;
}

}  // namespace seamquest
