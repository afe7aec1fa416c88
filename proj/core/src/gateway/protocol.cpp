#include "seamquest/gateway/protocol.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace seamquest::gateway {

using ojson = nlohmann::ordered_json;

std::optional<MoveCommand> ClientMessage::command() const {
  switch (kind) {
    case Kind::kWalk: return command::Walk{angle};
    case Kind::kTurn: return command::Turn{angle};
    case Kind::kRaise: return command::SetRaised{raised};
    case Kind::kPing: return std::nullopt;
  }
  return std::nullopt;
}

namespace {

double finite_angle(const ojson& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ProtocolError(std::string("field '") + key + "' must be a number");
  }
  const double v = j[key].get<double>();
  if (!std::isfinite(v)) throw ProtocolError(std::string("field '") + key + "' must be finite");
  return v;
}

}  // namespace

ClientMessage parse_client_message(std::string_view frame) {
  ojson j;
  try {
    j = ojson::parse(frame.begin(), frame.end());
  } catch (const ojson::parse_error&) {
    throw ProtocolError("malformed JSON");
  }
  if (!j.is_object()) throw ProtocolError("message must be a JSON object");
  if (!j.contains("v") || !j["v"].is_number_integer() || j["v"].get<int>() != kProtocolVersion) {
    throw ProtocolError("unsupported protocol version (expected \"v\": 1)");
  }
  if (!j.contains("kind") || !j["kind"].is_string()) throw ProtocolError("missing 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  ClientMessage m;
  if (kind == "walk") {
    m.kind = ClientMessage::Kind::kWalk;
    m.angle = finite_angle(j, "direction");
  } else if (kind == "turn") {
    m.kind = ClientMessage::Kind::kTurn;
    m.angle = finite_angle(j, "facing");
  } else if (kind == "raise") {
    m.kind = ClientMessage::Kind::kRaise;
    if (!j.contains("raised") || !j["raised"].is_boolean()) throw ProtocolError("field 'raised' must be a boolean");
    m.raised = j["raised"].get<bool>();
  } else if (kind == "ping") {
    m.kind = ClientMessage::Kind::kPing;
  } else {
    throw ProtocolError("unknown message kind '" + kind + "'");
  }
  if (j.contains("echo")) {
    if (!j["echo"].is_number()) throw ProtocolError("field 'echo' must be a number");
    m.echo = j["echo"].get<double>();
  }
  if (j.contains("tick")) {
    if (!j["tick"].is_number_unsigned()) throw ProtocolError("field 'tick' must be a non-negative integer");
    m.tick = j["tick"].get<std::size_t>();
  }
  return m;
}

std::string encode_client_message(const ClientMessage& m) {
  ojson j;
  j["v"] = kProtocolVersion;
  switch (m.kind) {
    case ClientMessage::Kind::kWalk:
      j["kind"] = "walk";
      j["direction"] = m.angle;
      break;
    case ClientMessage::Kind::kTurn:
      j["kind"] = "turn";
      j["facing"] = m.angle;
      break;
    case ClientMessage::Kind::kRaise:
      j["kind"] = "raise";
      j["raised"] = m.raised;
      break;
    case ClientMessage::Kind::kPing:
      j["kind"] = "ping";
      break;
  }
  if (m.echo) j["echo"] = *m.echo;
  if (m.tick) j["tick"] = *m.tick;
  return j.dump();
}

namespace {

std::string frame(std::string_view kind, double t, ojson payload) {
  ojson j;
  j["v"] = kProtocolVersion;
  j["kind"] = kind;
  j["t"] = log_time(t);
  j["payload"] = std::move(payload);
  return j.dump();
}

ojson point(Vec2 p) { return ojson::array({p.x, p.y}); }

}  // namespace

std::string encode_scenario_info(const Scenario& s, bool debug) {
  ojson p;
  p["name"] = s.name;
  p["tick"] = s.tick;
  p["duration"] = s.duration;
  p["debug"] = debug;
  p["bounds"] = {{"min", point(s.floorplan.bounds.min)}, {"max", point(s.floorplan.bounds.max)}};
  ojson walls = ojson::array();
  for (const auto& w : s.floorplan.walls) {
    walls.push_back({{"id", w.id}, {"from", point(w.segment.a)}, {"to", point(w.segment.b)},
                     {"attenuation_db", w.attenuation_db}});
  }
  p["walls"] = walls;
  ojson obstacles = ojson::array();
  for (const auto& o : s.floorplan.obstacles) {
    ojson verts = ojson::array();
    for (Vec2 v : o.vertices) verts.push_back(point(v));
    obstacles.push_back({{"id", o.id}, {"label", o.label}, {"vertices", verts},
                         {"attenuation_db", o.attenuation_db}});
  }
  p["obstacles"] = obstacles;
  ojson galleries = ojson::array();
  for (const auto& g : s.floorplan.galleries) {
    galleries.push_back({{"id", g.id}, {"min", point(g.region.min)}, {"max", point(g.region.max)}});
  }
  p["galleries"] = galleries;
  ojson artifacts = ojson::array();
  for (const auto& a : s.floorplan.artifacts) {
    artifacts.push_back({{"id", a.id}, {"position", point(a.position)}, {"gallery", a.gallery_id}});
  }
  p["artifacts"] = artifacts;
  ojson beacons = ojson::array();
  for (const auto& b : s.beacons) {
    beacons.push_back({{"id", b.id}, {"artifact", b.artifact_id}, {"position", point(b.position)},
                       {"enabled", b.enabled}});
  }
  p["beacons"] = beacons;
  ojson quests = ojson::array();
  for (const auto& q : s.quests.quests) {
    quests.push_back({{"ghost", q.ghost_id}, {"artifact", q.artifact_id}, {"beacon", q.beacon_id}});
  }
  p["quests"] = quests;
  p["final_ghost"] = {{"ghost", s.quests.final_ghost.ghost_id}, {"museum", s.quests.final_ghost.museum_id}};
  p["sensing"] = {{"near_dbm", s.sensing.near_dbm}, {"mid_dbm", s.sensing.mid_dbm},
                  {"arrival_dbm", s.sensing.arrival_dbm}};
  return frame("scenario_info", 0.0, std::move(p));
}

std::string encode_state(const Simulation& sim, std::optional<double> echo) {
  const WorldState& w = sim.world();
  const GameState& g = sim.game();
  const QuestScript& script = sim.scenario().quests;
  ojson p;
  p["tick"] = sim.steps();
  p["visitor"] = {{"x", w.visitor.position.x},
                  {"y", w.visitor.position.y},
                  {"facing", std::atan2(w.visitor.facing.y, w.visitor.facing.x)},
                  {"raised", w.visitor.phone_raised}};
  ojson crowd = ojson::array();
  for (const auto& a : w.crowd) {
    const Vec2 c = a.position_at(w.time);
    crowd.push_back({{"id", a.id}, {"x", c.x}, {"y", c.y}, {"r", a.radius}});
  }
  p["crowd"] = crowd;
  p["phase"] = to_string(g.phase);
  const bool has_quest = g.quest < script.quests.size() && g.phase != Phase::kIdle;
  p["quest"] = has_quest ? ojson(g.quest) : ojson(nullptr);
  if (has_quest) {
    p["ghost"] = script.quests[g.quest].ghost_id;
  } else if (g.phase == Phase::kFinalGhost || g.phase == Phase::kCompleted) {
    p["ghost"] = script.final_ghost.ghost_id;
  } else {
    p["ghost"] = nullptr;
  }
  p["echo"] = echo ? ojson(*echo) : ojson(nullptr);
  return frame("state", sim.time(), std::move(p));
}

std::string encode_feedback(const GameEvent& e) {
  ojson p;
  p["event"] = to_string(e.kind);
  if (e.quest) p["quest"] = *e.quest;
  if (!e.ghost_id.empty()) p["ghost"] = e.ghost_id;
  if (!e.museum_id.empty()) p["museum"] = e.museum_id;
  if (e.trend) p["trend"] = to_string(*e.trend);
  if (e.zone) p["zone"] = to_string(*e.zone);
  if (e.mood) p["mood"] = to_string(*e.mood);
  if (!e.text.empty()) p["text"] = e.text;
  return frame("feedback", e.time, std::move(p));
}

std::string encode_rssi_debug(const TickReport& report) {
  ojson beacons = ojson::array();
  for (std::size_t i = 0; i < report.estimates.size(); ++i) {
    const ProximityEstimate& e = report.estimates[i];
    ojson b;
    b["id"] = e.beacon_id;
    b["smoothed"] = e.smoothed_rssi ? ojson(*e.smoothed_rssi) : ojson(nullptr);
    b["zone"] = to_string(e.zone);
    b["trend"] = to_string(e.trend);
    if (i < report.samples.size()) {
      b["rssi"] = report.samples[i].rssi ? ojson(*report.samples[i].rssi) : ojson(nullptr);
    }
    beacons.push_back(std::move(b));
  }
  return frame("rssi_debug", report.time, {{"beacons", beacons}});
}

std::string encode_error(double t, std::string_view message) {
  return frame("error", t, {{"message", message}});
}

}  // namespace seamquest::gateway
