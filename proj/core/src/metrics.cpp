#include <algorithm>

#include <nlohmann/json.hpp>

#include "seamquest/harness.hpp"

namespace seamquest {

double RunMetrics::dwell_seconds(const std::string& gallery) const {
  const auto it = dwell_ticks.find(gallery);
  return it == dwell_ticks.end() ? 0.0 : static_cast<double>(it->second) * tick;
}

double RunMetrics::lost_fraction() const {
  if (estimate_ticks == 0) return 0.0;
  return static_cast<double>(lost_ticks) / static_cast<double>(estimate_ticks);
}

namespace {

using json = nlohmann::json;

template <class T>
T payload_field(const json& payload, const char* key, std::size_t line) {
  try {
    return payload.at(key).get<T>();
  } catch (const json::exception&) {
    throw LogParseError(line, std::string("bad or missing payload field '") + key + "'");
  }
}

}  // namespace

RunMetrics compute_metrics(const std::vector<std::string>& lines, const Floorplan& floorplan,
                           const Scenario& scenario) {
  RunMetrics m;
  m.tick = scenario.tick;
  m.completion_times.assign(scenario.quests.quests.size(), std::nullopt);
  for (const auto& g : floorplan.galleries) m.dwell_ticks[g.id] = 0;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t number = i + 1;
    if (lines[i].empty()) continue;
    json j;
    try {
      j = json::parse(lines[i]);
    } catch (const json::parse_error& e) {
      throw LogParseError(number, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("t") || !j["t"].is_number() || !j.contains("kind") ||
        !j["kind"].is_string() || !j.contains("payload") || !j["payload"].is_object()) {
      throw LogParseError(number, "expected {\"t\": number, \"kind\": string, \"payload\": object}");
    }
    const double t = j["t"].get<double>();
    const std::string kind = j["kind"].get<std::string>();
    const json& p = j["payload"];

    if (kind == kPoseKind) {
      const Vec2 pos{payload_field<double>(p, "x", number), payload_field<double>(p, "y", number)};
      ++m.total_ticks;
      if (const Gallery* g = floorplan.gallery_at(pos)) {
        ++m.dwell_ticks[g->id];
        if (std::find(m.visit_order.begin(), m.visit_order.end(), g->id) == m.visit_order.end()) {
          m.visit_order.push_back(g->id);
        }
      } else {
        ++m.outside_ticks;
      }
    } else if (kind == kEstimateKind) {
      ++m.estimate_ticks;
      if (payload_field<std::string>(p, "zone", number) == to_string(Zone::kLost)) ++m.lost_ticks;
    } else if (kind == to_string(EventKind::kQuestCompleted)) {
      const auto q = payload_field<std::size_t>(p, "quest", number);
      if (q >= m.completion_times.size()) m.completion_times.resize(q + 1);
      m.completion_times[q] = t;
    } else if (kind == to_string(EventKind::kFeedback)) {
      const auto trend = parse_trend(payload_field<std::string>(p, "trend", number));
      const auto zone = parse_zone(payload_field<std::string>(p, "zone", number));
      if (!trend || !zone) throw LogParseError(number, "unknown trend or zone");
      ++m.feedback_counts[{*trend, *zone}];
    }
  }
  return m;
}

std::string metrics_to_json(const RunMetrics& m) {
  nlohmann::ordered_json j;
  j["tick"] = m.tick;
  j["ticks"] = m.total_ticks;
  j["duration"] = static_cast<double>(m.total_ticks) * m.tick;
  nlohmann::ordered_json dwell = nlohmann::ordered_json::object();
  for (const auto& [gallery, ticks] : m.dwell_ticks) dwell[gallery] = static_cast<double>(ticks) * m.tick;
  j["dwell_seconds"] = dwell;
  j["outside_seconds"] = m.outside_seconds();
  j["visit_order"] = m.visit_order;
  nlohmann::ordered_json completions = nlohmann::ordered_json::array();
  for (const auto& c : m.completion_times) completions.push_back(c ? nlohmann::ordered_json(*c) : nlohmann::ordered_json(nullptr));
  j["completion_times"] = completions;
  nlohmann::ordered_json feedback = nlohmann::ordered_json::object();
  for (const auto& [key, count] : m.feedback_counts) {
    feedback[std::string(to_string(key.first)) + "/" + std::string(to_string(key.second))] = count;
  }
  j["feedback_counts"] = feedback;
  j["lost_fraction"] = m.lost_fraction();
  return j.dump(2);
}

}  // namespace seamquest
