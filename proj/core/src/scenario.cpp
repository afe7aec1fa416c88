#include "seamquest/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace seamquest {

using nlohmann::json;

std::string_view to_string(IssueCategory category) {
  switch (category) {
    case IssueCategory::kSchema: return "schema";
    case IssueCategory::kReference: return "reference";
    case IssueCategory::kGeometry: return "geometry";
    case IssueCategory::kValue: return "value";
  }
  return "schema";
}

namespace {

std::string describe(const std::vector<ValidationIssue>& issues) {
  std::ostringstream out;
  out << "invalid scenario (" << issues.size() << (issues.size() == 1 ? " issue)" : " issues)");
  for (const auto& i : issues) {
    out << "\n  " << to_string(i.category) << " error at " << (i.path.empty() ? "<root>" : i.path)
        << ": " << i.message;
  }
  return out.str();
}

using Issues = std::vector<ValidationIssue>;

/// Cursor over one JSON value that records schema problems with their path
/// instead of throwing, so one pass reports everything.
class Node {
 public:
  Node(const json& value, std::string path, Issues& issues)
      : value_(value), path_(std::move(path)), issues_(issues) {}

  const std::string& path() const { return path_; }
  const json& raw() const { return value_; }

  std::string at(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }
  std::string at(std::size_t index) const { return path_ + "[" + std::to_string(index) + "]"; }

  void error(IssueCategory c, std::string path, std::string message) const {
    issues_.push_back({c, std::move(path), std::move(message)});
  }

  bool expect_object(std::initializer_list<std::string_view> allowed) const {
    if (!value_.is_object()) {
      error(IssueCategory::kSchema, path_, "expected an object");
      return false;
    }
    for (const auto& [key, _] : value_.items()) {
      bool known = false;
      for (auto a : allowed) known = known || a == key;
      if (!known) error(IssueCategory::kSchema, at(key), "unknown field");
    }
    return true;
  }

  std::optional<Node> child(std::string_view key, bool required) const {
    if (value_.is_object()) {
      auto it = value_.find(std::string(key));
      if (it != value_.end()) return Node(*it, at(key), issues_);
    }
    if (required) error(IssueCategory::kSchema, at(key), "missing required field");
    return std::nullopt;
  }

  std::vector<Node> elements(std::string_view key, bool required) const {
    std::vector<Node> out;
    auto c = child(key, required);
    if (!c) return out;
    if (!c->value_.is_array()) {
      error(IssueCategory::kSchema, c->path_, "expected an array");
      return out;
    }
    for (std::size_t i = 0; i < c->value_.size(); ++i) {
      out.emplace_back(c->value_[i], c->at(i), issues_);
    }
    return out;
  }

  double number(std::string_view key, std::optional<double> fallback = std::nullopt) const {
    auto c = child(key, !fallback);
    if (!c) return fallback.value_or(0.0);
    return c->as_number(fallback.value_or(0.0));
  }

  double as_number(double fallback = 0.0) const {
    if (!value_.is_number()) {
      error(IssueCategory::kSchema, path_, "expected a number");
      return fallback;
    }
    const double v = value_.get<double>();
    if (!std::isfinite(v)) {
      error(IssueCategory::kValue, path_, "must be finite");
      return fallback;
    }
    return v;
  }

  std::optional<double> optional_number(std::string_view key) const {
    auto c = child(key, false);
    if (!c) return std::nullopt;
    return c->as_number();
  }

  std::string string(std::string_view key, std::optional<std::string> fallback = std::nullopt) const {
    auto c = child(key, !fallback);
    if (!c) return fallback.value_or("");
    if (!c->value_.is_string()) {
      error(IssueCategory::kSchema, c->path_, "expected a string");
      return fallback.value_or("");
    }
    return c->value_.get<std::string>();
  }

  std::string id(std::string_view key = "id") const {
    std::string s = string(key);
    if (s.empty() && value_.is_object() && value_.contains(std::string(key))) {
      error(IssueCategory::kValue, at(key), "must not be empty");
    }
    return s;
  }

  bool boolean(std::string_view key, std::optional<bool> fallback = std::nullopt) const {
    auto c = child(key, !fallback);
    if (!c) return fallback.value_or(false);
    if (!c->value_.is_boolean()) {
      error(IssueCategory::kSchema, c->path_, "expected a boolean");
      return fallback.value_or(false);
    }
    return c->value_.get<bool>();
  }

  Vec2 as_vec2() const {
    if (!value_.is_array() || value_.size() != 2 || !value_[0].is_number() ||
        !value_[1].is_number()) {
      error(IssueCategory::kSchema, path_, "expected a [x, y] pair of numbers");
      return {};
    }
    const Vec2 v{value_[0].get<double>(), value_[1].get<double>()};
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) error(IssueCategory::kValue, path_, "must be finite");
    return v;
  }

  Vec2 vec2(std::string_view key) const {
    auto c = child(key, true);
    return c ? c->as_vec2() : Vec2{};
  }

 private:
  const json& value_;
  std::string path_;
  Issues& issues_;
};

class Loader {
 public:
  explicit Loader(const json& doc) : root_(doc, "", issues_) {}

  Scenario load() {
    Scenario s;
    if (!root_.expect_object({"name", "seed", "duration", "tick", "floorplan", "beacons", "radio",
                              "sensing", "quests", "visitor", "visitor_script", "crowd"})) {
      throw ScenarioError(std::move(issues_));
    }
    s.name = root_.string("name", std::string("unnamed"));
    s.seed = read_seed();
    s.duration = root_.number("duration");
    s.tick = root_.number("tick", 0.1);
    if (auto fp = root_.child("floorplan", true)) s.floorplan = read_floorplan(*fp);
    s.beacons = read_beacons(s.floorplan);
    if (auto r = root_.child("radio", false)) s.radio = read_radio(*r);
    if (auto r = root_.child("sensing", false)) s.sensing = read_sensing(*r);
    if (auto q = root_.child("quests", true)) s.quests = read_quests(*q);
    if (auto v = root_.child("visitor", true)) s.visitor = read_visitor(*v);
    s.visitor_script = read_visitor_script();
    s.crowd = read_crowd();
    validate(s);
    if (!issues_.empty()) throw ScenarioError(std::move(issues_));
    return s;
  }

 private:
  void error(IssueCategory c, std::string path, std::string message) {
    issues_.push_back({c, std::move(path), std::move(message)});
  }

  std::uint64_t read_seed() {
    auto c = root_.child("seed", true);
    if (!c) return 0;
    if (!c->raw().is_number_integer() || (c->raw().is_number_integer() && !c->raw().is_number_unsigned() &&
                                          c->raw().get<std::int64_t>() < 0)) {
      error(IssueCategory::kSchema, "seed", "expected a non-negative 64-bit integer");
      return 0;
    }
    return c->raw().get<std::uint64_t>();
  }

  Floorplan read_floorplan(const Node& n) {
    Floorplan fp;
    if (!n.expect_object({"bounds", "walls", "obstacles", "galleries", "artifacts"})) return fp;
    if (auto b = n.child("bounds", true); b && b->expect_object({"min", "max"})) {
      fp.bounds = {b->vec2("min"), b->vec2("max")};
      if (!(fp.bounds.width() > 0 && fp.bounds.height() > 0)) {
        error(IssueCategory::kGeometry, b->path(), "bounds must have positive width and height");
      }
    }
    for (const Node& w : n.elements("walls", false)) {
      if (!w.expect_object({"id", "from", "to", "attenuation_db"})) continue;
      Wall wall{w.id(), {w.vec2("from"), w.vec2("to")}, w.number("attenuation_db")};
      if (wall.segment.a == wall.segment.b) error(IssueCategory::kGeometry, w.path(), "wall has zero length");
      fp.walls.push_back(std::move(wall));
    }
    for (const Node& o : n.elements("obstacles", false)) {
      if (!o.expect_object({"id", "label", "vertices", "attenuation_db"})) continue;
      Obstacle obs{o.id(), o.string("label", std::string("obstacle")), {}, o.number("attenuation_db")};
      for (const Node& v : o.elements("vertices", true)) obs.vertices.push_back(v.as_vec2());
      if (obs.vertices.size() < 3) {
        error(IssueCategory::kGeometry, o.at("vertices"),
              "polygon needs at least 3 vertices, got " + std::to_string(obs.vertices.size()));
      } else if (!is_convex(obs.vertices)) {
        error(IssueCategory::kGeometry, o.at("vertices"), "polygon must be convex and non-degenerate");
      }
      fp.obstacles.push_back(std::move(obs));
    }
    for (const Node& g : n.elements("galleries", false)) {
      if (!g.expect_object({"id", "min", "max"})) continue;
      Gallery gallery{g.id(), {g.vec2("min"), g.vec2("max")}};
      if (!(gallery.region.width() > 0 && gallery.region.height() > 0)) {
        error(IssueCategory::kGeometry, g.path(), "gallery must have positive width and height");
      }
      fp.galleries.push_back(std::move(gallery));
    }
    for (const Node& a : n.elements("artifacts", false)) {
      if (!a.expect_object({"id", "position", "gallery"})) continue;
      fp.artifacts.push_back({a.id(), a.vec2("position"), a.string("gallery")});
    }
    return fp;
  }

  std::vector<Beacon> read_beacons(const Floorplan& fp) {
    std::vector<Beacon> out;
    for (const Node& b : root_.elements("beacons", true)) {
      if (!b.expect_object({"id", "artifact", "position", "enabled"})) continue;
      Beacon beacon{b.id(), b.string("artifact"), {}, b.boolean("enabled", true)};
      if (auto p = b.child("position", false)) {
        beacon.position = p->as_vec2();
      } else if (const Artifact* a = fp.find_artifact(beacon.artifact_id)) {
        beacon.position = a->position;
      }
      out.push_back(std::move(beacon));
    }
    return out;
  }

  RadioParams read_radio(const Node& n) {
    RadioParams p;
    if (!n.expect_object({"p_ref", "n_pl", "sigma_slow", "sigma_fast", "body_max", "crowd_per_agent",
                          "raise_factor", "detect_floor", "shadow_tau"})) {
      return p;
    }
    p.p_ref = n.number("p_ref", p.p_ref);
    p.n_pl = n.number("n_pl", p.n_pl);
    p.sigma_slow = n.number("sigma_slow", p.sigma_slow);
    p.sigma_fast = n.number("sigma_fast", p.sigma_fast);
    p.body_max = n.number("body_max", p.body_max);
    p.crowd_per_agent = n.number("crowd_per_agent", p.crowd_per_agent);
    p.raise_factor = n.number("raise_factor", p.raise_factor);
    p.detect_floor = n.number("detect_floor", p.detect_floor);
    p.shadow_tau = n.number("shadow_tau", p.shadow_tau);
    return p;
  }

  SmoothingConfig read_sensing(const Node& n) {
    SmoothingConfig c;
    if (!n.expect_object({"method", "half_life", "window", "trend_gap", "trend_epsilon", "lost_timeout",
                          "near_dbm", "mid_dbm", "arrival_dbm", "arrival_hold"})) {
      return c;
    }
    const std::string method = n.string("method", std::string(to_string(c.method)));
    if (auto m = parse_smoothing_method(method)) {
      c.method = *m;
    } else {
      error(IssueCategory::kSchema, n.at("method"), "expected one of ewma, median, raw");
    }
    c.half_life = n.number("half_life", c.half_life);
    c.window = n.number("window", c.window);
    c.trend_gap = n.number("trend_gap", c.trend_gap);
    c.trend_epsilon = n.number("trend_epsilon", c.trend_epsilon);
    c.lost_timeout = n.number("lost_timeout", c.lost_timeout);
    c.near_dbm = n.number("near_dbm", c.near_dbm);
    c.mid_dbm = n.number("mid_dbm", c.mid_dbm);
    c.arrival_dbm = n.number("arrival_dbm", c.arrival_dbm);
    c.arrival_hold = n.number("arrival_hold", c.arrival_hold);
    return c;
  }

  QuestScript read_quests(const Node& n) {
    QuestScript q;
    if (!n.expect_object({"encounter_delay", "encounter_jitter", "feedback_period", "ghosts",
                          "final_ghost", "messages", "achievement", "share"})) {
      return q;
    }
    q.encounter_delay = n.number("encounter_delay", q.encounter_delay);
    q.encounter_jitter = n.number("encounter_jitter", q.encounter_jitter);
    q.feedback_period = n.number("feedback_period", q.feedback_period);
    q.achievement_text = n.string("achievement", q.achievement_text);
    q.share_text = n.string("share", q.share_text);
    for (const Node& g : n.elements("ghosts", true)) {
      if (!g.expect_object({"ghost", "artifact", "intro"})) continue;
      q.quests.push_back({g.id("ghost"), g.string("artifact"), "",
                          g.string("intro", std::string("Help! I'm lost and need to get back to {artifact}."))});
    }
    if (auto f = n.child("final_ghost", true); f && f->expect_object({"ghost", "museum", "text"})) {
      q.final_ghost = {f->id("ghost"), f->id("museum"),
                       f->string("text", std::string("I'm from {museum} and I can't find my way home. Will you visit?"))};
    }
    if (auto m = n.child("messages", false); m && m->expect_object({"warmer", "colder", "steady", "unknown",
                                                                     "recovery"})) {
      q.messages.recovery = m->string("recovery", q.messages.recovery);
      for (Trend trend : kAllTrends) {
        auto row = m->child(to_string(trend), false);
        if (!row || !row->expect_object({"near", "mid", "far", "lost"})) continue;
        for (Zone zone : kAllZones) {
          q.messages.at(trend, zone) = row->string(to_string(zone), q.messages.at(trend, zone));
        }
      }
    }
    return q;
  }

  VisitorState read_visitor(const Node& n) {
    VisitorState v;
    if (!n.expect_object({"position", "facing", "speed", "phone_raised"})) return v;
    v.position = n.vec2("position");
    v.facing = heading(n.number("facing", 0.0));
    v.speed = n.number("speed", v.speed);
    v.phone_raised = n.boolean("phone_raised", false);
    return v;
  }

  std::vector<ScriptedCommand> read_visitor_script() {
    std::vector<ScriptedCommand> out;
    for (const Node& c : root_.elements("visitor_script", false)) {
      if (!c.expect_object({"t", "cmd", "direction", "facing", "raised", "duration"})) continue;
      ScriptedCommand sc{c.number("t"), command::Idle{}, c.optional_number("duration")};
      const std::string kind = c.string("cmd");
      if (kind == "walk") {
        sc.command = command::Walk{c.number("direction")};
      } else if (kind == "turn") {
        sc.command = command::Turn{c.number("facing")};
      } else if (kind == "raise") {
        sc.command = command::SetRaised{c.boolean("raised")};
      } else if (kind == "idle") {
        sc.command = command::Idle{};
      } else {
        error(IssueCategory::kSchema, c.at("cmd"), "expected one of walk, turn, raise, idle");
      }
      if (sc.time < 0) error(IssueCategory::kValue, c.at("t"), "must be >= 0");
      if (sc.duration && !(*sc.duration > 0)) error(IssueCategory::kValue, c.at("duration"), "must be > 0");
      out.push_back(sc);
    }
    return out;
  }

  std::vector<CrowdAgent> read_crowd() {
    std::vector<CrowdAgent> out;
    for (const Node& a : root_.elements("crowd", false)) {
      if (!a.expect_object({"id", "radius", "waypoints"})) continue;
      CrowdAgent agent{a.id(), {}, a.number("radius", 0.3)};
      const auto wps = a.elements("waypoints", true);
      if (wps.empty()) error(IssueCategory::kValue, a.at("waypoints"), "needs at least one waypoint");
      for (const Node& w : wps) {
        if (!w.expect_object({"t", "position"})) continue;
        agent.waypoints.push_back({w.number("t"), w.vec2("position")});
      }
      out.push_back(std::move(agent));
    }
    return out;
  }

  template <class Range, class IdOf>
  void unique_ids(const Range& items, const std::string& path, IdOf id_of) {
    std::set<std::string> seen;
    std::size_t i = 0;
    for (const auto& item : items) {
      const std::string& id = id_of(item);
      if (!seen.insert(id).second) {
        error(IssueCategory::kReference, path + "[" + std::to_string(i) + "]", "duplicate id '" + id + "'");
      }
      ++i;
    }
  }

  void validate(Scenario& s) {
    const Floorplan& fp = s.floorplan;
    const Rect& bounds = fp.bounds;
    auto in_bounds = [&](Vec2 p, const std::string& path) {
      if (!bounds.contains(p)) error(IssueCategory::kGeometry, path, "outside floorplan bounds");
    };

    if (!(s.tick > 0)) error(IssueCategory::kValue, "tick", "must be > 0");
    if (!(s.duration >= s.tick)) error(IssueCategory::kValue, "duration", "must be >= tick");
    if (s.tick > 0 && s.duration >= s.tick) {
      const double ticks = std::round(s.duration / s.tick);
      if (std::abs(ticks * s.tick - s.duration) > 1e-9 * std::max(1.0, s.duration)) {
        error(IssueCategory::kValue, "duration", "must be a whole number of ticks");
      }
    }

    unique_ids(fp.walls, "floorplan.walls", [](const Wall& w) -> const std::string& { return w.id; });
    unique_ids(fp.obstacles, "floorplan.obstacles", [](const Obstacle& o) -> const std::string& { return o.id; });
    unique_ids(fp.galleries, "floorplan.galleries", [](const Gallery& g) -> const std::string& { return g.id; });
    unique_ids(fp.artifacts, "floorplan.artifacts", [](const Artifact& a) -> const std::string& { return a.id; });
    unique_ids(s.beacons, "beacons", [](const Beacon& b) -> const std::string& { return b.id; });
    unique_ids(s.crowd, "crowd", [](const CrowdAgent& a) -> const std::string& { return a.id; });

    for (std::size_t i = 0; i < fp.walls.size(); ++i) {
      const std::string path = "floorplan.walls[" + std::to_string(i) + "]";
      in_bounds(fp.walls[i].segment.a, path + ".from");
      in_bounds(fp.walls[i].segment.b, path + ".to");
      if (fp.walls[i].attenuation_db < 0) error(IssueCategory::kValue, path + ".attenuation_db", "must be >= 0");
    }
    for (std::size_t i = 0; i < fp.obstacles.size(); ++i) {
      const std::string path = "floorplan.obstacles[" + std::to_string(i) + "]";
      for (std::size_t k = 0; k < fp.obstacles[i].vertices.size(); ++k) {
        in_bounds(fp.obstacles[i].vertices[k], path + ".vertices[" + std::to_string(k) + "]");
      }
      if (fp.obstacles[i].attenuation_db < 0) {
        error(IssueCategory::kValue, path + ".attenuation_db", "must be >= 0");
      }
    }
    for (std::size_t i = 0; i < fp.galleries.size(); ++i) {
      if (!bounds.contains(fp.galleries[i].region)) {
        error(IssueCategory::kGeometry, "floorplan.galleries[" + std::to_string(i) + "]",
              "gallery region outside floorplan bounds");
      }
    }
    for (std::size_t i = 0; i < fp.artifacts.size(); ++i) {
      const Artifact& a = fp.artifacts[i];
      const std::string path = "floorplan.artifacts[" + std::to_string(i) + "]";
      in_bounds(a.position, path + ".position");
      bool gallery_found = false;
      for (const auto& g : fp.galleries) gallery_found = gallery_found || g.id == a.gallery_id;
      if (!gallery_found) {
        error(IssueCategory::kReference, path + ".gallery",
              "artifact '" + a.id + "' references missing gallery '" + a.gallery_id + "'");
      }
    }
    for (std::size_t i = 0; i < s.beacons.size(); ++i) {
      const Beacon& b = s.beacons[i];
      const std::string path = "beacons[" + std::to_string(i) + "]";
      if (!fp.find_artifact(b.artifact_id)) {
        error(IssueCategory::kReference, path + ".artifact",
              "beacon '" + b.id + "' references missing artifact '" + b.artifact_id + "'");
        continue;
      }
      in_bounds(b.position, path + ".position");
    }

    for (const auto& v : s.radio.violations()) error(IssueCategory::kValue, "radio", v);
    for (const auto& v : s.sensing.violations(s.radio.detect_floor)) error(IssueCategory::kValue, "sensing", v);

    for (std::size_t i = 0; i < s.quests.quests.size(); ++i) {
      QuestEntry& q = s.quests.quests[i];
      const std::string path = "quests.ghosts[" + std::to_string(i) + "]";
      if (!fp.find_artifact(q.artifact_id)) {
        error(IssueCategory::kReference, path + ".artifact",
              "ghost '" + q.ghost_id + "' references missing artifact '" + q.artifact_id + "'");
        continue;
      }
      for (const auto& b : s.beacons) {
        if (b.enabled && b.artifact_id == q.artifact_id) {
          q.beacon_id = b.id;
          break;
        }
      }
      if (q.beacon_id.empty()) {
        error(IssueCategory::kReference, path + ".artifact",
              "home artifact '" + q.artifact_id + "' has no enabled beacon");
      }
    }
    for (const auto& v : s.quests.violations()) error(IssueCategory::kValue, "quests", v);

    in_bounds(s.visitor.position, "visitor.position");
    if (fp.inside_obstacle(s.visitor.position)) {
      error(IssueCategory::kGeometry, "visitor.position", "inside an obstacle");
    }
    if (!(s.visitor.speed >= 0)) error(IssueCategory::kValue, "visitor.speed", "must be >= 0");

    for (std::size_t i = 0; i < s.crowd.size(); ++i) {
      const CrowdAgent& a = s.crowd[i];
      const std::string path = "crowd[" + std::to_string(i) + "]";
      if (!(a.radius > 0)) error(IssueCategory::kValue, path + ".radius", "must be > 0");
      for (std::size_t k = 0; k < a.waypoints.size(); ++k) {
        const std::string wp = path + ".waypoints[" + std::to_string(k) + "]";
        in_bounds(a.waypoints[k].position, wp + ".position");
        if (k > 0 && !(a.waypoints[k].time > a.waypoints[k - 1].time)) {
          error(IssueCategory::kValue, wp + ".t", "waypoint times must be strictly increasing");
        }
      }
    }
  }

  Issues issues_;
  Node root_;
};

}  // namespace

ScenarioError::ScenarioError(std::vector<ValidationIssue> issues)
    : std::runtime_error(describe(issues)), issues_(std::move(issues)) {}

std::size_t Scenario::total_ticks() const {
  return static_cast<std::size_t>(std::llround(duration / tick));
}

WorldState Scenario::initial_world() const {
  WorldState w;
  w.floorplan = floorplan;
  w.beacons = beacons;
  w.visitor = visitor;
  w.crowd = crowd;
  w.time = 0.0;
  return w;
}

Scenario load_scenario(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw ScenarioError({{IssueCategory::kSchema, "", std::string("malformed JSON: ") + e.what()}});
  }
  return Loader(doc).load();
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read scenario file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

std::vector<MoveCommand> expand_visitor_script(const Scenario& scenario) {
  const std::size_t steps = scenario.total_ticks();
  std::vector<MoveCommand> out(steps, command::Idle{});
  const double tick = scenario.tick;
  // Step k starts at k * tick; an entry starting at `time` first applies to
  // the earliest step starting at or after it.
  auto first_step = [&](double time) {
    return static_cast<std::size_t>(std::max(0.0, std::ceil((time - kTimeEps) / tick)));
  };
  for (const ScriptedCommand& c : scenario.visitor_script) {
    std::size_t k = first_step(c.time);
    if (!c.duration) {
      if (k < steps) out[k] = c.command;
      continue;
    }
    const double end = c.time + *c.duration;
    for (; k < steps && static_cast<double>(k) * tick < end - kTimeEps; ++k) out[k] = c.command;
  }
  return out;
}

}  // namespace seamquest
