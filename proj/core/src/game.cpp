#include "seamquest/game.hpp"

#include "seamquest/error.hpp"

namespace seamquest {

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::kIdle: return "Idle";
    case Phase::kEncounter: return "Encounter";
    case Phase::kSeeking: return "Seeking";
    case Phase::kArrived: return "Arrived";
    case Phase::kFinalGhost: return "FinalGhost";
    case Phase::kCompleted: return "Completed";
  }
  return "Idle";
}

namespace {
constexpr EventKind kAllKinds[] = {
    EventKind::kGhostAppeared,       EventKind::kFeedback,     EventKind::kRecovery,
    EventKind::kQuestCompleted,      EventKind::kAchievementUnlocked,
    EventKind::kShareOffered,        EventKind::kFinalGhostAppeared,
    EventKind::kGameCompleted,
};
}  // namespace

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kGhostAppeared: return "GhostAppeared";
    case EventKind::kFeedback: return "Feedback";
    case EventKind::kRecovery: return "Recovery";
    case EventKind::kQuestCompleted: return "QuestCompleted";
    case EventKind::kAchievementUnlocked: return "AchievementUnlocked";
    case EventKind::kShareOffered: return "ShareOffered";
    case EventKind::kFinalGhostAppeared: return "FinalGhostAppeared";
    case EventKind::kGameCompleted: return "GameCompleted";
  }
  return "GameCompleted";
}

std::optional<EventKind> parse_event_kind(std::string_view text) {
  for (EventKind k : kAllKinds) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::string_view to_string(Mood mood) {
  switch (mood) {
    case Mood::kHappy: return "happy";
    case Mood::kNeutral: return "neutral";
    case Mood::kAngry: return "angry";
  }
  return "neutral";
}

Mood mood_for(Trend trend, Zone zone) {
  if (zone == Zone::kLost || trend == Trend::kColder) return Mood::kAngry;
  if (trend == Trend::kWarmer || zone == Zone::kNear) return Mood::kHappy;
  if (zone == Zone::kFar) return Mood::kAngry;
  return Mood::kNeutral;
}

std::string render_message(std::string_view templ, const MessageContext& context) {
  std::string out;
  out.reserve(templ.size());
  std::size_t i = 0;
  while (i < templ.size()) {
    const char c = templ[i];
    if (c == '}') throw TemplateError("unbalanced '}' in template: " + std::string(templ));
    if (c != '{') {
      out.push_back(c);
      ++i;
      continue;
    }
    const std::size_t close = templ.find('}', i);
    if (close == std::string_view::npos) {
      throw TemplateError("unterminated placeholder in template: " + std::string(templ));
    }
    const std::string_view name = templ.substr(i + 1, close - i - 1);
    if (name == "ghost") {
      out += context.ghost;
    } else if (name == "artifact") {
      out += context.artifact;
    } else if (name == "museum") {
      out += context.museum;
    } else {
      throw TemplateError("unknown placeholder {" + std::string(name) + "}");
    }
    i = close + 1;
  }
  return out;
}

MessageTable MessageTable::english() {
  MessageTable t;
  t.at(Trend::kWarmer, Zone::kNear) = "Yes! {artifact} is right around here, I can feel it!";
  t.at(Trend::kWarmer, Zone::kMid) = "Yes, I can see we're going into the right direction!";
  t.at(Trend::kWarmer, Zone::kFar) = "Warmer... I think this is the way. Keep going!";
  t.at(Trend::kColder, Zone::kNear) = "Wait, we were so close to {artifact}! Don't walk away!";
  t.at(Trend::kColder, Zone::kMid) = "Hmm, I think we're drifting away from my home.";
  t.at(Trend::kColder, Zone::kFar) = "No, no, this is the wrong way! We're getting lost!";
  t.at(Trend::kSteady, Zone::kNear) = "My {artifact} must be very close. Look around!";
  t.at(Trend::kSteady, Zone::kMid) = "I can't tell if we're getting any closer...";
  t.at(Trend::kSteady, Zone::kFar) = "It's so far away. Which way should we go?";
  t.at(Trend::kUnknown, Zone::kNear) = "Ooh, something feels familiar around here.";
  t.at(Trend::kUnknown, Zone::kMid) = "Let's look around a bit.";
  t.at(Trend::kUnknown, Zone::kFar) = "I don't recognise this place at all.";
  for (Trend trend : kAllTrends) {
    t.at(trend, Zone::kLost) = "{ghost} can't see where we're going! We're getting lost!";
  }
  t.recovery = "There! {ghost} can see where you're going again!";
  return t;
}

std::vector<std::string> QuestScript::violations() const {
  std::vector<std::string> out;
  if (quests.empty()) out.emplace_back("at least one quest is required");
  if (!(encounter_delay >= 0)) out.emplace_back("encounter_delay must be >= 0");
  if (!(encounter_jitter >= 0)) out.emplace_back("encounter_jitter must be >= 0");
  if (!(feedback_period > 0)) out.emplace_back("feedback_period must be > 0");
  const MessageContext probe{"ghost", "artifact", "museum"};
  auto check = [&](const std::string& what, const std::string& templ) {
    try {
      render_message(templ, probe);
    } catch (const TemplateError& e) {
      out.push_back(what + ": " + e.what());
    }
  };
  for (std::size_t i = 0; i < quests.size(); ++i) {
    if (quests[i].ghost_id.empty()) out.push_back("quests[" + std::to_string(i) + "].ghost is empty");
    check("quests[" + std::to_string(i) + "].intro", quests[i].intro);
  }
  if (final_ghost.ghost_id.empty()) out.emplace_back("final_ghost.ghost is empty");
  check("final_ghost.text", final_ghost.text);
  for (Trend trend : kAllTrends) {
    for (Zone zone : kAllZones) {
      check("messages." + std::string(to_string(trend)) + "." + std::string(to_string(zone)),
            messages.at(trend, zone));
    }
  }
  check("messages.recovery", messages.recovery);
  check("achievement", achievement_text);
  check("share", share_text);
  return out;
}

std::optional<std::string> active_beacon(const GameState& state, const QuestScript& script) {
  if (state.phase == Phase::kSeeking && state.quest < script.quests.size()) {
    return script.quests[state.quest].beacon_id;
  }
  return std::nullopt;
}

namespace {

class Transition {
 public:
  Transition(const GameState& state, double t, RandomStream& rng, const QuestScript& script)
      : state_(state), t_(t), rng_(rng), script_(script) {}

  AdvanceResult finish() && { return {state_, std::move(events_)}; }

  GameState& state() { return state_; }

  bool due() const { return state_.due && t_ >= *state_.due - kTimeEps; }

  void schedule_encounter() {
    state_.due = t_ + script_.encounter_delay + script_.encounter_jitter * rng_.uniform();
  }

  MessageContext context() const {
    if (state_.quest < script_.quests.size()) {
      const QuestEntry& q = script_.quests[state_.quest];
      return {q.ghost_id, q.artifact_id, ""};
    }
    return {script_.final_ghost.ghost_id, "", script_.final_ghost.museum_id};
  }

  GameEvent& emit(EventKind kind) {
    GameEvent e;
    e.time = t_;
    e.kind = kind;
    events_.push_back(std::move(e));
    ++state_.events_emitted;
    return events_.back();
  }

  GameEvent& emit_for_quest(EventKind kind) {
    GameEvent& e = emit(kind);
    e.quest = state_.quest;
    e.ghost_id = script_.quests[state_.quest].ghost_id;
    return e;
  }

  void encounter(std::size_t index) {
    state_.phase = Phase::kEncounter;
    state_.quest = index;
    state_.due.reset();
    const QuestEntry& q = script_.quests[index];
    emit_for_quest(EventKind::kGhostAppeared).text = render_message(q.intro, context());
    state_.phase = Phase::kSeeking;
    state_.next_feedback = t_ + script_.feedback_period;
    state_.previous_zone.reset();
  }

  void seek(const ProximityEstimate& estimate, bool arrived) {
    if (arrived) {
      emit_for_quest(EventKind::kQuestCompleted);
      state_.phase = Phase::kArrived;
      state_.previous_zone.reset();
      schedule_encounter();
      return;
    }
    const bool recovered = state_.previous_zone == Zone::kLost && estimate.zone != Zone::kLost;
    if (recovered) {
      GameEvent& e = emit_for_quest(EventKind::kRecovery);
      e.text = render_message(script_.messages.recovery, context());
      e.zone = estimate.zone;
      e.trend = estimate.trend;
      e.mood = Mood::kHappy;
      state_.next_feedback = t_ + script_.feedback_period;
    } else if (t_ >= state_.next_feedback - kTimeEps) {
      GameEvent& e = emit_for_quest(EventKind::kFeedback);
      e.text = render_message(script_.messages.at(estimate.trend, estimate.zone), context());
      e.trend = estimate.trend;
      e.zone = estimate.zone;
      e.mood = mood_for(estimate.trend, estimate.zone);
      while (state_.next_feedback <= t_ + kTimeEps) state_.next_feedback += script_.feedback_period;
    }
    state_.previous_zone = estimate.zone;
  }

  void finale() {
    state_.due.reset();
    state_.quest = script_.quests.size();
    emit(EventKind::kAchievementUnlocked).text = render_message(script_.achievement_text, context());
    state_.achievement_emitted = true;
    emit(EventKind::kShareOffered).text = render_message(script_.share_text, context());
    state_.phase = Phase::kFinalGhost;
    GameEvent& ghost = emit(EventKind::kFinalGhostAppeared);
    ghost.ghost_id = script_.final_ghost.ghost_id;
    ghost.museum_id = script_.final_ghost.museum_id;
    ghost.text = render_message(script_.final_ghost.text, context());
    complete();
  }

  void complete() {
    emit(EventKind::kGameCompleted);
    state_.phase = Phase::kCompleted;
  }

 private:
  GameState state_;
  double t_;
  RandomStream& rng_;
  const QuestScript& script_;
  std::vector<GameEvent> events_;
};

}  // namespace

AdvanceResult advance(const GameState& state, const std::optional<ProximityEstimate>& estimate,
                      bool arrived, double t, RandomStream& rng, const QuestScript& script) {
  if (script.quests.empty()) throw ContractError("advance: quest script has no quests");
  Transition tr(state, t, rng, script);
  GameState& s = tr.state();
  switch (s.phase) {
    case Phase::kIdle:
      if (!s.due) tr.schedule_encounter();
      if (tr.due()) tr.encounter(0);
      break;
    case Phase::kEncounter:
      tr.encounter(s.quest);
      break;
    case Phase::kSeeking: {
      const std::string& expected = script.quests.at(s.quest).beacon_id;
      if (!estimate) throw ContractError("advance: Seeking requires an estimate for " + expected);
      if (estimate->beacon_id != expected) {
        throw ContractError("advance: estimate for beacon '" + estimate->beacon_id +
                            "' but the active quest listens to '" + expected + "'");
      }
      tr.seek(*estimate, arrived);
      break;
    }
    case Phase::kArrived:
      if (!s.due) tr.schedule_encounter();
      if (tr.due()) {
        if (s.quest + 1 < script.quests.size()) {
          tr.encounter(s.quest + 1);
        } else {
          tr.finale();
        }
      }
      break;
    case Phase::kFinalGhost:
      tr.complete();
      break;
    case Phase::kCompleted:
      break;
  }
  return std::move(tr).finish();
}

}  // namespace seamquest
