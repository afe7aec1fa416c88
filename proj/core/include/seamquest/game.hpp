#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "seamquest/random.hpp"
#include "seamquest/sensing.hpp"

namespace seamquest {

enum class Phase { kIdle, kEncounter, kSeeking, kArrived, kFinalGhost, kCompleted };

enum class EventKind {
  kGhostAppeared,
  kFeedback,
  kRecovery,
  kQuestCompleted,
  kAchievementUnlocked,
  kShareOffered,
  kFinalGhostAppeared,
  kGameCompleted,
};

/// Happy/angry class of a feedback line, used only for presentation.
enum class Mood { kHappy, kNeutral, kAngry };

std::string_view to_string(Phase phase);
std::string_view to_string(EventKind kind);
std::string_view to_string(Mood mood);
std::optional<EventKind> parse_event_kind(std::string_view text);

Mood mood_for(Trend trend, Zone zone);

class TemplateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MessageContext {
  std::string ghost;
  std::string artifact;
  std::string museum;
};

/// Replaces {ghost}, {artifact} and {museum}. Any other placeholder, or an
/// unbalanced brace, throws TemplateError.
std::string render_message(std::string_view templ, const MessageContext& context);

struct MessageTable {
  /// Indexed [trend][zone] in enum order.
  std::array<std::array<std::string, 4>, 4> feedback;
  std::string recovery;

  const std::string& at(Trend trend, Zone zone) const {
    return feedback[static_cast<std::size_t>(trend)][static_cast<std::size_t>(zone)];
  }
  std::string& at(Trend trend, Zone zone) {
    return feedback[static_cast<std::size_t>(trend)][static_cast<std::size_t>(zone)];
  }

  /// Default English lines.
  static MessageTable english();
};

struct QuestEntry {
  std::string ghost_id;
  std::string artifact_id;
  std::string beacon_id;  ///< resolved from the artifact at load time
  std::string intro;
};

struct FinalGhost {
  std::string ghost_id;
  std::string museum_id;
  std::string text;
};

struct QuestScript {
  std::vector<QuestEntry> quests;
  FinalGhost final_ghost;
  double encounter_delay{5.0};
  double encounter_jitter{5.0};  ///< upper bound of the uniform extra delay
  double feedback_period{2.0};
  MessageTable messages{MessageTable::english()};
  std::string achievement_text{"You helped every ghost find its way home!"};
  std::string share_text{"I reunited every lost ghost with its artefact. Can you?"};

  std::vector<std::string> violations() const;
};

struct GameState {
  Phase phase{Phase::kIdle};
  std::size_t quest{0};
  bool achievement_emitted{false};
  std::size_t events_emitted{0};     ///< event log cursor
  std::optional<double> due;         ///< next scheduled encounter
  double next_feedback{0.0};
  std::optional<Zone> previous_zone; ///< zone seen on the previous Seeking tick

  bool operator==(const GameState&) const = default;
};

struct GameEvent {
  double time{0.0};
  EventKind kind{EventKind::kGameCompleted};
  std::optional<std::size_t> quest;
  std::string ghost_id;
  std::string text;
  std::optional<Trend> trend;
  std::optional<Zone> zone;
  std::optional<Mood> mood;
  std::string museum_id;

  bool operator==(const GameEvent&) const = default;
};

struct AdvanceResult {
  GameState state;
  std::vector<GameEvent> events;
};

/// One transition step of the quest machine at time t.
///
/// In Seeking, `estimate` must be present and belong to the active quest's
/// beacon (ContractError otherwise); other phases ignore it. `rng` is only
/// used to draw encounter jitter.
AdvanceResult advance(const GameState& state, const std::optional<ProximityEstimate>& estimate,
                      bool arrived, double t, RandomStream& rng, const QuestScript& script);

/// Beacon whose estimate drives the current phase, if any.
std::optional<std::string> active_beacon(const GameState& state, const QuestScript& script);

}  // namespace seamquest
