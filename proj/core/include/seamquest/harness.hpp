#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seamquest/event_log.hpp"
#include "seamquest/game.hpp"
#include "seamquest/radio.hpp"
#include "seamquest/scenario.hpp"
#include "seamquest/sensing.hpp"
#include "seamquest/world.hpp"

namespace seamquest {

/// Everything observed on one tick.
struct TickReport {
  double time{0.0};
  std::vector<RssiSample> samples;           ///< one per enabled beacon
  std::vector<ProximityEstimate> estimates;  ///< one per enabled beacon
  std::vector<GameEvent> events;
};

/// One session of the fixed-tick pipeline world -> radio -> sensing -> game.
///
/// Tick 0 observes the spawn state at t = 0. Step k (k >= 1) applies one
/// command over [(k-1) tick, k tick] and observes at k tick. Randomness comes
/// from named sub-streams of the scenario seed: "radio/<beacon id>" per
/// beacon and "game/jitter" for encounter timing.
class Simulation {
 public:
  explicit Simulation(Scenario scenario);

  /// Observes tick 0. Must be called once before step().
  const TickReport& start();
  /// Advances one tick. Steps past the scenario duration are allowed; the
  /// caller decides when to stop (see finished()).
  const TickReport& step(const MoveCommand& command);

  bool finished() const { return steps_ >= scenario_.total_ticks(); }
  std::size_t steps() const { return steps_; }
  double time() const { return static_cast<double>(steps_) * scenario_.tick; }

  const Scenario& scenario() const { return scenario_; }
  const WorldState& world() const { return world_; }
  const GameState& game() const { return game_; }
  const EventLog& log() const { return log_; }
  const TickReport& last() const { return report_; }
  const std::vector<BeaconHistory>& histories() const { return histories_; }

 private:
  void observe(double t, bool log_pose);

  Scenario scenario_;
  WorldState world_;
  std::vector<std::size_t> enabled_;  ///< indices into world_.beacons
  std::vector<BeaconChannel> channels_;
  std::vector<BeaconHistory> histories_;
  GameState game_;
  RandomStream jitter_;
  EventLog log_;
  TickReport report_;
  std::size_t steps_{0};
  bool started_{false};
};

struct RunMetrics {
  double tick{0.0};
  std::size_t total_ticks{0};                      ///< pose lines seen
  std::map<std::string, std::size_t> dwell_ticks;  ///< every gallery, visited or not
  std::size_t outside_ticks{0};                    ///< ticks in no gallery
  std::vector<std::string> visit_order;            ///< galleries by first entry
  std::vector<std::optional<double>> completion_times;  ///< indexed by quest
  std::map<std::pair<Trend, Zone>, std::size_t> feedback_counts;
  std::size_t estimate_ticks{0};  ///< ticks with an active-quest estimate
  std::size_t lost_ticks{0};      ///< of those, ticks in zone lost

  double dwell_seconds(const std::string& gallery) const;
  double outside_seconds() const { return static_cast<double>(outside_ticks) * tick; }
  double lost_fraction() const;
};

/// Recomputes metrics from a log: gallery dwell from pose lines, visit order
/// from first entries, completion times from QuestCompleted, feedback counts
/// from Feedback and the lost fraction from estimate lines.
/// Throws LogParseError with the line number on malformed input.
RunMetrics compute_metrics(const std::vector<std::string>& lines, const Floorplan& floorplan,
                           const Scenario& scenario);

std::string metrics_to_json(const RunMetrics& metrics);

struct RunResult {
  EventLog log;
  RunMetrics metrics;
};

/// Headless run for the scenario's full duration with its visitor script.
RunResult run(const Scenario& scenario);

enum class CoverageMode { kDeterministic, kMeanOfK };

struct CoverageOptions {
  double resolution{0.5};  ///< cell size in meters
  CoverageMode mode{CoverageMode::kDeterministic};
  std::size_t samples{16};  ///< k for kMeanOfK
  std::uint64_t seed{0};
};

struct CoverageCell {
  Vec2 center;
  bool reachable{true};                      ///< false inside an obstacle
  std::vector<std::optional<double>> rssi;   ///< per beacon; empty when unreachable
};

struct CoverageMap {
  std::size_t columns{0};
  std::size_t rows{0};
  double resolution{0.0};
  std::vector<std::string> beacon_ids;
  std::vector<CoverageCell> cells;  ///< row-major, row 0 at bounds.min.y

  const CoverageCell& at(std::size_t column, std::size_t row) const {
    return cells[row * columns + column];
  }
};

/// Signal coverage grid over the floorplan: each cell centre is sampled with
/// the visitor facing the beacon and no crowd. Deterministic mode ignores the
/// fluctuation terms; mean-of-k averages k draws of the stationary noise.
/// Throws DomainError if resolution <= 0.
CoverageMap coverage_map(const Floorplan& floorplan, std::span<const Beacon> beacons,
                         const RadioParams& params, const CoverageOptions& options);

/// CSV with header x,y,beacon_id,rssi. rssi is "none" when undetected and
/// "unreachable" for cells inside obstacles.
void write_coverage_csv(const CoverageMap& map, std::ostream& out);

/// Binary PGM (P5) of one beacon, row 0 at the top = bounds.max.y.
/// Brightness maps [detect_floor, p_ref] to [1, 255]; 0 means no signal.
void write_coverage_pgm(const CoverageMap& map, std::size_t beacon_index, const RadioParams& params,
                        std::ostream& out);

}  // namespace seamquest
