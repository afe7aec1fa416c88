#pragma once

#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seamquest/radio.hpp"

namespace seamquest {

enum class Zone { kNear, kMid, kFar, kLost };
enum class Trend { kWarmer, kColder, kSteady, kUnknown };
enum class SmoothingMethod { kEwma, kMedian, kRaw };

inline constexpr Zone kAllZones[] = {Zone::kNear, Zone::kMid, Zone::kFar, Zone::kLost};
inline constexpr Trend kAllTrends[] = {Trend::kWarmer, Trend::kColder, Trend::kSteady,
                                       Trend::kUnknown};

std::string_view to_string(Zone zone);
std::string_view to_string(Trend trend);
std::string_view to_string(SmoothingMethod method);
std::optional<Zone> parse_zone(std::string_view text);
std::optional<Trend> parse_trend(std::string_view text);
std::optional<SmoothingMethod> parse_smoothing_method(std::string_view text);

/// Tolerance applied to every time-boundary comparison (window edges,
/// timeouts, holds) so tick-multiples like 0.1 * 30 land on the intended side.
inline constexpr double kTimeEps = 1e-9;

struct SmoothingConfig {
  SmoothingMethod method{SmoothingMethod::kEwma};
  double half_life{1.5};      ///< s, EWMA only
  double window{6.0};         ///< s of retained history
  double trend_gap{2.0};      ///< s between the two compared estimates
  double trend_epsilon{2.0};  ///< dB dead-band
  double lost_timeout{4.0};   ///< s without a detection before "lost"
  double near_dbm{-65.0};
  double mid_dbm{-80.0};
  double arrival_dbm{-60.0};
  double arrival_hold{3.0};   ///< s

  std::vector<std::string> violations(double detect_floor) const;
};

struct ProximityEstimate {
  std::string beacon_id;
  std::optional<double> smoothed_rssi;
  Zone zone{Zone::kLost};
  Trend trend{Trend::kUnknown};

  bool operator==(const ProximityEstimate&) const = default;
};

/// Sliding per-beacon sample history.
struct BeaconHistory {
  std::string beacon_id;
  std::deque<RssiSample> samples;
  std::optional<double> last_detection;  ///< survives window eviction
};

/// Appends `sample` and evicts entries older than cfg.window relative to it.
/// Throws ContractError on time regression or a foreign beacon id.
void ingest(BeaconHistory& history, const RssiSample& sample, const SmoothingConfig& cfg);

/// Smoothed value at `at` over the detected samples with
/// `window_start` <= time <= `at`. EWMA weights decay from `at`.
std::optional<double> smoothed_between(const BeaconHistory& history, double window_start,
                                       double at, const SmoothingConfig& cfg);

ProximityEstimate estimate(const BeaconHistory& history, double t, const SmoothingConfig& cfg);

/// True iff the smoothed value has stayed >= arrival_dbm at every sample time
/// in [t - arrival_hold, t] and the history reaches back that far.
bool arrival_check(const BeaconHistory& history, double t, const SmoothingConfig& cfg);

}  // namespace seamquest
