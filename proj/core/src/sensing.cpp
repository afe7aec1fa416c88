#include "seamquest/sensing.hpp"

#include <algorithm>
#include <cmath>

#include "seamquest/error.hpp"

namespace seamquest {

std::string_view to_string(Zone zone) {
  switch (zone) {
    case Zone::kNear: return "near";
    case Zone::kMid: return "mid";
    case Zone::kFar: return "far";
    case Zone::kLost: return "lost";
  }
  return "lost";
}

std::string_view to_string(Trend trend) {
  switch (trend) {
    case Trend::kWarmer: return "warmer";
    case Trend::kColder: return "colder";
    case Trend::kSteady: return "steady";
    case Trend::kUnknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(SmoothingMethod method) {
  switch (method) {
    case SmoothingMethod::kEwma: return "ewma";
    case SmoothingMethod::kMedian: return "median";
    case SmoothingMethod::kRaw: return "raw";
  }
  return "ewma";
}

std::optional<Zone> parse_zone(std::string_view text) {
  for (Zone z : kAllZones) {
    if (to_string(z) == text) return z;
  }
  return std::nullopt;
}

std::optional<Trend> parse_trend(std::string_view text) {
  for (Trend t : kAllTrends) {
    if (to_string(t) == text) return t;
  }
  return std::nullopt;
}

std::optional<SmoothingMethod> parse_smoothing_method(std::string_view text) {
  for (auto m : {SmoothingMethod::kEwma, SmoothingMethod::kMedian, SmoothingMethod::kRaw}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

std::vector<std::string> SmoothingConfig::violations(double detect_floor) const {
  std::vector<std::string> out;
  if (!(window > 0)) out.emplace_back("window must be > 0");
  if (!(half_life > 0)) out.emplace_back("half_life must be > 0");
  if (!(trend_gap > 0 && trend_gap < window)) out.emplace_back("trend_gap must be in (0, window)");
  if (!(trend_epsilon >= 0)) out.emplace_back("trend_epsilon must be >= 0");
  if (!(lost_timeout > 0)) out.emplace_back("lost_timeout must be > 0");
  if (!(near_dbm > mid_dbm)) out.emplace_back("near_dbm must be > mid_dbm");
  if (!(mid_dbm > detect_floor)) out.emplace_back("mid_dbm must be > radio.detect_floor");
  if (!(arrival_dbm > mid_dbm)) out.emplace_back("arrival_dbm must be > mid_dbm");
  if (!(arrival_hold >= 0 && arrival_hold < window)) {
    out.emplace_back("arrival_hold must be in [0, window)");
  }
  return out;
}

void ingest(BeaconHistory& history, const RssiSample& sample, const SmoothingConfig& cfg) {
  if (sample.beacon_id != history.beacon_id) {
    throw ContractError("ingest: sample for beacon '" + sample.beacon_id + "' given to history of '" +
                        history.beacon_id + "'");
  }
  if (!history.samples.empty() && sample.time < history.samples.back().time) {
    throw ContractError("ingest: sample time went backwards for beacon '" + sample.beacon_id + "'");
  }
  history.samples.push_back(sample);
  if (sample.detected()) history.last_detection = sample.time;
  const double horizon = sample.time - cfg.window - kTimeEps;
  while (history.samples.front().time < horizon) history.samples.pop_front();
}

std::optional<double> smoothed_between(const BeaconHistory& history, double window_start,
                                       double at, const SmoothingConfig& cfg) {
  const double lo = window_start - kTimeEps;
  const double hi = at + kTimeEps;
  switch (cfg.method) {
    case SmoothingMethod::kEwma: {
      double weighted = 0.0;
      double weights = 0.0;
      for (const auto& s : history.samples) {
        if (!s.rssi || s.time < lo || s.time > hi) continue;
        const double w = std::exp2(-(at - s.time) / cfg.half_life);
        weighted += w * *s.rssi;
        weights += w;
      }
      if (weights == 0.0) return std::nullopt;
      return weighted / weights;
    }
    case SmoothingMethod::kMedian: {
      std::vector<double> values;
      for (const auto& s : history.samples) {
        if (s.rssi && s.time >= lo && s.time <= hi) values.push_back(*s.rssi);
      }
      if (values.empty()) return std::nullopt;
      std::sort(values.begin(), values.end());
      const std::size_t mid = values.size() / 2;
      if (values.size() % 2 == 1) return values[mid];
      return 0.5 * (values[mid - 1] + values[mid]);
    }
    case SmoothingMethod::kRaw: {
      for (auto it = history.samples.rbegin(); it != history.samples.rend(); ++it) {
        if (it->rssi && it->time >= lo && it->time <= hi) return *it->rssi;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

ProximityEstimate estimate(const BeaconHistory& history, double t, const SmoothingConfig& cfg) {
  ProximityEstimate out{history.beacon_id, std::nullopt, Zone::kLost, Trend::kUnknown};
  const double window_start = t - cfg.window;
  out.smoothed_rssi = smoothed_between(history, window_start, t, cfg);

  const bool recently_detected =
      history.last_detection && t - *history.last_detection <= cfg.lost_timeout + kTimeEps;
  if (!recently_detected || !out.smoothed_rssi) return out;

  const double now = *out.smoothed_rssi;
  out.zone = now >= cfg.near_dbm ? Zone::kNear : now >= cfg.mid_dbm ? Zone::kMid : Zone::kFar;

  if (history.samples.empty() || t - history.samples.front().time < cfg.trend_gap - kTimeEps) {
    return out;
  }
  const auto before = smoothed_between(history, window_start, t - cfg.trend_gap, cfg);
  if (!before) return out;
  const double delta = now - *before;
  out.trend = delta > cfg.trend_epsilon    ? Trend::kWarmer
              : delta < -cfg.trend_epsilon ? Trend::kColder
                                           : Trend::kSteady;
  return out;
}

bool arrival_check(const BeaconHistory& history, double t, const SmoothingConfig& cfg) {
  if (history.samples.empty()) return false;
  const double hold_start = t - cfg.arrival_hold;
  if (history.samples.front().time > hold_start + kTimeEps) return false;
  const double window_start = t - cfg.window;

  auto holds_at = [&](double at) {
    const auto value = smoothed_between(history, window_start, at, cfg);
    return value && *value >= cfg.arrival_dbm;
  };
  for (const auto& s : history.samples) {
    if (s.time < hold_start - kTimeEps || s.time > t + kTimeEps) continue;
    if (!holds_at(s.time)) return false;
  }
  return holds_at(t);
}

}  // namespace seamquest
