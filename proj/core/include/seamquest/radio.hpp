#pragma once

#include <optional>
#include <span>
#include <string>

#include "seamquest/floorplan.hpp"
#include "seamquest/geometry.hpp"
#include "seamquest/random.hpp"
#include "seamquest/world.hpp"

namespace seamquest {

/// Coefficients of the beacon RSSI model. The defaults are illustrative
/// indoor-BLE values, not measurements.
struct RadioParams {
  double p_ref{-59.0};           ///< dBm at the 1 m reference distance
  double n_pl{2.2};              ///< path-loss exponent
  double sigma_slow{3.0};        ///< dB, slow shadowing std-dev
  double sigma_fast{2.0};        ///< dB, per-sample fading std-dev
  double body_max{15.0};         ///< dB, beacon directly behind the visitor
  double crowd_per_agent{4.0};   ///< dB per occluding crowd agent
  double raise_factor{0.15};     ///< crowd-term multiplier with the phone raised
  double detect_floor{-95.0};    ///< dBm, weaker samples are not reported
  double shadow_tau{5.0};        ///< s, slow shadowing correlation time

  /// Names of violated invariants; empty when valid.
  std::vector<std::string> violations() const;
};

struct RssiSample {
  double time{0.0};
  std::string beacon_id;
  std::optional<double> rssi;  ///< present iff detected

  bool detected() const { return rssi.has_value(); }
};

/// Log-distance path loss in dB relative to 1 m; distances under 1 m clamp.
double path_loss(double distance, const RadioParams& params);

/// body_max * max(0, -cos theta) between facing and the direction to the beacon.
double body_attenuation(Vec2 facing, Vec2 to_beacon, const RadioParams& params);

/// Static (walls, obstacles) plus crowd attenuation along the segment. Raising
/// the phone scales only the crowd term.
double occlusion_attenuation(const Segment& segment, const Floorplan& floorplan,
                             std::span<const CrowdDisk> crowd, bool phone_raised,
                             const RadioParams& params);

/// Number of crowd disks touching the closed segment.
std::size_t occluding_agents(const Segment& segment, std::span<const CrowdDisk> crowd);

/// Deterministic part of the received power: p_ref minus all losses.
double mean_rssi(const Beacon& beacon, const VisitorState& visitor, const Floorplan& floorplan,
                 std::span<const CrowdDisk> crowd, const RadioParams& params);

/// Per-beacon stochastic state: the seeded stream plus the exponentially
/// correlated slow-shadowing value it drives.
class BeaconChannel {
 public:
  explicit BeaconChannel(RandomStream rng) : rng_(rng) {}

  /// Advances the shadowing process to t and draws one fast-fading term.
  /// Always consumes the same number of draws whatever the sigmas are.
  /// Throws ContractError if t runs backwards.
  double fluctuation(double t, const RadioParams& params);

  double slow_value() const { return slow_; }

 private:
  RandomStream rng_;
  double slow_{0.0};
  double last_time_{0.0};
  bool started_{false};
};

RssiSample sample_rssi(const Beacon& beacon, const VisitorState& visitor, const WorldState& world,
                       double t, BeaconChannel& channel, const RadioParams& params);

}  // namespace seamquest
