#include "seamquest/radio.hpp"

#include <algorithm>
#include <cmath>

#include "seamquest/error.hpp"

namespace seamquest {

std::vector<std::string> RadioParams::violations() const {
  std::vector<std::string> out;
  if (!(n_pl > 0)) out.emplace_back("n_pl must be > 0");
  if (!(sigma_slow >= 0)) out.emplace_back("sigma_slow must be >= 0");
  if (!(sigma_fast >= 0)) out.emplace_back("sigma_fast must be >= 0");
  if (!(body_max >= 0)) out.emplace_back("body_max must be >= 0");
  if (!(crowd_per_agent >= 0)) out.emplace_back("crowd_per_agent must be >= 0");
  if (!(raise_factor >= 0 && raise_factor <= 1)) out.emplace_back("raise_factor must be in [0, 1]");
  if (!(detect_floor < p_ref)) out.emplace_back("detect_floor must be < p_ref");
  if (!(shadow_tau > 0)) out.emplace_back("shadow_tau must be > 0");
  return out;
}

double path_loss(double distance, const RadioParams& params) {
  if (!(distance > 0.0)) throw DomainError("path_loss: distance must be positive");
  return 10.0 * params.n_pl * std::log10(std::max(distance, 1.0));
}

double body_attenuation(Vec2 facing, Vec2 to_beacon, const RadioParams& params) {
  const double nf = norm(facing);
  const double nb = norm(to_beacon);
  if (nf == 0.0 || nb == 0.0) throw DomainError("body_attenuation: zero-length vector");
  const double cos_theta = std::clamp(dot(facing, to_beacon) / (nf * nb), -1.0, 1.0);
  return params.body_max * std::max(0.0, -cos_theta);
}

std::size_t occluding_agents(const Segment& segment, std::span<const CrowdDisk> crowd) {
  return static_cast<std::size_t>(std::count_if(crowd.begin(), crowd.end(), [&](const CrowdDisk& d) {
    return segment_hits_disk(segment.a, segment.b, d.center, d.radius);
  }));
}

double occlusion_attenuation(const Segment& segment, const Floorplan& floorplan,
                             std::span<const CrowdDisk> crowd, bool phone_raised,
                             const RadioParams& params) {
  double crowd_db = params.crowd_per_agent * static_cast<double>(occluding_agents(segment, crowd));
  if (phone_raised) crowd_db *= params.raise_factor;
  return static_attenuation(segment.a, segment.b, floorplan) + crowd_db;
}

double mean_rssi(const Beacon& beacon, const VisitorState& visitor, const Floorplan& floorplan,
                 std::span<const CrowdDisk> crowd, const RadioParams& params) {
  const Vec2 to_beacon = beacon.position - visitor.position;
  const double d = norm(to_beacon);
  // Phone on top of the beacon: clamp distance, no body in between.
  const double loss = path_loss(d > 0.0 ? d : 1.0, params);
  const double body = d > 0.0 ? body_attenuation(visitor.facing, to_beacon, params) : 0.0;
  const double occlusion =
      occlusion_attenuation({visitor.position, beacon.position}, floorplan, crowd,
                            visitor.phone_raised, params);
  return params.p_ref - loss - body - occlusion;
}

double BeaconChannel::fluctuation(double t, const RadioParams& params) {
  const double z_slow = rng_.normal();
  const double z_fast = rng_.normal();
  if (!started_) {
    slow_ = params.sigma_slow * z_slow;
    started_ = true;
  } else {
    if (t < last_time_) throw ContractError("BeaconChannel: sample time went backwards");
    // Exact discretisation of an Ornstein-Uhlenbeck process with stationary
    // std sigma_slow.
    const double a = std::exp(-(t - last_time_) / params.shadow_tau);
    slow_ = a * slow_ + params.sigma_slow * std::sqrt(1.0 - a * a) * z_slow;
  }
  last_time_ = t;
  return slow_ + params.sigma_fast * z_fast;
}

RssiSample sample_rssi(const Beacon& beacon, const VisitorState& visitor, const WorldState& world,
                       double t, BeaconChannel& channel, const RadioParams& params) {
  std::vector<CrowdDisk> crowd;
  crowd.reserve(world.crowd.size());
  for (const auto& agent : world.crowd) crowd.push_back({agent.position_at(t), agent.radius});
  const double raw = mean_rssi(beacon, visitor, world.floorplan, crowd, params) +
                     channel.fluctuation(t, params);
  RssiSample sample{t, beacon.id, std::nullopt};
  if (raw >= params.detect_floor) sample.rssi = raw;
  return sample;
}

}  // namespace seamquest
