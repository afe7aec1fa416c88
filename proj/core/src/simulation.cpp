#include "seamquest/error.hpp"
#include "seamquest/harness.hpp"

namespace seamquest {

Simulation::Simulation(Scenario scenario)
    : scenario_(std::move(scenario)),
      world_(scenario_.initial_world()),
      jitter_(RandomStream::named(scenario_.seed, "game/jitter")) {
  for (std::size_t i = 0; i < world_.beacons.size(); ++i) {
    const Beacon& b = world_.beacons[i];
    if (!b.enabled) continue;
    enabled_.push_back(i);
    channels_.emplace_back(RandomStream::named(scenario_.seed, "radio/" + b.id));
    histories_.push_back(BeaconHistory{b.id, {}, std::nullopt});
  }
}

const TickReport& Simulation::start() {
  if (started_) throw ContractError("Simulation::start called twice");
  started_ = true;
  observe(0.0, false);
  return report_;
}

const TickReport& Simulation::step(const MoveCommand& command) {
  if (!started_) throw ContractError("Simulation::step before start");
  const double begin = time();
  if (!std::holds_alternative<command::Idle>(command)) log_.append(format_command(begin, command));
  const double end = static_cast<double>(steps_ + 1) * scenario_.tick;
  world_ = advance_to(world_, command, end);
  ++steps_;
  observe(end, true);
  return report_;
}

void Simulation::observe(double t, bool log_pose) {
  report_ = TickReport{};
  report_.time = t;
  if (log_pose) log_.append(format_pose(t, world_.visitor));

  for (std::size_t i = 0; i < enabled_.size(); ++i) {
    RssiSample s = sample_rssi(world_.beacons[enabled_[i]], world_.visitor, world_, t, channels_[i], scenario_.radio);
    log_.append(format_sample(s));
    ingest(histories_[i], s, scenario_.sensing);
    report_.samples.push_back(std::move(s));
  }
  for (const auto& h : histories_) report_.estimates.push_back(estimate(h, t, scenario_.sensing));

  std::optional<ProximityEstimate> active;
  bool arrived = false;
  if (const auto beacon = active_beacon(game_, scenario_.quests)) {
    for (std::size_t i = 0; i < histories_.size(); ++i) {
      if (histories_[i].beacon_id != *beacon) continue;
      active = report_.estimates[i];
      arrived = arrival_check(histories_[i], t, scenario_.sensing);
    }
    if (active) log_.append(format_estimate(t, *active));
  }

  AdvanceResult r = advance(game_, active, arrived, t, jitter_, scenario_.quests);
  game_ = std::move(r.state);
  for (const auto& e : r.events) log_.append(format_game_event(e));
  report_.events = std::move(r.events);
}

RunResult run(const Scenario& scenario) {
  Simulation sim(scenario);
  const std::vector<MoveCommand> commands = expand_visitor_script(scenario);
  sim.start();
  for (const MoveCommand& c : commands) sim.step(c);
  RunResult result;
  result.metrics = compute_metrics(sim.log().lines(), scenario.floorplan, scenario);
  result.log = sim.log();
  return result;
}

}  // namespace seamquest
