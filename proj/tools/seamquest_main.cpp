// seamquest command line: headless runs, coverage maps, live sessions and
// scenario validation.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "seamquest/error.hpp"
#include "seamquest/gateway/session.hpp"
#include "seamquest/gateway/websocket_server.hpp"
#include "seamquest/harness.hpp"
#include "seamquest/scenario.hpp"

namespace fs = std::filesystem;
using namespace seamquest;

namespace {

// Exit codes. CLI11 usage errors use their own (nonzero) codes.
enum Exit : int {
  kOk = 0,
  kUnreadable = 3,
  kInvalidScenario = 4,
  kOutputFailure = 5,
  kRuntimeFailure = 6,
};

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Scenario read_scenario(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw FileError("cannot read scenario file: " + path.string());
  return load_scenario_file(path);
}

void ensure_parent(const fs::path& file) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
}

int cmd_run(const fs::path& scenario_path, const std::string& log_path) {
  const Scenario scenario = read_scenario(scenario_path);
  const RunResult result = run(scenario);
  if (!log_path.empty()) {
    ensure_parent(log_path);
    result.log.write_file(log_path);
  }
  std::cout << metrics_to_json(result.metrics) << '\n';
  return kOk;
}

int cmd_validate(const fs::path& scenario_path) {
  const Scenario scenario = read_scenario(scenario_path);
  std::cout << "ok: " << scenario.name << " (" << scenario.beacons.size() << " beacons, "
            << scenario.quests.quests.size() << " quests, " << scenario.total_ticks() << " ticks)\n";
  return kOk;
}

struct CoverageArgs {
  double resolution{0.5};
  std::string out{"coverage"};
  std::string mode{"deterministic"};
  std::size_t samples{16};
  bool pgm{false};
};

int cmd_coverage(const fs::path& scenario_path, const CoverageArgs& args) {
  const Scenario scenario = read_scenario(scenario_path);
  CoverageOptions options;
  options.resolution = args.resolution;
  options.mode = args.mode == "mean" ? CoverageMode::kMeanOfK : CoverageMode::kDeterministic;
  options.samples = args.samples;
  options.seed = scenario.seed;
  const CoverageMap map = coverage_map(scenario.floorplan, scenario.beacons, scenario.radio, options);

  const fs::path dir(args.out);
  fs::create_directories(dir);
  const fs::path csv = dir / "coverage.csv";
  {
    std::ofstream out(csv);
    if (!out) throw FileError("cannot write " + csv.string());
    write_coverage_csv(map, out);
  }
  std::cout << csv.string() << '\n';
  if (args.pgm) {
    for (std::size_t i = 0; i < map.beacon_ids.size(); ++i) {
      const fs::path pgm = dir / (map.beacon_ids[i] + ".pgm");
      std::ofstream out(pgm, std::ios::binary);
      if (!out) throw FileError("cannot write " + pgm.string());
      write_coverage_pgm(map, i, scenario.radio, out);
      std::cout << pgm.string() << '\n';
    }
  }
  return kOk;
}

struct ServeArgs {
  unsigned short port{8765};
  std::string address{"127.0.0.1"};
  bool debug_rssi{false};
  bool stdio{false};
  bool fast{false};
  std::size_t max_sessions{0};
};

void report_session(const gateway::SessionSummary& s) {
  std::cerr << "session ended (" << gateway::to_string(s.end) << ") after " << s.steps << " ticks";
  if (!s.log_path.empty()) std::cerr << ", log " << s.log_path.string();
  std::cerr << '\n';
}

// Frames in on stdin, out on stdout. End of input means the client is done
// sending; stdout stays usable until it fails.
struct StdioTransport : gateway::Transport {
  gateway::ChannelTransport inbox{[](const std::string&) {}};

  bool receive(std::vector<std::string>& frames, bool wait) override { return inbox.receive(frames, wait); }
  void send(const std::string& frame) override {
    if (!(std::cout << frame << '\n' << std::flush)) throw gateway::TransportError("stdout closed");
  }
};

gateway::WebSocketServer* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

int cmd_serve(const fs::path& scenario_path, const ServeArgs& args) {
  const Scenario scenario = read_scenario(scenario_path);
  gateway::SessionOptions options;
  options.real_time = !args.fast;
  options.debug_rssi = args.debug_rssi;
  options.run_dir = gateway::default_run_dir();

  if (args.stdio) {
    StdioTransport transport;
    std::thread reader([&transport] {
      std::string line;
      while (std::getline(std::cin, line)) {
        if (!line.empty()) transport.inbox.push(line);
      }
      transport.inbox.close();
    });
    // The reader may be parked in getline after the session ends.
    reader.detach();
    report_session(gateway::serve_session(scenario, transport, options));
    return kOk;
  }

  gateway::WebSocketServer server(args.address, args.port, [&](gateway::Transport& transport) {
    report_session(gateway::serve_session(scenario, transport, options));
  });
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "serving " << scenario.name << " on ws://" << args.address << ':' << server.port() << '\n';
  server.run(args.max_sessions);
  g_server = nullptr;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"seamquest: BLE museum ghost-quest simulator"};
  app.require_subcommand(1);

  std::string scenario;
  std::string log_path;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario headlessly and print metrics as JSON");
  run_cmd->add_option("scenario", scenario, "Scenario JSON file")->required();
  run_cmd->add_option("--log", log_path, "Write the event log (JSON lines) here");

  CoverageArgs cov;
  auto* cov_cmd = app.add_subcommand("coverage", "Write a signal coverage grid for every enabled beacon");
  cov_cmd->add_option("scenario", scenario, "Scenario JSON file")->required();
  cov_cmd->add_option("--resolution", cov.resolution, "Cell size in meters")->required()->check(CLI::PositiveNumber);
  cov_cmd->add_option("--out", cov.out, "Output directory (created if absent)")->capture_default_str();
  cov_cmd->add_option("--mode", cov.mode, "deterministic or mean")
      ->check(CLI::IsMember({"deterministic", "mean"}))
      ->capture_default_str();
  cov_cmd->add_option("--samples", cov.samples, "Draws per cell in mean mode")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cov_cmd->add_flag("--pgm", cov.pgm, "Also write one PGM image per beacon");

  ServeArgs srv;
  auto* serve_cmd = app.add_subcommand("serve", "Play live sessions over WebSocket (or stdio)");
  serve_cmd->add_option("scenario", scenario, "Scenario JSON file")->required();
  serve_cmd->add_option("--port", srv.port, "TCP port")->capture_default_str();
  serve_cmd->add_option("--address", srv.address, "Listen address")->capture_default_str();
  serve_cmd->add_flag("--debug-rssi", srv.debug_rssi, "Stream per-beacon rssi_debug frames");
  serve_cmd->add_flag("--stdio", srv.stdio, "Single session over stdin/stdout, one frame per line");
  serve_cmd->add_flag("--fast", srv.fast, "Lockstep replay mode instead of wall-clock pacing");
  serve_cmd->add_option("--max-sessions", srv.max_sessions, "Exit after this many sessions (0 = unlimited)");

  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file and report every problem");
  validate_cmd->add_option("scenario", scenario, "Scenario JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(scenario, log_path);
    if (*cov_cmd) return cmd_coverage(scenario, cov);
    if (*serve_cmd) return cmd_serve(scenario, srv);
    if (*validate_cmd) return cmd_validate(scenario);
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUnreadable;
  } catch (const ScenarioError& e) {
    std::cerr << "error: invalid scenario " << scenario << '\n';
    for (const auto& issue : e.issues()) std::cerr << "  " << issue.path << ": " << issue.message << '\n';
    return kInvalidScenario;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOutputFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kOk;
}
