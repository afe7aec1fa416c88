#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "seamquest/error.hpp"
#include "seamquest/harness.hpp"

namespace seamquest {

CoverageMap coverage_map(const Floorplan& floorplan, std::span<const Beacon> beacons,
                         const RadioParams& params, const CoverageOptions& options) {
  if (!(options.resolution > 0.0)) throw DomainError("coverage_map: resolution must be positive");
  const Rect& b = floorplan.bounds;
  CoverageMap map;
  map.resolution = options.resolution;
  map.columns = std::max<std::size_t>(1, static_cast<std::size_t>(b.width() / options.resolution + 1e-9));
  map.rows = std::max<std::size_t>(1, static_cast<std::size_t>(b.height() / options.resolution + 1e-9));

  std::vector<const Beacon*> active;
  std::vector<RandomStream> streams;
  for (const Beacon& beacon : beacons) {
    if (!beacon.enabled) continue;
    active.push_back(&beacon);
    map.beacon_ids.push_back(beacon.id);
    streams.push_back(RandomStream::named(options.seed, "coverage/" + beacon.id));
  }

  const double r = options.resolution;
  map.cells.reserve(map.columns * map.rows);
  for (std::size_t row = 0; row < map.rows; ++row) {
    for (std::size_t col = 0; col < map.columns; ++col) {
      CoverageCell cell;
      cell.center = {b.min.x + (static_cast<double>(col) + 0.5) * r,
                     b.min.y + (static_cast<double>(row) + 0.5) * r};
      cell.reachable = !floorplan.inside_obstacle(cell.center);
      if (cell.reachable) {
        for (std::size_t i = 0; i < active.size(); ++i) {
          VisitorState v;
          v.position = cell.center;
          const Vec2 to_beacon = active[i]->position - cell.center;
          v.facing = norm(to_beacon) > 0.0 ? to_beacon : Vec2{1.0, 0.0};
          double rssi = mean_rssi(*active[i], v, floorplan, {}, params);
          if (options.mode == CoverageMode::kMeanOfK && options.samples > 0) {
            double noise = 0.0;
            for (std::size_t k = 0; k < options.samples; ++k) {
              noise += params.sigma_slow * streams[i].normal() + params.sigma_fast * streams[i].normal();
            }
            rssi += noise / static_cast<double>(options.samples);
          }
          cell.rssi.push_back(rssi >= params.detect_floor ? std::optional<double>(rssi) : std::nullopt);
        }
      }
      map.cells.push_back(std::move(cell));
    }
  }
  return map;
}

namespace {
std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

void write_coverage_csv(const CoverageMap& map, std::ostream& out) {
  out << "x,y,beacon_id,rssi\n";
  for (const CoverageCell& cell : map.cells) {
    for (std::size_t i = 0; i < map.beacon_ids.size(); ++i) {
      out << number(cell.center.x) << ',' << number(cell.center.y) << ',' << map.beacon_ids[i] << ',';
      if (!cell.reachable) {
        out << "unreachable";
      } else if (cell.rssi[i]) {
        out << number(*cell.rssi[i]);
      } else {
        out << "none";
      }
      out << '\n';
    }
  }
}

void write_coverage_pgm(const CoverageMap& map, std::size_t beacon_index, const RadioParams& params,
                        std::ostream& out) {
  out << "P5\n" << map.columns << ' ' << map.rows << "\n255\n";
  const double span = params.p_ref - params.detect_floor;
  for (std::size_t r = map.rows; r-- > 0;) {
    for (std::size_t c = 0; c < map.columns; ++c) {
      const CoverageCell& cell = map.at(c, r);
      unsigned char px = 0;
      if (cell.reachable && cell.rssi[beacon_index]) {
        const double f = std::clamp((*cell.rssi[beacon_index] - params.detect_floor) / span, 0.0, 1.0);
        px = static_cast<unsigned char>(1 + std::lround(f * 254.0));
      }
      out.put(static_cast<char>(px));
    }
  }
}

}  // namespace seamquest
