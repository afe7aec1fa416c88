#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace seamquest {

/// Seeded random stream with platform-independent output.
///
/// The engine is std::mt19937_64 (its output sequence is fixed by the
/// standard). The standard distributions are implementation-defined, so the
/// uniform and Gaussian transforms are spelled out here; this keeps event
/// logs byte-identical across standard libraries.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed = 0) : engine_(seed) {}

  /// Derives an independent stream from a root seed and a name, e.g.
  /// "radio/b-amphora" or "game/jitter".
  static RandomStream named(std::uint64_t root_seed, std::string_view name);

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller; consumes exactly two engine outputs.
  double normal();

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finaliser; used to decorrelate derived seeds.
std::uint64_t mix_seed(std::uint64_t value);

}  // namespace seamquest
