#include <random>

#include <gtest/gtest.h>

#include "seamquest/error.hpp"
#include "seamquest/sensing.hpp"
#include "sensing_oracle.hpp"

namespace seamquest {
namespace {

RssiSample at(double t, std::optional<double> v) { return {t, "b", v}; }

// Feeds samples every tick from t0 through t1 (inclusive) using f(t).
template <class F>
void feed(BeaconHistory& h, double t0, double t1, F f, const SmoothingConfig& cfg, double dt = 0.1) {
  const auto n = static_cast<long>(std::llround((t1 - t0) / dt));
  for (long k = 0; k <= n; ++k) {
    const double t = t0 + double(k) * dt;
    ingest(h, at(t, f(t)), cfg);
  }
}

TEST(Ingest, FirstSampleEvictionAndRegression) {
  SmoothingConfig cfg;
  BeaconHistory h{"b", {}, std::nullopt};
  ingest(h, at(0.0, -70.0), cfg);
  EXPECT_EQ(h.samples.size(), 1u);
  ingest(h, at(cfg.window + 0.5, -70.0), cfg);
  EXPECT_EQ(h.samples.size(), 1u);  // the first is now older than the window
  EXPECT_THROW(ingest(h, at(1.0, -70.0), cfg), ContractError);
  EXPECT_THROW(ingest(h, RssiSample{10.0, "other", -70.0}, cfg), ContractError);
}

TEST(Estimate, ConstantSeriesIsSteadyMid) {
  SmoothingConfig cfg;
  BeaconHistory h{"b", {}, std::nullopt};
  feed(h, 0.0, 10.0, [](double) { return -70.0; }, cfg);
  const auto e = estimate(h, 10.0, cfg);
  EXPECT_EQ(e.zone, Zone::kMid);
  EXPECT_EQ(e.trend, Trend::kSteady);
  EXPECT_DOUBLE_EQ(*e.smoothed_rssi, -70.0);
}

TEST(Estimate, ConstantIdempotenceForEveryMethod) {
  for (auto m : {SmoothingMethod::kEwma, SmoothingMethod::kMedian, SmoothingMethod::kRaw}) {
    SmoothingConfig cfg;
    cfg.method = m;
    BeaconHistory h{"b", {}, std::nullopt};
    feed(h, 0.0, 7.3, [](double) { return -61.25; }, cfg);
    EXPECT_DOUBLE_EQ(*estimate(h, 7.3, cfg).smoothed_rssi, -61.25) << to_string(m);
  }
}

TEST(Estimate, RisingSeriesIsWarmer) {
  SmoothingConfig cfg;
  BeaconHistory h{"b", {}, std::nullopt};
  oracle::Record rec;
  auto f = [](double t) { return t <= 4.0 ? -80.0 : std::min(-65.0, -80.0 + 7.5 * (t - 4.0)); };
  for (int k = 0; k <= 60; ++k) {
    const auto s = at(0.1 * k, f(0.1 * k));
    ingest(h, s, cfg);
    rec.all.push_back(s);
  }
  const auto e = estimate(h, 6.0, cfg);
  EXPECT_EQ(e.trend, Trend::kWarmer);
  EXPECT_EQ(e, oracle::estimate(rec, "b", 6.0, cfg));
}

TEST(Estimate, LostAfterTimeoutWithUnknownTrend) {
  SmoothingConfig cfg;
  BeaconHistory h{"b", {}, std::nullopt};
  feed(h, 0.0, 5.0, [](double) { return -70.0; }, cfg);
  feed(h, 5.1, 9.0, [](double) { return std::nullopt; }, cfg);
  EXPECT_NE(estimate(h, 9.0, cfg).zone, Zone::kLost);  // 4.0 s since the last detection
  ingest(h, at(9.2, std::nullopt), cfg);
  const auto e = estimate(h, 9.2, cfg);
  EXPECT_EQ(e.zone, Zone::kLost);
  EXPECT_EQ(e.trend, Trend::kUnknown);
}

TEST(Estimate, EmptyHistory) {
  SmoothingConfig cfg;
  const BeaconHistory h{"b", {}, std::nullopt};
  const auto e = estimate(h, 3.0, cfg);
  EXPECT_EQ(e.zone, Zone::kLost);
  EXPECT_EQ(e.trend, Trend::kUnknown);
  EXPECT_FALSE(e.smoothed_rssi);
  EXPECT_FALSE(arrival_check(h, 3.0, cfg));
}

TEST(Estimate, ShortHistoryHasUnknownTrend) {
  SmoothingConfig cfg;
  BeaconHistory h{"b", {}, std::nullopt};
  feed(h, 0.0, 1.5, [](double) { return -70.0; }, cfg);
  EXPECT_EQ(estimate(h, 1.5, cfg).trend, Trend::kUnknown);
}

TEST(Estimate, MedianIgnoresOneOutlier) {
  SmoothingConfig cfg;
  cfg.method = SmoothingMethod::kMedian;
  BeaconHistory h{"b", {}, std::nullopt};
  feed(h, 0.0, 5.0, [](double t) { return std::abs(t - 2.5) < 1e-9 ? -40.0 : -72.0; }, cfg);
  EXPECT_DOUBLE_EQ(*estimate(h, 5.0, cfg).smoothed_rssi, -72.0);
}

TEST(Estimate, MonotoneResponseNeverLeavesNear) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-90, -50), bump(0.01, 10);
  SmoothingConfig cfg;
  for (int trial = 0; trial < 300; ++trial) {
    BeaconHistory lo{"b", {}, std::nullopt}, hi{"b", {}, std::nullopt};
    for (int k = 0; k <= 50; ++k) {
      const double v = u(rng);
      ingest(lo, at(0.1 * k, v), cfg);
      ingest(hi, at(0.1 * k, v + bump(rng)), cfg);
    }
    if (estimate(lo, 5.0, cfg).zone == Zone::kNear) {
      EXPECT_EQ(estimate(hi, 5.0, cfg).zone, Zone::kNear);
    }
  }
}

TEST(Arrival, HeldAboveThreshold) {
  SmoothingConfig cfg;
  BeaconHistory h{"b", {}, std::nullopt};
  feed(h, 0.0, 3.0, [](double) { return -58.0; }, cfg);
  EXPECT_TRUE(arrival_check(h, 3.0, cfg));
  EXPECT_FALSE(arrival_check(h, 3.0 - 0.1, cfg));  // not yet 3 s of history at 2.9
}

TEST(Arrival, OneTickSpikeIsNotEnough) {
  SmoothingConfig cfg;
  cfg.method = SmoothingMethod::kRaw;
  BeaconHistory h{"b", {}, std::nullopt};
  feed(h, 0.0, 5.0, [](double t) { return t > 4.95 ? -50.0 : -75.0; }, cfg);
  EXPECT_GE(*estimate(h, 5.0, cfg).smoothed_rssi, cfg.arrival_dbm);
  EXPECT_FALSE(arrival_check(h, 5.0, cfg));
}

TEST(Arrival, DropInsideHoldResets) {
  SmoothingConfig cfg;
  cfg.method = SmoothingMethod::kRaw;
  BeaconHistory h{"b", {}, std::nullopt};
  feed(h, 0.0, 6.0, [](double t) { return std::abs(t - 4.0) < 1e-9 ? -70.0 : -55.0; }, cfg);
  EXPECT_FALSE(arrival_check(h, 6.0, cfg));
  feed(h, 6.1, 7.1, [](double) { return -55.0; }, cfg);
  EXPECT_TRUE(arrival_check(h, 7.1, cfg));
}

TEST(SmoothingConfig, Violations) {
  SmoothingConfig cfg;
  EXPECT_TRUE(cfg.violations(-95).empty());
  cfg.trend_gap = cfg.window;
  cfg.mid_dbm = -50;
  EXPECT_GE(cfg.violations(-95).size(), 2u);
}

TEST(SensingOracle, RandomStreamsAgree) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    SmoothingConfig cfg;
    cfg.method = static_cast<SmoothingMethod>(trial % 3);
    BeaconHistory h{"b", {}, std::nullopt};
    oracle::Record rec;
    std::uniform_real_distribution<double> dt(0.0, 0.4), v(-95, -50), p(0, 1);
    double t = 0.0;
    for (int k = 0; k < 150; ++k) {
      t += dt(rng);
      const auto s = at(t, p(rng) < 0.2 ? std::nullopt : std::optional<double>(std::round(v(rng))));
      ingest(h, s, cfg);
      rec.all.push_back(s);
      ASSERT_EQ(estimate(h, t, cfg), oracle::estimate(rec, "b", t, cfg)) << trial << "/" << k;
      ASSERT_EQ(arrival_check(h, t, cfg), oracle::arrived(rec, t, cfg)) << trial << "/" << k;
    }
  }
}

}  // namespace
}  // namespace seamquest
