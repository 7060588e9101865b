#include <sstream>

#include <gtest/gtest.h>

#include "cmax/cyclemodel.hpp"

using namespace cmax;

TEST(CyclesPerBatch, ReferenceExperiment) {
  CycleParams p;  // N=5000, T=100, n=800, P=4096
  EXPECT_EQ(cycles_per_batch(p), 194100u);
  EXPECT_NEAR(batch_time(p), 0.9243e-3, 5e-8);
}

TEST(CyclesPerBatch, FullFrameComparison) {
  CycleParams p;
  p.iterations = 90;
  p.roi_events = 5000;
  p.roi_pixels = 240 * 180;
  p.clock_hz = 200e6;
  EXPECT_EQ(cycles_per_batch(p), 1433030u);
  EXPECT_NEAR(batch_time(p), 7.16515e-3, 1e-9);
}

TEST(CyclesPerBatch, ZeroWork) {
  CycleParams p;
  p.n_events = 0;
  p.iterations = 0;
  EXPECT_EQ(cycles_per_batch(p), 0u);
}

TEST(CyclesPerBatch, Errors) {
  CycleParams p;
  p.roi_pixels = 63 * 63;
  EXPECT_THROW(cycles_per_batch(p), std::invalid_argument);
  p.roi_pixels = 64;
  p.clock_hz = 0;
  EXPECT_THROW(batch_time(p), std::invalid_argument);
}

TEST(CyclesPerBatch, MonotoneInEveryParameter) {
  const CycleParams base;
  const auto c0 = cycles_per_batch(base);
  for (int field = 0; field < 6; ++field) {
    CycleParams p = base;
    std::uint64_t* f[] = {&p.n_events, &p.iterations, &p.roi_events,
                          &p.roi_pixels, &p.readout_latency, &p.voting_latency};
    *f[field] += field == 3 ? 4 : 1;
    EXPECT_GE(cycles_per_batch(p), c0) << "field " << field;
  }
}

TEST(BatchTime, LinearInClock) {
  CycleParams p;
  const double t = batch_time(p);
  p.clock_hz *= 2;
  EXPECT_DOUBLE_EQ(batch_time(p), t / 2);
}

TEST(SpeedupReport, ReferenceTimings) {
  const auto rows = speedup_report(CycleParams{}, reference_timings());
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].speedup, 1.0);
  EXPECT_EQ(to_significant(rows[1].speedup, 3), "201");
  EXPECT_EQ(to_significant(rows[2].speedup, 3), "512");
}

TEST(SpeedupReport, EmptyAndEqualRows) {
  const CycleParams p;
  EXPECT_EQ(speedup_report(p, {}).size(), 1u);
  const auto rows = speedup_report(p, {{"same", batch_time(p)}});
  EXPECT_EQ(to_significant(rows[1].speedup, 3), "1.00");
}

TEST(CycleReport, TextAndCsv) {
  const CycleParams p;
  const auto rows = speedup_report(p, reference_timings());
  std::ostringstream text, csv;
  write_cycle_report(text, p, rows, ReportFormat::text);
  write_cycle_report(csv, p, rows, ReportFormat::csv);
  EXPECT_NE(text.str().find("cycles per batch: 194100"), std::string::npos);
  EXPECT_NE(text.str().find("0.9243 ms"), std::string::npos);
  EXPECT_NE(text.str().find("201x"), std::string::npos);
  EXPECT_EQ(csv.str().rfind("label,seconds,speedup,cycles\n", 0), 0u);
  EXPECT_NE(csv.str().find("CPU,0.18596,"), std::string::npos);
}

TEST(Significant, Formatting) {
  EXPECT_EQ(to_significant(0.92428571, 4), "0.9243");
  EXPECT_EQ(to_significant(7.16515, 2), "7.2");
  EXPECT_EQ(to_significant(201.19, 3), "201");
  EXPECT_EQ(to_significant(0.0, 3), "0");
}
