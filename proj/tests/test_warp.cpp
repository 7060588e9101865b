#include <random>

#include <gtest/gtest.h>

#include "cmax/synth.hpp"
#include "cmax/warp.hpp"

using namespace cmax;

TEST(WarpEvent, Examples) {
  auto w = warp_event(10.0, 20.0, 0.5, Velocityd(0, 0));
  EXPECT_EQ(w.xw, 10.0);
  EXPECT_EQ(w.yw, 20.0);

  w = warp_event(10.0, 20.0, 1.0, Velocityd(4, -2));
  EXPECT_EQ(w.xw, 6.0);
  EXPECT_EQ(w.yw, 22.0);
  EXPECT_EQ(w.norm_dt, 1.0);

  w = warp_event(10.0, 20.0, -1.0, Velocityd(4, -2));
  EXPECT_EQ(w.xw, 14.0);
  EXPECT_EQ(w.yw, 18.0);
}

TEST(WarpEvent, AffineAntisymmetricAndFixedAtZeroDt) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10, 10), d(-1, 1);
  for (int k = 0; k < 1000; ++k) {
    const double x = u(rng), y = u(rng), dt = d(rng);
    const Velocityd v1(u(rng), u(rng)), v2(u(rng), u(rng));
    const auto a = warp_event(x, y, dt, Velocityd(v1 + v2));
    const auto b = warp_event(x, y, dt, v1);
    EXPECT_NEAR(a.xw - b.xw, -dt * v2.x(), 1e-12);
    EXPECT_NEAR(a.yw - b.yw, -dt * v2.y(), 1e-12);

    const auto c = warp_event(x, y, -dt, Velocityd(-v1));
    EXPECT_EQ(c.xw, b.xw);
    EXPECT_EQ(c.yw, b.yw);

    const auto z = warp_event(x, y, 0.0, v1);
    EXPECT_EQ(z.xw, x);
    EXPECT_EQ(z.yw, y);
  }
}

TEST(WarpBatch, ZeroVelocityIsIdentity) {
  const auto b = make_batch({{0, 3, 4, 1}, {10, 7, 1, -1}, {20, 9, 9, 1}});
  const auto w = warp_batch(b, Velocityd(0, 0));
  ASSERT_EQ(w.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(w[k].xw, b.events[k].x);
    EXPECT_EQ(w[k].yw, b.events[k].y);
    EXPECT_EQ(w[k].norm_dt, b.norm_dts[k]);
  }
}

TEST(WarpBatch, ReferenceTimeEventsAreFixed) {
  const auto b = make_batch({{5, 3, 4, 1}, {5, 7, 1, -1}});
  for (const auto& w : warp_batch(b, Velocityd(17.0, -3.0))) EXPECT_EQ(w.norm_dt, 0.0);
  const auto w = warp_batch(b, Velocityd(17.0, -3.0));
  EXPECT_EQ(w[0].xw, 3.0);
  EXPECT_EQ(w[1].yw, 1.0);
}

TEST(WarpBatch, TrueVelocityCollapsesPoint) {
  // A single point translating at u, with positions kept real-valued so
  // the collapse is exact up to rounding.
  const Velocityd u(3.0, -2.0);
  EventBatch b = make_batch({{0, 0, 0, 1}, {250, 0, 0, 1}, {600, 0, 0, 1}, {1000, 0, 0, 1}});
  const Eigen::Vector2d p0(20.25, 30.5);
  std::vector<WarpedEventd> moved;
  for (double dt : b.norm_dts) {
    const Eigen::Vector2d p = p0 + dt * u;
    moved.push_back(warp_event(p.x(), p.y(), dt, u));
  }
  for (const auto& w : moved) {
    EXPECT_NEAR(w.xw, p0.x(), 1e-9);
    EXPECT_NEAR(w.yw, p0.y(), 1e-9);
  }
}

TEST(WarpBatch, OffsetShiftsCoordinates) {
  const auto b = make_batch({{0, 3, 4, 1}, {10, 7, 1, -1}});
  const auto w = warp_batch(b, Velocityd(1, 1), 0.5);
  EXPECT_EQ(w[0].xw, 3.5 + 1.0);
  EXPECT_EQ(w[1].yw, 1.5 - 1.0);
}
