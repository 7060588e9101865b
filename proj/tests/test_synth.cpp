#include <sstream>

#include <gtest/gtest.h>

#include "cmax/synth.hpp"

using namespace cmax;

TEST(Synth, SeedDeterminism) {
  SceneSpec spec;
  spec.velocity = {2, -1};
  spec.batches = 3;
  spec.noise_fraction = 0.1;
  const auto a = generate_scene(spec);
  const auto b = generate_scene(spec);
  EXPECT_EQ(a.events, b.events);
  std::ostringstream ta, tb;
  write_truth(ta, spec, a.truth);
  write_truth(tb, spec, b.truth);
  EXPECT_EQ(ta.str(), tb.str());
  spec.seed = 2;
  EXPECT_NE(generate_scene(spec).events, a.events);
}

TEST(Synth, TimestampsAndSensorBounds) {
  SceneSpec spec;
  spec.shape = SceneShape::bar;
  spec.velocity = {40, 30};  // leaves the sensor partway through
  spec.batches = 4;
  const auto s = generate_scene(spec);
  ASSERT_EQ(s.events.size(), 4u * 5000u);
  for (std::size_t k = 0; k < s.events.size(); ++k) {
    const auto& e = s.events[k];
    ASSERT_EQ(e.t, static_cast<std::int64_t>(k) * 10);
    ASSERT_GE(e.x, 0);
    ASSERT_LT(e.x, 240);
    ASSERT_GE(e.y, 0);
    ASSERT_LT(e.y, 180);
    ASSERT_TRUE(e.p == 1 || e.p == -1);
  }
}

TEST(Synth, ZeroVelocityIsStatic) {
  SceneSpec spec;
  spec.batches = 2;
  const auto s = generate_scene(spec);
  for (const auto& e : s.events) {
    // Square outline of side 20 centred at (120, 90).
    const double dx = std::abs(e.x - 120.0), dy = std::abs(e.y - 90.0);
    ASSERT_LE(std::max(dx, dy), 10.5);
    ASSERT_GE(std::max(dx, dy), 9.5);
  }
  EXPECT_EQ(s.truth.batches[0].center, s.truth.batches[1].center);
}

TEST(Synth, NoiseFraction) {
  SceneSpec spec;
  spec.velocity = {1, 1};
  spec.noise_fraction = 0.2;
  const auto s = generate_scene(spec);
  std::size_t noisy = 0;
  for (bool n : s.truth.noise) noisy += n;
  EXPECT_NEAR(static_cast<double>(noisy) / s.truth.noise.size(), 0.2, 0.01);
}

TEST(Synth, TruthTracksVelocity) {
  SceneSpec spec;
  spec.velocity = {3, -2};
  spec.batches = 3;
  const auto s = generate_scene(spec);
  // One batch spans two normalized time units.
  const Eigen::Vector2d step = s.truth.batches[1].center - s.truth.batches[0].center;
  EXPECT_NEAR(step.x(), 6.0 * 5000.0 / 4999.0, 1e-9);
  EXPECT_NEAR(step.y(), -4.0 * 5000.0 / 4999.0, 1e-9);
  EXPECT_EQ(s.truth.batches[0].center, Eigen::Vector2d(120, 90));
  EXPECT_DOUBLE_EQ(s.truth.batches[0].t_mid_us, 4999.0 * 10 / 2);
}

TEST(Synth, TruthFile) {
  SceneSpec spec;
  spec.batches = 1;
  spec.batch_size = 4;
  spec.velocity = {0.5, 0};
  const auto s = generate_scene(spec);
  std::ostringstream out;
  write_truth(out, spec, s.truth);
  const std::string text = out.str();
  EXPECT_NE(text.find("scene square\n"), std::string::npos);
  EXPECT_NE(text.find("velocity 0.5 0\n"), std::string::npos);
  EXPECT_NE(text.find("batch 0 15 120 90\n"), std::string::npos);
  EXPECT_NE(text.find("tag 3 object\n"), std::string::npos);
}

TEST(Synth, SceneNames) {
  for (auto s : {SceneShape::square, SceneShape::bar, SceneShape::points})
    EXPECT_EQ(parse_scene_shape(to_string(s)), s);
  EXPECT_THROW(parse_scene_shape("circle"), std::invalid_argument);
  SceneSpec spec;
  spec.noise_fraction = 1.5;
  EXPECT_THROW(generate_scene(spec), std::invalid_argument);
}
