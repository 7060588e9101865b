#ifndef CMAX_SYNTH_HPP
#define CMAX_SYNTH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cmax/events.hpp"
#include "cmax/warp.hpp"

namespace cmax {

enum class SceneShape { square, bar, points };

SceneShape parse_scene_shape(const std::string& name);
std::string to_string(SceneShape shape);

/// A rigid object translating at constant velocity, sampled as a uniform-rate
/// event stream. Event k fires at t0 + k * event_period_us. Velocity is in
/// pixels per normalized time unit of a batch_size-event batch, i.e. per half
/// of (batch_size - 1) * event_period_us.
struct SceneSpec {
  SceneShape shape = SceneShape::square;
  Velocityd velocity = Velocityd::Zero();
  std::size_t batches = 10;
  std::size_t batch_size = 5000;
  std::int64_t t0_us = 0;
  std::int64_t event_period_us = 10;
  SensorGeometry sensor;
  /// Object centre at the temporal midpoint of the first batch.
  Eigen::Vector2d center{120.0, 90.0};
  /// Square side, bar length, or point-cloud diameter in pixels.
  double size = 20.0;
  /// Bar thickness in pixels.
  double bar_width = 6.0;
  std::size_t cloud_points = 40;
  double noise_fraction = 0.0;
  std::uint64_t seed = 1;
};

struct BatchTruth {
  double t_mid_us = 0.0;
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
};

struct SceneTruth {
  Velocityd velocity = Velocityd::Zero();
  Eigen::Vector2d velocity_px_per_us = Eigen::Vector2d::Zero();
  std::vector<BatchTruth> batches;
  std::vector<bool> noise;  // per event

  /// Object centre at an arbitrary time.
  Eigen::Vector2d center_at(double t_us) const;
  Eigen::Vector2d center0 = Eigen::Vector2d::Zero();
  double t_mid0_us = 0.0;
};

struct SyntheticScene {
  std::vector<Event> events;
  SceneTruth truth;
};

SyntheticScene generate_scene(const SceneSpec& spec);

void write_truth(std::ostream& out, const SceneSpec& spec, const SceneTruth& truth);

}  // namespace cmax

#endif  // CMAX_SYNTH_HPP
