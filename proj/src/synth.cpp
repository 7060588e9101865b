#include "cmax/synth.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "cmax/csv.hpp"

namespace cmax {

SceneShape parse_scene_shape(const std::string& name) {
  if (name == "square") return SceneShape::square;
  if (name == "bar") return SceneShape::bar;
  if (name == "points") return SceneShape::points;
  throw std::invalid_argument("unknown scene '" + name + "' (square|bar|points)");
}

std::string to_string(SceneShape shape) {
  switch (shape) {
    case SceneShape::square: return "square";
    case SceneShape::bar: return "bar";
    case SceneShape::points: return "points";
  }
  return "?";
}

Eigen::Vector2d SceneTruth::center_at(double t_us) const {
  return center0 + velocity_px_per_us * (t_us - t_mid0_us);
}

namespace {

/// Uniform point on the outline of a w x h rectangle centred at the origin.
Eigen::Vector2d rect_outline(double w, double h, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * (w + h));
  double s = u(rng);
  if (s < w) return {s - w / 2, -h / 2};
  s -= w;
  if (s < h) return {w / 2, s - h / 2};
  s -= h;
  if (s < w) return {w / 2 - s, h / 2};
  s -= w;
  return {-w / 2, h / 2 - s};
}

}  // namespace

SyntheticScene generate_scene(const SceneSpec& spec) {
  if (spec.batch_size < 2) throw std::invalid_argument("synth: batch_size must be >= 2");
  if (spec.event_period_us < 1) throw std::invalid_argument("synth: event period must be >= 1 us");
  if (spec.noise_fraction < 0.0 || spec.noise_fraction > 1.0)
    throw std::invalid_argument("synth: noise fraction must be in [0, 1]");

  std::mt19937_64 rng(spec.seed);
  std::bernoulli_distribution is_noise(spec.noise_fraction);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> noise_x(0, spec.sensor.width - 1);
  std::uniform_int_distribution<int> noise_y(0, spec.sensor.height - 1);

  std::vector<Eigen::Vector2d> cloud;
  if (spec.shape == SceneShape::points) {
    std::uniform_real_distribution<double> radius(0.0, spec.size / 2);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (std::size_t k = 0; k < spec.cloud_points; ++k) {
      const double r = radius(rng);
      const double a = angle(rng);
      cloud.emplace_back(r * std::cos(a), r * std::sin(a));
    }
  }
  std::uniform_int_distribution<std::size_t> pick(0, cloud.empty() ? 0 : cloud.size() - 1);

  const double period = static_cast<double>(spec.event_period_us);
  const double half_span = static_cast<double>(spec.batch_size - 1) * period / 2.0;

  SyntheticScene scene;
  SceneTruth& truth = scene.truth;
  truth.velocity = spec.velocity;
  truth.velocity_px_per_us = spec.velocity / half_span;
  truth.center0 = spec.center;
  truth.t_mid0_us = static_cast<double>(spec.t0_us) + half_span;
  for (std::size_t b = 0; b < spec.batches; ++b) {
    const double t_mid = truth.t_mid0_us + static_cast<double>(b * spec.batch_size) * period;
    truth.batches.push_back({t_mid, truth.center_at(t_mid)});
  }

  const std::size_t total = spec.batches * spec.batch_size;
  scene.events.reserve(total);
  truth.noise.reserve(total);
  for (std::size_t k = 0; k < total; ++k) {
    Event e;
    e.t = spec.t0_us + static_cast<std::int64_t>(k) * spec.event_period_us;
    e.p = coin(rng) ? 1 : -1;
    bool noise = is_noise(rng);
    if (!noise) {
      const Eigen::Vector2d c = truth.center_at(static_cast<double>(e.t));
      bool placed = false;
      for (int attempt = 0; attempt < 16 && !placed; ++attempt) {
        Eigen::Vector2d off;
        switch (spec.shape) {
          case SceneShape::square: off = rect_outline(spec.size, spec.size, rng); break;
          case SceneShape::bar: off = rect_outline(spec.size, spec.bar_width, rng); break;
          case SceneShape::points: off = cloud[pick(rng)]; break;
        }
        const Eigen::Vector2d pos = c + off;
        const double px = std::floor(pos.x() + 0.5);
        const double py = std::floor(pos.y() + 0.5);
        if (px >= 0 && py >= 0 && px < spec.sensor.width && py < spec.sensor.height) {
          e.x = static_cast<int>(px);
          e.y = static_cast<int>(py);
          placed = true;
        }
      }
      // An object that has left the sensor leaves only background activity.
      noise = !placed;
    }
    if (noise) {
      e.x = noise_x(rng);
      e.y = noise_y(rng);
    }
    scene.events.push_back(e);
    truth.noise.push_back(noise);
  }
  return scene;
}

void write_truth(std::ostream& out, const SceneSpec& spec, const SceneTruth& truth) {
  out << "# synthetic scene ground truth\n";
  out << "scene " << to_string(spec.shape) << '\n';
  out << "seed " << spec.seed << '\n';
  out << "velocity " << format_number(truth.velocity.x()) << ' '
      << format_number(truth.velocity.y()) << '\n';
  out << "velocity_px_per_us " << format_number(truth.velocity_px_per_us.x()) << ' '
      << format_number(truth.velocity_px_per_us.y()) << '\n';
  out << "batch_size " << spec.batch_size << '\n';
  out << "event_period_us " << spec.event_period_us << '\n';
  out << "# batch <index> <t_mid_us> <center_x> <center_y>\n";
  for (std::size_t b = 0; b < truth.batches.size(); ++b) {
    const auto& bt = truth.batches[b];
    out << "batch " << b << ' ' << format_number(bt.t_mid_us) << ' '
        << format_number(bt.center.x()) << ' ' << format_number(bt.center.y()) << '\n';
  }
  out << "# tag <event index> <object|noise>\n";
  for (std::size_t k = 0; k < truth.noise.size(); ++k)
    out << "tag " << k << ' ' << (truth.noise[k] ? "noise" : "object") << '\n';
}

}  // namespace cmax
