#include "cmax/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "cmax/csv.hpp"

namespace cmax {

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.input_path == b.input_path && a.sensor.width == b.sensor.width &&
         a.sensor.height == b.sensor.height && a.roi.x0 == b.roi.x0 &&
         a.roi.y0 == b.roi.y0 && a.roi.w == b.roi.w && a.roi.h == b.roi.h &&
         a.batch_size == b.batch_size && a.iterations == b.iterations &&
         a.learning_rate == b.learning_rate &&
         a.roi_update_scale == b.roi_update_scale &&
         a.min_roi_events == b.min_roi_events &&
         a.accumulator_mode == b.accumulator_mode && a.output_dir == b.output_dir &&
         a.dump_iwe == b.dump_iwe && a.seed == b.seed;
}

std::string to_string(AccumulatorMode mode) {
  return mode == AccumulatorMode::banked ? "banked" : "naive";
}

AccumulatorMode parse_accumulator_mode(const std::string& s) {
  if (s == "naive") return AccumulatorMode::naive;
  if (s == "banked") return AccumulatorMode::banked;
  throw ConfigError("accumulator mode must be 'naive' or 'banked', got '" + s + "'");
}

namespace {

template <typename T>
T number(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("bad value for '" + key + "': '" + value + "'");
  return out;
}

bool boolean(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("bad boolean for '" + key + "': '" + value + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "input_path") cfg.input_path = value;
  else if (key == "sensor_width") cfg.sensor.width = number<int>(key, value);
  else if (key == "sensor_height") cfg.sensor.height = number<int>(key, value);
  else if (key == "roi_x0") cfg.roi.x0 = number<double>(key, value);
  else if (key == "roi_y0") cfg.roi.y0 = number<double>(key, value);
  else if (key == "roi_w") cfg.roi.w = number<int>(key, value);
  else if (key == "roi_h") cfg.roi.h = number<int>(key, value);
  else if (key == "batch_size") cfg.batch_size = number<std::size_t>(key, value);
  else if (key == "iterations") cfg.iterations = number<int>(key, value);
  else if (key == "learning_rate") {
    if (value == "auto") cfg.learning_rate.reset();
    else cfg.learning_rate = number<double>(key, value);
  } else if (key == "roi_update_scale") cfg.roi_update_scale = number<double>(key, value);
  else if (key == "min_roi_events") cfg.min_roi_events = number<std::size_t>(key, value);
  else if (key == "accumulator_mode") cfg.accumulator_mode = parse_accumulator_mode(value);
  else if (key == "output_dir") cfg.output_dir = value;
  else if (key == "dump_iwe") cfg.dump_iwe = boolean(key, value);
  else if (key == "seed") cfg.seed = number<std::uint64_t>(key, value);
  else throw ConfigError("unknown config key '" + key + "'");
}

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    set_config_value(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse_config(in);
}

void write_config(std::ostream& out, const RunConfig& cfg) {
  out << "input_path = " << cfg.input_path << '\n'
      << "sensor_width = " << cfg.sensor.width << '\n'
      << "sensor_height = " << cfg.sensor.height << '\n'
      << "roi_x0 = " << format_number(cfg.roi.x0) << '\n'
      << "roi_y0 = " << format_number(cfg.roi.y0) << '\n'
      << "roi_w = " << cfg.roi.w << '\n'
      << "roi_h = " << cfg.roi.h << '\n'
      << "batch_size = " << cfg.batch_size << '\n'
      << "iterations = " << cfg.iterations << '\n'
      << "learning_rate = "
      << (cfg.learning_rate ? format_number(*cfg.learning_rate) : std::string("auto")) << '\n'
      << "roi_update_scale = " << format_number(cfg.roi_update_scale) << '\n'
      << "min_roi_events = " << cfg.min_roi_events << '\n'
      << "accumulator_mode = " << to_string(cfg.accumulator_mode) << '\n'
      << "output_dir = " << cfg.output_dir << '\n'
      << "dump_iwe = " << (cfg.dump_iwe ? "true" : "false") << '\n'
      << "seed = " << cfg.seed << '\n';
}

TrackerConfig tracker_config(const RunConfig& cfg) {
  TrackerConfig t;
  t.batch_size = cfg.batch_size;
  t.roi_init = cfg.roi;
  t.roi_update_scale = cfg.roi_update_scale;
  t.min_roi_events = cfg.min_roi_events;
  t.sensor = cfg.sensor;
  t.optimizer.iterations = cfg.iterations;
  t.optimizer.learning_rate = cfg.learning_rate;
  t.optimizer.accumulator_mode = cfg.accumulator_mode;
  t.optimizer.shape = {cfg.roi.w, cfg.roi.h};
  return t;
}

}  // namespace cmax
