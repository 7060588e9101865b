#ifndef CMAX_CONFIG_HPP
#define CMAX_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "cmax/events.hpp"
#include "cmax/optimizer.hpp"
#include "cmax/tracker.hpp"

namespace cmax {

/// Settings for one CLI run. Stored as flat "key = value" text; '#' starts a
/// comment line.
struct RunConfig {
  std::string input_path;
  SensorGeometry sensor;
  Roi roi{88.0, 58.0, 64, 64};
  std::size_t batch_size = 5000;
  int iterations = 100;
  std::optional<double> learning_rate;  // "auto" when unset
  double roi_update_scale = 1.0;
  std::size_t min_roi_events = 10;
  AccumulatorMode accumulator_mode = AccumulatorMode::naive;
  std::string output_dir = ".";
  bool dump_iwe = false;
  std::uint64_t seed = 1;

  friend bool operator==(const RunConfig&, const RunConfig&);
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string to_string(AccumulatorMode mode);
AccumulatorMode parse_accumulator_mode(const std::string& s);

/// Applies one key/value to cfg. Throws ConfigError on unknown keys or bad values.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);
void write_config(std::ostream& out, const RunConfig& cfg);

TrackerConfig tracker_config(const RunConfig& cfg);

}  // namespace cmax

#endif  // CMAX_CONFIG_HPP
