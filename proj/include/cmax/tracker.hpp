#ifndef CMAX_TRACKER_HPP
#define CMAX_TRACKER_HPP

#include <functional>
#include <iosfwd>
#include <vector>

#include "cmax/events.hpp"
#include "cmax/optimizer.hpp"

namespace cmax {

struct TrackerConfig {
  std::size_t batch_size = 5000;
  Roi roi_init{0.0, 0.0, 64, 64};
  OptimizerConfig optimizer;  // shape is taken from roi_init
  double roi_update_scale = 1.0;
  std::size_t min_roi_events = 10;
  SensorGeometry sensor;
};

struct BatchRecord {
  std::size_t batch_index = 0;
  Roi roi;  // ROI the batch was processed in
  Velocityd velocity = Velocityd::Zero();
  double contrast = 0.0;
  std::size_t events_in_roi = 0;
  bool optimized = false;
  std::uint64_t votes_issued = 0;
  std::uint64_t readout_addresses = 0;
};

struct TrackResult {
  std::vector<BatchRecord> batches;
  Roi final_roi;
};

/// Called after each batch with the record and the images at the final velocity.
using BatchObserver = std::function<void(const BatchRecord&, const ImageSetd&)>;

/// Advances the ROI origin by scale * v, clamped to keep the ROI on the sensor.
Roi update_roi(const Roi& roi, const Velocityd& v, double scale,
               const SensorGeometry& sensor);

/// Splits the stream into consecutive batches and, per batch: normalizes,
/// selects the ROI events, estimates motion warm-started from the previous
/// batch, and moves the ROI.
TrackResult track(const std::vector<Event>& events, const TrackerConfig& cfg,
                  const BatchObserver& observer = {});

/// CSV: batch,x_roi,y_roi,vx,vy,contrast,events_in_roi
void write_track_csv(std::ostream& out, const TrackResult& result);

}  // namespace cmax

#endif  // CMAX_TRACKER_HPP
