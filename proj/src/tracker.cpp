#include "cmax/tracker.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "cmax/csv.hpp"

namespace cmax {

Roi update_roi(const Roi& roi, const Velocityd& v, double scale,
               const SensorGeometry& sensor) {
  Roi out = roi;
  const double max_x = std::max(0, sensor.width - roi.w);
  const double max_y = std::max(0, sensor.height - roi.h);
  out.x0 = std::clamp(roi.x0 + scale * v.x(), 0.0, max_x);
  out.y0 = std::clamp(roi.y0 + scale * v.y(), 0.0, max_y);
  return out;
}

TrackResult track(const std::vector<Event>& events, const TrackerConfig& cfg,
                  const BatchObserver& observer) {
  if (cfg.batch_size < 1) throw std::invalid_argument("track: batch_size must be >= 1");
  if (cfg.roi_init.w < 2 || cfg.roi_init.h < 2)
    throw std::invalid_argument("track: ROI must be at least 2x2");

  TrackResult result;
  Roi roi = update_roi(cfg.roi_init, Velocityd::Zero(), 0.0, cfg.sensor);
  OptimizerConfig opt = cfg.optimizer;
  opt.shape = {cfg.roi_init.w, cfg.roi_init.h};
  Velocityd v = opt.v_init;

  std::size_t index = 0;
  for (std::size_t begin = 0; begin < events.size(); begin += cfg.batch_size, ++index) {
    const std::size_t end = std::min(events.size(), begin + cfg.batch_size);
    for (std::size_t k = std::max<std::size_t>(begin, 1); k < end; ++k) {
      if (events[k].t < events[k - 1].t)
        throw std::invalid_argument("track: timestamps decrease at event " +
                                    std::to_string(k));
    }
    if (end - begin < cfg.batch_size && end - begin < cfg.min_roi_events) break;

    const EventBatch batch = make_batch({events.begin() + begin, events.begin() + end});
    const EventBatch local = filter_roi(batch, roi);

    BatchRecord rec;
    rec.batch_index = index;
    rec.roi = roi;
    rec.events_in_roi = local.size();

    ImageSetd images;
    if (local.size() >= cfg.min_roi_events && !local.empty()) {
      opt.v_init = v;
      const MotionEstimate est = estimate_motion(local, opt);
      v = est.v;
      rec.optimized = true;
      rec.votes_issued = est.trace.votes_issued;
      rec.readout_addresses = est.trace.readout_addresses;
    }
    if (observer || !local.empty()) {
      images = images_at(local, v, opt.shape, opt.event_offset);
      rec.contrast = contrast(images.iwe).variance;
    }
    rec.velocity = v;
    if (observer) observer(rec, images);
    result.batches.push_back(rec);

    roi = update_roi(roi, v, cfg.roi_update_scale, cfg.sensor);
  }
  result.final_roi = roi;
  return result;
}

void write_track_csv(std::ostream& out, const TrackResult& result) {
  CsvWriter csv(out);
  csv.row("batch", "x_roi", "y_roi", "vx", "vy", "contrast", "events_in_roi");
  for (const auto& r : result.batches) {
    csv.row(r.batch_index, r.roi.x0, r.roi.y0, r.velocity.x(), r.velocity.y(),
            r.contrast, r.events_in_roi);
  }
}

}  // namespace cmax
