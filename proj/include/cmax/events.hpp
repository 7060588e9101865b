#ifndef CMAX_EVENTS_HPP
#define CMAX_EVENTS_HPP

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmax {

/// One DVS event. Coordinates are sensor pixels, or ROI-local pixels once
/// the event has passed through filter_roi().
struct Event {
  std::int64_t t = 0;  // microseconds
  int x = 0;
  int y = 0;
  int p = 1;  // -1 or +1

  friend bool operator==(const Event&, const Event&) = default;
};

struct SensorGeometry {
  int width = 240;
  int height = 180;
};

/// Region of interest. The origin is real-valued so the tracker can move it
/// by sub-pixel amounts; pixel membership always uses floor(origin).
struct Roi {
  double x0 = 0.0;
  double y0 = 0.0;
  int w = 64;
  int h = 64;

  int col0() const;
  int row0() const;
  bool contains(int x, int y) const;
};

/// A batch of events normalized around its temporal midpoint.
///
/// norm_dts[k] = (t_k - t_ref) / half_span, so the first event sits at -1
/// and the last at +1. A batch produced by filter_roi() keeps the parent
/// batch's t_ref and half_span, and its event coordinates are relative to
/// (origin_x, origin_y).
struct EventBatch {
  std::vector<Event> events;
  std::vector<double> norm_dts;
  double t_ref = 0.0;
  double half_span = 0.0;
  int origin_x = 0;
  int origin_y = 0;

  std::size_t size() const { return events.size(); }
  bool empty() const { return events.empty(); }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EventFormat { text };

/// Reads "t x y p" lines. A timestamp containing a decimal point is taken
/// as seconds and rounded to microseconds, otherwise as integer microseconds.
/// Blank lines and lines starting with '#' are skipped.
std::vector<Event> parse_events(std::istream& in, const SensorGeometry& sensor,
                                EventFormat format = EventFormat::text);

std::vector<Event> load_events(const std::string& path,
                               const SensorGeometry& sensor);

void write_events(std::ostream& out, const std::vector<Event>& events);

/// Throws std::invalid_argument on empty or unsorted input.
EventBatch make_batch(std::vector<Event> events);

/// Keeps events inside the ROI, rebased to ROI-local coordinates. The
/// normalization of the input batch is preserved.
EventBatch filter_roi(const EventBatch& batch, const Roi& roi);

}  // namespace cmax

#endif  // CMAX_EVENTS_HPP
