#include "cmax/events.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cmax {

int Roi::col0() const { return static_cast<int>(std::floor(x0)); }
int Roi::row0() const { return static_cast<int>(std::floor(y0)); }

bool Roi::contains(int x, int y) const {
  const int c = col0();
  const int r = row0();
  return x >= c && x < c + w && y >= r && y < r + h;
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

namespace {

template <typename T>
bool parse_number(std::string_view tok, T& out) {
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::vector<Event> parse_events(std::istream& in, const SensorGeometry& sensor,
                                EventFormat /*format*/) {
  std::vector<Event> events;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;
    if (toks.size() != 4) throw ParseError(lineno, "expected 4 fields 't x y p'");

    Event e;
    if (toks[0].find('.') != std::string_view::npos) {
      double seconds = 0.0;
      if (!parse_number(toks[0], seconds) || !(seconds >= 0.0))
        throw ParseError(lineno, "bad timestamp '" + std::string(toks[0]) + "'");
      e.t = std::llround(seconds * 1e6);
    } else if (!parse_number(toks[0], e.t) || e.t < 0) {
      throw ParseError(lineno, "bad timestamp '" + std::string(toks[0]) + "'");
    }
    int p = 0;
    if (!parse_number(toks[1], e.x) || !parse_number(toks[2], e.y))
      throw ParseError(lineno, "bad coordinates");
    if (!parse_number(toks[3], p) || (p != 0 && p != 1 && p != -1))
      throw ParseError(lineno, "bad polarity '" + std::string(toks[3]) + "'");
    e.p = p == 1 ? 1 : -1;

    if (e.x < 0 || e.y < 0 || e.x >= sensor.width || e.y >= sensor.height) {
      throw ValidationError("line " + std::to_string(lineno) + ": pixel (" +
                            std::to_string(e.x) + ", " + std::to_string(e.y) +
                            ") outside " + std::to_string(sensor.width) + "x" +
                            std::to_string(sensor.height) + " sensor");
    }
    events.push_back(e);
  }
  return events;
}

std::vector<Event> load_events(const std::string& path,
                               const SensorGeometry& sensor) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open event file '" + path + "'");
  return parse_events(in, sensor);
}

void write_events(std::ostream& out, const std::vector<Event>& events) {
  for (const auto& e : events)
    out << e.t << ' ' << e.x << ' ' << e.y << ' ' << (e.p > 0 ? 1 : 0) << '\n';
}

EventBatch make_batch(std::vector<Event> events) {
  if (events.empty()) throw std::invalid_argument("make_batch: empty event set");
  const bool sorted = std::is_sorted(
      events.begin(), events.end(),
      [](const Event& a, const Event& b) { return a.t < b.t; });
  if (!sorted) throw std::invalid_argument("make_batch: timestamps not sorted");

  EventBatch batch;
  const double t_first = static_cast<double>(events.front().t);
  const double t_last = static_cast<double>(events.back().t);
  batch.half_span = (t_last - t_first) / 2.0;
  batch.t_ref = t_first + batch.half_span;
  batch.norm_dts.reserve(events.size());
  for (const auto& e : events) {
    batch.norm_dts.push_back(
        batch.half_span > 0.0
            ? (static_cast<double>(e.t) - batch.t_ref) / batch.half_span
            : 0.0);
  }
  // Pin the endpoints; rounding in the division must not leave [-1, 1].
  if (batch.half_span > 0.0) {
    for (auto& d : batch.norm_dts) d = std::clamp(d, -1.0, 1.0);
  }
  batch.events = std::move(events);
  return batch;
}

EventBatch filter_roi(const EventBatch& batch, const Roi& roi) {
  EventBatch out;
  out.t_ref = batch.t_ref;
  out.half_span = batch.half_span;
  out.origin_x = roi.col0();
  out.origin_y = roi.row0();
  for (std::size_t k = 0; k < batch.events.size(); ++k) {
    Event e = batch.events[k];
    const int gx = e.x + batch.origin_x;
    const int gy = e.y + batch.origin_y;
    if (!roi.contains(gx, gy)) continue;
    e.x = gx - out.origin_x;
    e.y = gy - out.origin_y;
    out.events.push_back(e);
    out.norm_dts.push_back(batch.norm_dts[k]);
  }
  return out;
}

}  // namespace cmax
