#include "cmax/cyclemodel.hpp"

#include <cmath>
#include <charconv>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "cmax/csv.hpp"

namespace cmax {

std::uint64_t cycles_per_batch(const CycleParams& p) {
  if (p.roi_pixels % 4 != 0)
    throw std::invalid_argument("ROI pixel count " + std::to_string(p.roi_pixels) +
                                " is not divisible by 4");
  if (!(p.clock_hz > 0.0)) throw std::invalid_argument("clock frequency must be > 0");
  return p.n_events + p.iterations * (p.roi_events + p.readout_latency +
                                      p.roi_pixels / 4 + p.voting_latency);
}

double batch_time(const CycleParams& p) {
  return static_cast<double>(cycles_per_batch(p)) / p.clock_hz;
}

std::vector<std::pair<std::string, double>> reference_timings() {
  return {{"CPU", 185.96e-3}, {"GPU", 473.51e-3}};
}

std::vector<TimingRow> speedup_report(
    const CycleParams& p,
    const std::vector<std::pair<std::string, double>>& measured) {
  const double fpga = batch_time(p);
  std::vector<TimingRow> rows{{"FPGA (model)", fpga, 1.0}};
  for (const auto& [label, seconds] : measured) rows.push_back({label, seconds, seconds / fpga});
  return rows;
}

std::string to_significant(double v, int digits) {
  if (v == 0.0) return "0";
  const int magnitude = static_cast<int>(std::floor(std::log10(std::abs(v))));
  const int decimals = std::max(0, digits - 1 - magnitude);
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, decimals);
  return std::string(buf, res.ptr);
}

void write_cycle_report(std::ostream& out, const CycleParams& p,
                        const std::vector<TimingRow>& rows, ReportFormat format) {
  const std::uint64_t cycles = cycles_per_batch(p);
  if (format == ReportFormat::csv) {
    CsvWriter csv(out);
    csv.row("label", "seconds", "speedup", "cycles");
    for (const auto& r : rows) csv.row(r.label, r.seconds, r.speedup, cycles);
    return;
  }
  out << "N=" << p.n_events << " T=" << p.iterations << " n=" << p.roi_events
      << " P=" << p.roi_pixels << " L_r=" << p.readout_latency
      << " L_v=" << p.voting_latency << " f_clk=" << to_significant(p.clock_hz / 1e6, 4)
      << " MHz\n";
  out << "cycles per batch: " << cycles << '\n';
  out << "batch time: " << to_significant(batch_time(p) * 1e3, 4) << " ms\n\n";

  std::size_t width = 5;
  for (const auto& r : rows) width = std::max(width, r.label.size());
  out << std::left << std::setw(static_cast<int>(width)) << "label" << "  "
      << std::right << std::setw(12) << "time [ms]" << "  " << std::setw(10)
      << "speedup" << '\n';
  for (const auto& r : rows) {
    out << std::left << std::setw(static_cast<int>(width)) << r.label << "  "
        << std::right << std::setw(12) << to_significant(r.seconds * 1e3, 4) << "  "
        << std::setw(9) << to_significant(r.speedup, 3) << "x\n";
  }
}

}  // namespace cmax
