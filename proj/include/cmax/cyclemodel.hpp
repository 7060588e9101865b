#ifndef CMAX_CYCLEMODEL_HPP
#define CMAX_CYCLEMODEL_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace cmax {

/// Parameters of the closed-form cycle count for one batch on the FPGA
/// pipeline. Latencies default to the values of the reference design.
struct CycleParams {
  std::uint64_t n_events = 5000;     // N, events in the batch
  std::uint64_t iterations = 100;    // T
  std::uint64_t roi_events = 800;    // n, events inside the ROI
  std::uint64_t roi_pixels = 64 * 64;  // P
  std::uint64_t readout_latency = 32;  // L_r
  std::uint64_t voting_latency = 35;   // L_v
  double clock_hz = 210e6;
};

/// C = N + T * (n + L_r + P/4 + L_v). Throws if P is not a multiple of 4 or
/// the clock is not positive.
std::uint64_t cycles_per_batch(const CycleParams& p);

/// Seconds per batch at p.clock_hz.
double batch_time(const CycleParams& p);

struct TimingRow {
  std::string label;
  double seconds = 0.0;
  double speedup = 1.0;  // seconds / FPGA projection
};

/// Host timings measured for the reference model (i5-11300H CPU, RTX 3050 Ti GPU).
std::vector<std::pair<std::string, double>> reference_timings();

/// The FPGA projection row followed by one row per measured timing.
std::vector<TimingRow> speedup_report(
    const CycleParams& p,
    const std::vector<std::pair<std::string, double>>& measured);

enum class ReportFormat { text, csv };

/// Formats the cycle count, projected time and speedup table.
void write_cycle_report(std::ostream& out, const CycleParams& p,
                        const std::vector<TimingRow>& rows, ReportFormat format);

/// Formats v to `digits` significant figures.
std::string to_significant(double v, int digits);

}  // namespace cmax

#endif  // CMAX_CYCLEMODEL_HPP
