#ifndef CMAX_OPTIMIZER_HPP
#define CMAX_OPTIMIZER_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cmax/events.hpp"
#include "cmax/objective.hpp"
#include "cmax/voting.hpp"
#include "cmax/warp.hpp"

namespace cmax {

enum class AccumulatorMode { naive, banked };

struct OptimizerConfig {
  int iterations = 100;
  /// Unset selects default_learning_rate() for the batch.
  std::optional<double> learning_rate;
  Velocityd v_init = Velocityd::Zero();
  /// Stop once ||grad|| drops below this; 0 runs all iterations.
  double grad_tolerance = 0.0;
  AccumulatorMode accumulator_mode = AccumulatorMode::naive;
  GridShape shape{64, 64};
  /// Added to event pixel coordinates before warping. At 0 every event sits
  /// on the voting lattice when v = 0, which makes v = 0 a cusp-shaped local
  /// maximum of the contrast; 0.5 (pixel centres) removes it.
  double event_offset = 0.5;
};

inline constexpr double kLearningRateGain = 300.0;

/// kLearningRateGain * P / n^2 for n events on a P-pixel grid. Contrast and
/// its gradient grow as n^2 / P, so this keeps the step in pixels roughly
/// independent of batch and ROI size.
double default_learning_rate(std::size_t n_events, const GridShape& shape);

struct IterationRecord {
  Velocityd v;  // velocity the images were built at
  double contrast = 0.0;
  Gradient<double> grad = Gradient<double>::Zero();
};

struct OptimizationTrace {
  std::vector<IterationRecord> iterations;
  Velocityd final_v = Velocityd::Zero();
  double final_contrast = 0.0;
  double learning_rate = 0.0;
  std::uint64_t votes_issued = 0;
  std::uint64_t readout_addresses = 0;
};

struct MotionEstimate {
  Velocityd v;
  OptimizationTrace trace;
};

class OptimizationError : public std::runtime_error {
 public:
  OptimizationError(int iteration, const std::string& what);
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

/// Gradient ascent on the contrast of the image of warped events:
/// v <- v + lr * grad C(v), for cfg.iterations steps.
MotionEstimate estimate_motion(const EventBatch& batch, const OptimizerConfig& cfg);

/// Warps, votes and evaluates once at v.
ContrastReport<double> evaluate_at(const EventBatch& batch, const Velocityd& v,
                                   const GridShape& shape, double event_offset = 0.5,
                                   AccumulatorMode mode = AccumulatorMode::naive);

/// Image set at v, as voted by the optimizer.
ImageSetd images_at(const EventBatch& batch, const Velocityd& v,
                    const GridShape& shape, double event_offset = 0.5);

/// CSV: iteration,vx,vy,contrast,grad_vx,grad_vy
void write_trace_csv(std::ostream& out, const OptimizationTrace& trace);

}  // namespace cmax

#endif  // CMAX_OPTIMIZER_HPP
