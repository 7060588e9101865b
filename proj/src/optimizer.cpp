#include "cmax/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <variant>

#include "cmax/csv.hpp"

namespace cmax {

OptimizationError::OptimizationError(int iteration, const std::string& what)
    : std::runtime_error("iteration " + std::to_string(iteration) + ": " + what),
      iteration_(iteration) {}

double default_learning_rate(std::size_t n_events, const GridShape& shape) {
  const double n = std::max<double>(1.0, static_cast<double>(n_events));
  return kLearningRateGain * static_cast<double>(shape.pixels()) / (n * n);
}

namespace {

using AnyAccumulator =
    std::variant<NaiveAccumulator<double>, BankedAccumulator<double>>;

AnyAccumulator make_accumulator(AccumulatorMode mode, const GridShape& shape) {
  if (mode == AccumulatorMode::banked)
    return AnyAccumulator(std::in_place_type<BankedAccumulator<double>>, shape);
  return AnyAccumulator(std::in_place_type<NaiveAccumulator<double>>, shape);
}

}  // namespace

ContrastReport<double> evaluate_at(const EventBatch& batch, const Velocityd& v,
                                   const GridShape& shape, double event_offset,
                                   AccumulatorMode mode) {
  const auto warped = warp_batch(batch, v, event_offset);
  auto acc = make_accumulator(mode, shape);
  return std::visit(
      [&](auto& a) {
        a.add(std::span<const WarpedEventd>(warped));
        return evaluate(a.clear_on_read());
      },
      acc);
}

ImageSetd images_at(const EventBatch& batch, const Velocityd& v,
                    const GridShape& shape, double event_offset) {
  return accumulate_naive<double>(warp_batch(batch, v, event_offset), shape);
}

MotionEstimate estimate_motion(const EventBatch& batch, const OptimizerConfig& cfg) {
  if (batch.empty()) throw std::invalid_argument("estimate_motion: empty batch");
  if (cfg.iterations < 1) throw std::invalid_argument("estimate_motion: iterations < 1");
  const double lr = cfg.learning_rate.value_or(default_learning_rate(batch.size(), cfg.shape));
  if (!(lr > 0.0)) throw std::invalid_argument("estimate_motion: learning rate must be > 0");
  if (!is_finite(cfg.v_init)) throw std::invalid_argument("estimate_motion: non-finite v_init");

  MotionEstimate out;
  OptimizationTrace& trace = out.trace;
  trace.learning_rate = lr;
  trace.iterations.reserve(static_cast<std::size_t>(cfg.iterations));

  auto acc = make_accumulator(cfg.accumulator_mode, cfg.shape);
  std::vector<WarpedEventd> warped;
  Velocityd v = cfg.v_init;

  for (int n = 0; n < cfg.iterations; ++n) {
    warp_batch(batch, v, warped, cfg.event_offset);
    const ContrastReport<double> rep = std::visit(
        [&](auto& a) {
          a.add(std::span<const WarpedEventd>(warped));
          return evaluate(a.clear_on_read());
        },
        acc);
    if (!std::isfinite(rep.grad.x()) || !std::isfinite(rep.grad.y()))
      throw OptimizationError(n, "non-finite gradient");

    trace.iterations.push_back({v, rep.contrast, rep.grad});
    trace.final_contrast = rep.contrast;
    if (cfg.grad_tolerance > 0.0 && rep.grad.norm() < cfg.grad_tolerance) break;
    v += lr * rep.grad;
    if (!is_finite(v)) throw OptimizationError(n, "velocity diverged");
  }

  std::visit(
      [&](auto& a) {
        trace.votes_issued = a.votes_issued();
        trace.readout_addresses = a.readout_addresses();
      },
      acc);
  trace.final_v = v;
  out.v = v;
  return out;
}

void write_trace_csv(std::ostream& out, const OptimizationTrace& trace) {
  CsvWriter csv(out);
  csv.row("iteration", "vx", "vy", "contrast", "grad_vx", "grad_vy");
  for (std::size_t n = 0; n < trace.iterations.size(); ++n) {
    const auto& r = trace.iterations[n];
    csv.row(n, r.v.x(), r.v.y(), r.contrast, r.grad.x(), r.grad.y());
  }
}

}  // namespace cmax
