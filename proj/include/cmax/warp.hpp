#ifndef CMAX_WARP_HPP
#define CMAX_WARP_HPP

#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "cmax/events.hpp"

namespace cmax {

/// Constant image-plane velocity in pixels per normalized time unit.
template <typename Scalar>
using Velocity = Eigen::Matrix<Scalar, 2, 1>;

using Velocityd = Velocity<double>;

template <typename Scalar>
bool is_finite(const Velocity<Scalar>& v) {
  return std::isfinite(v.x()) && std::isfinite(v.y());
}

template <typename Scalar>
struct WarpedEvent {
  Scalar xw;
  Scalar yw;
  Scalar norm_dt;
};

using WarpedEventd = WarpedEvent<double>;

/// Moves an event to the reference time: x' = x - dt * vx, y' = y - dt * vy.
template <typename Scalar>
WarpedEvent<Scalar> warp_event(Scalar x, Scalar y, Scalar norm_dt,
                               const Velocity<Scalar>& v) {
  return {x - norm_dt * v.x(), y - norm_dt * v.y(), norm_dt};
}

/// Warps every event of the batch. `offset` is added to both pixel
/// coordinates first; 0.5 places events at pixel centres.
template <typename Scalar>
void warp_batch(const EventBatch& batch, const Velocity<Scalar>& v,
                std::vector<WarpedEvent<Scalar>>& out, Scalar offset = Scalar(0)) {
  out.resize(batch.size());
  for (std::size_t k = 0; k < batch.size(); ++k) {
    out[k] = warp_event<Scalar>(static_cast<Scalar>(batch.events[k].x) + offset,
                                static_cast<Scalar>(batch.events[k].y) + offset,
                                static_cast<Scalar>(batch.norm_dts[k]), v);
  }
}

template <typename Scalar>
std::vector<WarpedEvent<Scalar>> warp_batch(const EventBatch& batch,
                                            const Velocity<Scalar>& v,
                                            Scalar offset = Scalar(0)) {
  std::vector<WarpedEvent<Scalar>> out;
  warp_batch(batch, v, out, offset);
  return out;
}

}  // namespace cmax

#endif  // CMAX_WARP_HPP
