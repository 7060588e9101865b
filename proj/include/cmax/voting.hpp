#ifndef CMAX_VOTING_HPP
#define CMAX_VOTING_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cmax/warp.hpp"

namespace cmax {

struct GridShape {
  int width = 64;
  int height = 64;

  int pixels() const { return width * height; }
};

template <typename Scalar>
using Grid = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// The image of warped events and its derivatives with respect to vx, vy.
/// Grids are indexed (row, col) = (y, x).
template <typename Scalar>
struct ImageSet {
  Grid<Scalar> iwe;
  Grid<Scalar> d_vx;
  Grid<Scalar> d_vy;
  Scalar in_bounds_mass = Scalar(0);

  static ImageSet zeros(const GridShape& shape) {
    ImageSet s;
    s.iwe = Grid<Scalar>::Zero(shape.height, shape.width);
    s.d_vx = Grid<Scalar>::Zero(shape.height, shape.width);
    s.d_vy = Grid<Scalar>::Zero(shape.height, shape.width);
    return s;
  }

  GridShape shape() const {
    return {static_cast<int>(iwe.cols()), static_cast<int>(iwe.rows())};
  }

  /// Merges a shard accumulated over a disjoint subset of events.
  ImageSet& operator+=(const ImageSet& other) {
    iwe += other.iwe;
    d_vx += other.d_vx;
    d_vy += other.d_vy;
    in_bounds_mass += other.in_bounds_mass;
    return *this;
  }
};

using ImageSetd = ImageSet<double>;

/// One pixel's share of a bilinear vote: the weight and the contributions
/// to the two derivative images.
template <typename Scalar>
struct VoteContribution {
  int i = 0;  // column
  int j = 0;  // row
  Scalar w = Scalar(0);
  Scalar dwx = Scalar(0);
  Scalar dwy = Scalar(0);
};

template <typename Scalar>
struct Votes {
  std::array<VoteContribution<Scalar>, 4> items{};
  int count = 0;

  auto begin() const { return items.begin(); }
  auto end() const { return items.begin() + count; }
};

/// Splits a warped event over its four neighbouring pixels, in the order
/// (i,j), (i+1,j), (i,j+1), (i+1,j+1). Pixels outside the grid are dropped
/// individually; zero weights inside the grid are kept because their
/// derivative terms are not zero.
template <typename Scalar>
Votes<Scalar> bilinear_votes(const WarpedEvent<Scalar>& we,
                             const GridShape& shape) {
  using std::floor;
  const Scalar fi = floor(we.xw);
  const Scalar fj = floor(we.yw);
  const Scalar dx = we.xw - fi;
  const Scalar dy = we.yw - fj;
  const Scalar ndt = -we.norm_dt;  // dx'/dv
  const Scalar one(1);

  // Guard the int conversion for wildly out-of-range coordinates.
  const Scalar lim(1 << 29);
  Votes<Scalar> out;
  if (!(fi > -lim && fi < lim && fj > -lim && fj < lim)) return out;
  const int i = static_cast<int>(fi);
  const int j = static_cast<int>(fj);

  const std::array<VoteContribution<Scalar>, 4> all{{
      {i, j, (one - dx) * (one - dy), ndt * -(one - dy), ndt * -(one - dx)},
      {i + 1, j, dx * (one - dy), ndt * (one - dy), ndt * -dx},
      {i, j + 1, (one - dx) * dy, ndt * -dy, ndt * (one - dx)},
      {i + 1, j + 1, dx * dy, ndt * dy, ndt * dx},
  }};
  for (const auto& c : all) {
    if (c.i >= 0 && c.i < shape.width && c.j >= 0 && c.j < shape.height)
      out.items[out.count++] = c;
  }
  return out;
}

/// Parity bank of a pixel: 0 even/even, 1 odd/even, 2 even/odd, 3 odd/odd
/// (column parity first).
inline int parity_bank(int i, int j) { return (i & 1) + 2 * (j & 1); }

/// Plain accumulator: one dense grid per image, updated in event order.
template <typename Scalar>
class NaiveAccumulator {
 public:
  explicit NaiveAccumulator(const GridShape& shape)
      : shape_(shape), images_(ImageSet<Scalar>::zeros(shape)) {
    if (shape.width < 2 || shape.height < 2)
      throw std::invalid_argument("grid must be at least 2x2");
  }

  void add(const WarpedEvent<Scalar>& we) {
    for (const auto& c : bilinear_votes(we, shape_)) {
      images_.iwe(c.j, c.i) += c.w;
      images_.d_vx(c.j, c.i) += c.dwx;
      images_.d_vy(c.j, c.i) += c.dwy;
      images_.in_bounds_mass += c.w;
    }
    ++votes_issued_;
  }

  void add(std::span<const WarpedEvent<Scalar>> warped) {
    for (const auto& we : warped) add(we);
  }

  /// Returns the accumulated images and leaves the accumulator zeroed.
  ImageSet<Scalar> clear_on_read() {
    ImageSet<Scalar> out = std::move(images_);
    images_ = ImageSet<Scalar>::zeros(shape_);
    readout_addresses_ += static_cast<std::uint64_t>(shape_.pixels());
    return out;
  }

  const GridShape& shape() const { return shape_; }
  std::uint64_t votes_issued() const { return votes_issued_; }
  std::uint64_t readout_addresses() const { return readout_addresses_; }

 private:
  GridShape shape_;
  ImageSet<Scalar> images_;
  std::uint64_t votes_issued_ = 0;
  std::uint64_t readout_addresses_ = 0;
};

enum class Forwarding { enabled, disabled };

/// One BRAM bank with a three-stage read-modify-write pipeline: the read
/// happens in the issue cycle, the add one cycle later and the write-back
/// in the third. A write is visible to reads issued kPipelineDepth cycles
/// after its own issue or later.
template <typename Scalar>
class RmwBank {
 public:
  static constexpr int kPipelineDepth = 3;
  static constexpr int kForwardDepth = 3;

  RmwBank(std::size_t cells, Forwarding fwd)
      : mem_(cells, Scalar(0)), forwarding_(fwd) {}

  void issue(std::uint64_t cycle, std::size_t addr, Scalar value) {
    retire(cycle);
    Scalar base = mem_[addr];
    if (forwarding_ == Forwarding::enabled) {
      // Newest matching entry wins.
      for (int k = 0; k < fwd_count_; ++k) {
        const auto& e = fwd_[(fwd_head_ + kForwardDepth - 1 - k) % kForwardDepth];
        if (e.addr == addr) {
          base = e.value;
          ++forwarded_;
          break;
        }
      }
    }
    const InFlight entry{addr, base + value, cycle};
    in_flight_.push_back(entry);
    fwd_[fwd_head_] = entry;
    fwd_head_ = (fwd_head_ + 1) % kForwardDepth;
    if (fwd_count_ < kForwardDepth) ++fwd_count_;
    ++writes_;
  }

  /// Commits every write whose pipeline has completed by `cycle`.
  void retire(std::uint64_t cycle) {
    while (!in_flight_.empty() &&
           in_flight_.front().issue + kPipelineDepth <= cycle) {
      mem_[in_flight_.front().addr] = in_flight_.front().value;
      in_flight_.pop_front();
    }
  }

  void drain() {
    for (const auto& e : in_flight_) mem_[e.addr] = e.value;
    in_flight_.clear();
  }

  /// Reads a cell and writes zero back.
  Scalar read_and_clear(std::size_t addr) {
    const Scalar v = mem_[addr];
    mem_[addr] = Scalar(0);
    return v;
  }

  void reset_forwarding() { fwd_count_ = 0; }

  std::uint64_t writes() const { return writes_; }
  std::uint64_t forwarded() const { return forwarded_; }

 private:
  struct InFlight {
    std::size_t addr = 0;
    Scalar value = Scalar(0);
    std::uint64_t issue = 0;
  };

  std::vector<Scalar> mem_;
  std::deque<InFlight> in_flight_;
  std::array<InFlight, kForwardDepth> fwd_{};
  int fwd_head_ = 0;
  int fwd_count_ = 0;
  Forwarding forwarding_;
  std::uint64_t writes_ = 0;
  std::uint64_t forwarded_ = 0;
};

/// Emulates the 12-bank accumulation datapath: three image roles (IWE,
/// d/dvx, d/dvy) times four coordinate-parity banks. One warped event enters
/// per cycle and its (up to) four contributions go to four distinct banks in
/// that same cycle.
template <typename Scalar>
class BankedAccumulator {
 public:
  static constexpr int kRoles = 3;
  static constexpr int kBanks = 4;

  explicit BankedAccumulator(const GridShape& shape,
                             Forwarding fwd = Forwarding::enabled)
      : shape_(check_shape(shape)) {
    const auto cells =
        static_cast<std::size_t>(shape.width / 2) * (shape.height / 2);
    banks_.reserve(kRoles * kBanks);
    for (int k = 0; k < kRoles * kBanks; ++k) banks_.emplace_back(cells, fwd);
  }

  void add(const WarpedEvent<Scalar>& we) {
    using std::floor;
    const Scalar ai = floor(we.xw);
    const Scalar aj = floor(we.yw);
    if (ai >= Scalar(0) && ai < Scalar(shape_.width) && aj >= Scalar(0) &&
        aj < Scalar(shape_.height)) {
      ++anchor_counts_[parity_bank(static_cast<int>(ai), static_cast<int>(aj))];
    }
    for (const auto& c : bilinear_votes(we, shape_)) {
      const int b = parity_bank(c.i, c.j);
      const std::size_t addr = address(c.i, c.j);
      bank(0, b).issue(cycle_, addr, c.w);
      bank(1, b).issue(cycle_, addr, c.dwx);
      bank(2, b).issue(cycle_, addr, c.dwy);
      in_bounds_mass_ += c.w;
    }
    ++cycle_;
    ++votes_issued_;
  }

  void add(std::span<const WarpedEvent<Scalar>> warped) {
    for (const auto& we : warped) add(we);
  }

  /// Drains the pipelines, reads every cell out once and zeroes it.
  ImageSet<Scalar> clear_on_read() {
    for (auto& b : banks_) {
      b.drain();
      b.reset_forwarding();
    }
    ImageSet<Scalar> out = ImageSet<Scalar>::zeros(shape_);
    for (int j = 0; j < shape_.height; ++j) {
      for (int i = 0; i < shape_.width; ++i) {
        const int b = parity_bank(i, j);
        const std::size_t addr = address(i, j);
        out.iwe(j, i) = bank(0, b).read_and_clear(addr);
        out.d_vx(j, i) = bank(1, b).read_and_clear(addr);
        out.d_vy(j, i) = bank(2, b).read_and_clear(addr);
        ++readout_addresses_;
      }
    }
    out.in_bounds_mass = in_bounds_mass_;
    in_bounds_mass_ = Scalar(0);
    return out;
  }

  const GridShape& shape() const { return shape_; }
  std::uint64_t votes_issued() const { return votes_issued_; }
  std::uint64_t readout_addresses() const { return readout_addresses_; }

  /// Events counted by the parity bank of their anchor pixel (floor(x'), floor(y')).
  const std::array<std::uint64_t, kBanks>& anchor_counts() const {
    return anchor_counts_;
  }

  /// Writes issued to each IWE bank.
  std::array<std::uint64_t, kBanks> bank_writes() const {
    std::array<std::uint64_t, kBanks> out{};
    for (int b = 0; b < kBanks; ++b) out[b] = banks_[b].writes();
    return out;
  }

  std::uint64_t forwarded_reads() const {
    std::uint64_t n = 0;
    for (const auto& b : banks_) n += b.forwarded();
    return n;
  }

 private:
  static GridShape check_shape(const GridShape& shape) {
    if (shape.width < 2 || shape.height < 2 || shape.width % 2 != 0 ||
        shape.height % 2 != 0) {
      throw std::invalid_argument(
          "banked accumulator needs even grid dimensions, got " +
          std::to_string(shape.width) + "x" + std::to_string(shape.height));
    }
    return shape;
  }

  std::size_t address(int i, int j) const {
    return static_cast<std::size_t>(j / 2) * (shape_.width / 2) + i / 2;
  }

  RmwBank<Scalar>& bank(int role, int b) { return banks_[role * kBanks + b]; }

  GridShape shape_;
  std::vector<RmwBank<Scalar>> banks_;
  Scalar in_bounds_mass_ = Scalar(0);
  std::uint64_t cycle_ = 0;
  std::uint64_t votes_issued_ = 0;
  std::uint64_t readout_addresses_ = 0;
  std::array<std::uint64_t, kBanks> anchor_counts_{};
};

template <typename Scalar>
ImageSet<Scalar> accumulate_naive(std::span<const WarpedEvent<Scalar>> warped,
                                  const GridShape& shape) {
  NaiveAccumulator<Scalar> acc(shape);
  acc.add(warped);
  return acc.clear_on_read();
}

template <typename Scalar>
ImageSet<Scalar> accumulate_banked(std::span<const WarpedEvent<Scalar>> warped,
                                   const GridShape& shape,
                                   Forwarding fwd = Forwarding::enabled) {
  BankedAccumulator<Scalar> acc(shape, fwd);
  acc.add(warped);
  return acc.clear_on_read();
}

/// Writes one grid as a 16-bit binary PGM. Pixel values are |v| * scale,
/// rounded and saturated; scale is recorded in a header comment. A scale of
/// zero picks 65535 / max|v|.
double write_pgm(std::ostream& out, const Grid<double>& grid, double scale = 0.0);
void write_pgm(const std::string& path, const Grid<double>& grid,
               double scale = 0.0);

}  // namespace cmax

#endif  // CMAX_VOTING_HPP
