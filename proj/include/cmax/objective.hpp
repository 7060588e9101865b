#ifndef CMAX_OBJECTIVE_HPP
#define CMAX_OBJECTIVE_HPP

#include <cmath>
#include <stdexcept>

#include <Eigen/Core>

#include "cmax/voting.hpp"

namespace cmax {

/// Gradient of the contrast with respect to (vx, vy).
template <typename Scalar>
using Gradient = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
struct Contrast {
  Scalar variance = Scalar(0);
  Scalar mean = Scalar(0);
};

template <typename Scalar>
struct ContrastReport {
  Scalar contrast = Scalar(0);
  Scalar mean = Scalar(0);
  Gradient<Scalar> grad = Gradient<Scalar>::Zero();
};

/// Neumaier-compensated running sum.
template <typename Scalar>
class CompensatedSum {
 public:
  void add(Scalar v) {
    const Scalar t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  Scalar value() const { return sum_ + comp_; }

 private:
  Scalar sum_ = Scalar(0);
  Scalar comp_ = Scalar(0);
};

template <typename Derived>
typename Derived::Scalar compensated_sum(const Eigen::DenseBase<Derived>& m) {
  CompensatedSum<typename Derived::Scalar> s;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) s.add(m(r, c));
  return s.value();
}

/// Population variance over every grid cell, including empty ones.
template <typename Derived>
Contrast<typename Derived::Scalar> contrast(const Eigen::DenseBase<Derived>& img) {
  using Scalar = typename Derived::Scalar;
  if (img.size() == 0) throw std::invalid_argument("contrast: empty grid");
  const Scalar n = static_cast<Scalar>(img.size());
  const Scalar mu = compensated_sum(img) / n;
  CompensatedSum<Scalar> sq;
  for (Eigen::Index c = 0; c < img.cols(); ++c) {
    for (Eigen::Index r = 0; r < img.rows(); ++r) {
      const Scalar d = img(r, c) - mu;
      sq.add(d * d);
    }
  }
  return {sq.value() / n, mu};
}

/// dC/dv_a = (2 / Np) * sum (I - mu) * (dI/dv_a - mean(dI/dv_a)).
template <typename Scalar>
Gradient<Scalar> analytic_gradient(const ImageSet<Scalar>& imgs) {
  if (imgs.d_vx.rows() != imgs.iwe.rows() || imgs.d_vx.cols() != imgs.iwe.cols() ||
      imgs.d_vy.rows() != imgs.iwe.rows() || imgs.d_vy.cols() != imgs.iwe.cols())
    throw std::invalid_argument("analytic_gradient: image shapes differ");
  if (imgs.iwe.size() == 0) throw std::invalid_argument("analytic_gradient: empty grid");

  const Scalar n = static_cast<Scalar>(imgs.iwe.size());
  const Scalar mu = compensated_sum(imgs.iwe) / n;
  const Scalar mu_x = compensated_sum(imgs.d_vx) / n;
  const Scalar mu_y = compensated_sum(imgs.d_vy) / n;
  CompensatedSum<Scalar> gx, gy;
  for (Eigen::Index c = 0; c < imgs.iwe.cols(); ++c) {
    for (Eigen::Index r = 0; r < imgs.iwe.rows(); ++r) {
      const Scalar centered = imgs.iwe(r, c) - mu;
      gx.add(centered * (imgs.d_vx(r, c) - mu_x));
      gy.add(centered * (imgs.d_vy(r, c) - mu_y));
    }
  }
  return {Scalar(2) / n * gx.value(), Scalar(2) / n * gy.value()};
}

template <typename Scalar>
ContrastReport<Scalar> evaluate(const ImageSet<Scalar>& imgs) {
  const auto c = contrast(imgs.iwe);
  return {c.variance, c.mean, analytic_gradient(imgs)};
}

}  // namespace cmax

#endif  // CMAX_OBJECTIVE_HPP
