#ifndef CLOCKGAP_ANALYTIC_BOUNDS_HPP
#define CLOCKGAP_ANALYTIC_BOUNDS_HPP

// Closed-form spectral quantities for the clock Hamiltonians.
//
// mu0 is the lowest eigenvalue of -Lap_d + 1/2 |e_1><e_1|, whose full spectrum
// is 1 - cos((2n - 1) pi / (2d + 1)), n = 1..d. With trial vectors e_1 and the
// normalized constant vector,
//   lambda1(s) <= min(s/2, (1 - s)(d - 1)/d),
// and by max-min,
//   lambda2(s) >= (1 - s) + s mu0,
// which combine into a piecewise lower bound on the gap that is minimal at the
// crossing point s_c = (2d - 2)/(3d - 2).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Core>

#include "clockgap/errors.hpp"
#include "clockgap/tridiagonal.hpp"

namespace clockgap {

template <typename Scalar = double>
struct AnalyticEigenpair {
  Eigen::Index n;  // 1..d
  Scalar theta;
  Scalar lambda;
};

template <typename Scalar = double>
struct BoundCurve {
  Eigen::Index d;
  Scalar s;
  Scalar upper_e1;       // <e_1, H_0 e_1> = s/2
  Scalar upper_const;    // <v, H_0 v> = (1 - s)(d - 1)/d
  Scalar upper_min;
  Scalar s_c;
  Scalar mu0;
  Scalar lambda2_lower;
  Scalar gap_lower;
  Scalar block_lower;    // valid for any block with b >= 1
  Scalar floor;          // 1/(2 d^2)
};

/// 1 - cos(pi/(2d+1)), evaluated as 2 sin^2(pi/(2(2d+1))) to avoid cancellation.
template <typename Scalar = double>
Scalar mu0_exact(Eigen::Index d) {
  detail::require_dim(d, "mu0_exact");
  const Scalar half_angle = std::numbers::pi_v<Scalar> / (Scalar(2) * Scalar(2 * d + 1));
  const Scalar sn = std::sin(half_angle);
  return Scalar(2) * sn * sn;
}

template <typename Scalar = double>
std::vector<AnalyticEigenpair<Scalar>> lemma_spectrum(Eigen::Index d) {
  detail::require_dim(d, "lemma_spectrum");
  std::vector<AnalyticEigenpair<Scalar>> out;
  out.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index n = 1; n <= d; ++n) {
    const Scalar theta = Scalar(2 * n - 1) * std::numbers::pi_v<Scalar> / Scalar(2 * d + 1);
    const Scalar sn = std::sin(theta / Scalar(2));
    out.push_back({n, theta, Scalar(2) * sn * sn});
  }
  return out;
}

template <typename Scalar = double>
Scalar crossing_point(Eigen::Index d) {
  detail::require_dim(d, "crossing_point");
  return Scalar(2 * d - 2) / Scalar(3 * d - 2);
}

template <typename Scalar = double>
Scalar variational_upper(Eigen::Index d, Scalar s) {
  detail::require_dim(d, "variational_upper");
  detail::require_unit_interval(s, "variational_upper");
  return std::min(s / Scalar(2), (Scalar(1) - s) * Scalar(d - 1) / Scalar(d));
}

template <typename Scalar = double>
Scalar lambda2_lower(Eigen::Index d, Scalar s) {
  detail::require_unit_interval(s, "lambda2_lower");
  return (Scalar(1) - s) + s * mu0_exact<Scalar>(d);
}

/// Piecewise lower bound on g(s) = lambda2 - lambda1:
///   (2 - 3s)/2 + s mu0   for s <= s_c
///   (1 - s)/d  + s mu0   for s >  s_c
template <typename Scalar = double>
Scalar gap_lower_g(Eigen::Index d, Scalar s) {
  detail::require_unit_interval(s, "gap_lower_g");
  const Scalar mu0 = mu0_exact<Scalar>(d);
  if (s <= crossing_point<Scalar>(d)) {
    return (Scalar(2) - Scalar(3) * s) / Scalar(2) + s * mu0;
  }
  return (Scalar(1) - s) / Scalar(d) + s * mu0;
}

template <typename Scalar = double>
Scalar gap_floor(Eigen::Index d) {
  detail::require_dim(d, "gap_floor");
  return Scalar(1) / (Scalar(2) * Scalar(d) * Scalar(d));
}

/// Lower bound s mu0 + (1 - s) on the spectrum of H_b(s). The value does not
/// depend on b; the bound only holds for b >= 1.
template <typename Scalar = double>
Scalar block_lower_bound(Eigen::Index d, Scalar s, Scalar b) {
  if (!(b >= Scalar(1))) {
    throw ParameterError("block_lower_bound: requires b >= 1");
  }
  detail::require_unit_interval(s, "block_lower_bound");
  return s * mu0_exact<Scalar>(d) + (Scalar(1) - s);
}

/// s_c * mu0: the minimum of gap_lower_g over [0, 1].
template <typename Scalar = double>
Scalar chain_bound(Eigen::Index d) {
  return crossing_point<Scalar>(d) * mu0_exact<Scalar>(d);
}

template <typename Scalar = double>
BoundCurve<Scalar> bound_curve(Eigen::Index d, Scalar s) {
  BoundCurve<Scalar> c;
  c.d = d;
  c.s = s;
  c.upper_e1 = s / Scalar(2);
  c.upper_const = (Scalar(1) - s) * Scalar(d - 1) / Scalar(d);
  c.upper_min = variational_upper<Scalar>(d, s);
  c.s_c = crossing_point<Scalar>(d);
  c.mu0 = mu0_exact<Scalar>(d);
  c.lambda2_lower = lambda2_lower<Scalar>(d, s);
  c.gap_lower = gap_lower_g<Scalar>(d, s);
  c.block_lower = block_lower_bound<Scalar>(d, s, Scalar(1));
  c.floor = gap_floor<Scalar>(d);
  return c;
}

}  // namespace clockgap

#endif  // CLOCKGAP_ANALYTIC_BOUNDS_HPP
