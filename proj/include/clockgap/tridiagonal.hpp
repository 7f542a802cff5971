#ifndef CLOCKGAP_TRIDIAGONAL_HPP
#define CLOCKGAP_TRIDIAGONAL_HPP

// Clock-model operators. Every Hamiltonian here is a real symmetric
// tridiagonal matrix, stored as a diagonal and a single off-diagonal.
//
//   -Lap_d      = tridiag(-1/2, [1/2, 1, ..., 1, 1/2], -1/2)
//   H_b(s)      = s (-Lap_d) + (1 - s) I + (b - (1 - s)) |e_1><e_1|
//   H_0(s)      = H_b(s) with b = 0
//
// Indices are 0-based throughout; the 1-based recurrence form appears only in
// eigen_residuals().

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "clockgap/errors.hpp"

namespace clockgap {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

namespace detail {

inline void require_dim(Eigen::Index d, const char* where) {
  if (d < 2) {
    throw DimensionError(std::string(where) + ": dimension must be >= 2, got " +
                         std::to_string(d));
  }
}

template <typename Scalar>
void require_unit_interval(Scalar s, const char* where) {
  if (!(s >= Scalar(0) && s <= Scalar(1))) {
    throw ParameterError(std::string(where) + ": s must lie in [0, 1]");
  }
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& v) {
  return v.array().isFinite().all();
}

}  // namespace detail

/// Real symmetric tridiagonal matrix of dimension >= 2.
template <typename Scalar>
class TridiagonalOperator {
 public:
  using VectorType = Vector<Scalar>;

  TridiagonalOperator(VectorType diag, VectorType offdiag)
      : diag_(std::move(diag)), offdiag_(std::move(offdiag)) {
    detail::require_dim(diag_.size(), "TridiagonalOperator");
    if (offdiag_.size() != diag_.size() - 1) {
      throw DimensionError("TridiagonalOperator: off-diagonal length must be dim - 1");
    }
    if (!detail::all_finite(diag_) || !detail::all_finite(offdiag_)) {
      throw ParameterError("TridiagonalOperator: entries must be finite");
    }
    const Eigen::Index n = dim();
    norm_inf_ = Scalar(0);
    for (Eigen::Index i = 0; i < n; ++i) {
      Scalar row = std::abs(diag_[i]);
      if (i > 0) row += std::abs(offdiag_[i - 1]);
      if (i + 1 < n) row += std::abs(offdiag_[i]);
      norm_inf_ = std::max(norm_inf_, row);
    }
  }

  Eigen::Index dim() const noexcept { return diag_.size(); }
  const VectorType& diag() const noexcept { return diag_; }
  const VectorType& offdiag() const noexcept { return offdiag_; }

  /// Infinity norm (max absolute row sum).
  Scalar norm_inf() const noexcept { return norm_inf_; }

  /// Gershgorin interval [lo, hi] containing the whole spectrum.
  std::pair<Scalar, Scalar> gershgorin() const {
    const Eigen::Index n = dim();
    Scalar lo = diag_[0], hi = diag_[0];
    for (Eigen::Index i = 0; i < n; ++i) {
      Scalar radius = Scalar(0);
      if (i > 0) radius += std::abs(offdiag_[i - 1]);
      if (i + 1 < n) radius += std::abs(offdiag_[i]);
      lo = std::min(lo, diag_[i] - radius);
      hi = std::max(hi, diag_[i] + radius);
    }
    return {lo, hi};
  }

  /// y = T u
  template <typename Derived>
  VectorType apply(const Eigen::MatrixBase<Derived>& u) const {
    if (u.size() != dim()) {
      throw DimensionError("TridiagonalOperator::apply: dimension mismatch");
    }
    const Eigen::Index m = dim() - 1;
    VectorType y = diag_.cwiseProduct(u);
    y.head(m) += offdiag_.cwiseProduct(u.tail(m));
    y.tail(m) += offdiag_.cwiseProduct(u.head(m));
    return y;
  }

  bool operator==(const TridiagonalOperator& other) const {
    return diag_ == other.diag_ && offdiag_ == other.offdiag_;
  }

 private:
  VectorType diag_;
  VectorType offdiag_;
  Scalar norm_inf_{};
};

/// Neumann discrete Laplacian -Lap_d.
template <typename Scalar = double>
TridiagonalOperator<Scalar> build_neumann_laplacian(Eigen::Index d) {
  detail::require_dim(d, "build_neumann_laplacian");
  const Scalar half = Scalar(1) / Scalar(2);
  Vector<Scalar> diag = Vector<Scalar>::Ones(d);
  diag[0] = half;
  diag[d - 1] = half;
  return {std::move(diag), Vector<Scalar>::Constant(d - 1, -half)};
}

/// H_b(s). The (0,0) entry is s/2 + b; the rest of the diagonal is
/// 1 (interior) and 1 - s/2 (last); off-diagonal -s/2.
template <typename Scalar = double>
TridiagonalOperator<Scalar> build_hj(Eigen::Index d, Scalar s, Scalar b) {
  detail::require_dim(d, "build_hj");
  detail::require_unit_interval(s, "build_hj");
  if (!(b >= Scalar(0)) || !std::isfinite(static_cast<double>(b))) {
    throw ParameterError("build_hj: boundary weight b must be finite and >= 0");
  }
  const Scalar half_s = s / Scalar(2);
  // Entries of s (-Lap) + (1 - s) I + (b - (1 - s)) |e_1><e_1| with the
  // (1 - s) terms cancelled symbolically.
  Vector<Scalar> diag = Vector<Scalar>::Ones(d);
  diag[0] = half_s + b;
  diag[d - 1] = Scalar(1) - half_s;
  return {std::move(diag), Vector<Scalar>::Constant(d - 1, -half_s)};
}

/// H_0(s) = s (-Lap_d) + (1 - s) I - (1 - s) |e_1><e_1|.
template <typename Scalar = double>
TridiagonalOperator<Scalar> build_h0(Eigen::Index d, Scalar s) {
  return build_hj<Scalar>(d, s, Scalar(0));
}

/// <u, T u>
template <typename Scalar, typename Derived>
Scalar quadratic_form(const TridiagonalOperator<Scalar>& op,
                      const Eigen::MatrixBase<Derived>& u) {
  if (u.size() != op.dim()) {
    throw DimensionError("quadratic_form: dimension mismatch");
  }
  const Eigen::Index m = op.dim() - 1;
  return u.cwiseAbs2().dot(op.diag()) +
         Scalar(2) * op.offdiag().dot(u.head(m).cwiseProduct(u.tail(m)));
}

/// 1/2 * sum_k |u_k - u_{k+1}|^2, i.e. <u, -Lap u> through the difference
/// operator X with (X u)_k = u_k - u_{k+1}.
template <typename Derived>
typename Derived::Scalar difference_energy(const Eigen::MatrixBase<Derived>& u) {
  using Scalar = typename Derived::Scalar;
  detail::require_dim(u.size(), "difference_energy");
  const Eigen::Index m = u.size() - 1;
  return (u.head(m) - u.tail(m)).squaredNorm() / Scalar(2);
}

template <typename Scalar>
struct EigenResiduals {
  Scalar interior;
  Scalar left;
  Scalar right;

  Scalar max() const { return std::max({interior, left, right}); }
};

/// Residuals of the clock eigenvalue recurrence for H_b(s), written with the
/// 1-based components u_1..u_d used by the recurrence:
///   interior: (s/2)(u_{k-1} + u_{k+1}) = (1 - lambda) u_k,  k = 2..d-1
///   left:     u_1 (b + s/2 - lambda) = (s/2) u_2
///   right:    (1 - s/2 - lambda) u_d = (s/2) u_{d-1}
/// All three vanish exactly when (lambda, u) is an eigenpair of build_hj(d, s, b).
template <typename Scalar, typename Derived>
EigenResiduals<Scalar> eigen_residuals(Eigen::Index d, Scalar s, Scalar b, Scalar lambda,
                                       const Eigen::MatrixBase<Derived>& u) {
  detail::require_dim(d, "eigen_residuals");
  if (u.size() != d) {
    throw DimensionError("eigen_residuals: vector length must equal d");
  }
  const Scalar half_s = s / Scalar(2);
  // 1-based accessor: u1(k) is u_k in the recurrence above.
  auto u1 = [&u](Eigen::Index k) { return u[k - 1]; };

  Scalar interior = Scalar(0);
  for (Eigen::Index k = 2; k <= d - 1; ++k) {
    interior = std::max(
        interior, std::abs(half_s * (u1(k - 1) + u1(k + 1)) - (Scalar(1) - lambda) * u1(k)));
  }
  const Scalar left = std::abs(u1(1) * (b + half_s - lambda) - half_s * u1(2));
  const Scalar right = std::abs((Scalar(1) - half_s - lambda) * u1(d) - half_s * u1(d - 1));
  return {interior, left, right};
}

}  // namespace clockgap

#endif  // CLOCKGAP_TRIDIAGONAL_HPP
