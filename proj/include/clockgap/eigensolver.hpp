#ifndef CLOCKGAP_EIGENSOLVER_HPP
#define CLOCKGAP_EIGENSOLVER_HPP

// Lowest eigenpairs of a symmetric tridiagonal operator.
//
// Eigenvalues come from bisection on the Sturm (LDL^T inertia) count, starting
// from the Gershgorin interval. Eigenvectors come from inverse iteration with a
// partially pivoted tridiagonal LU solve; vectors whose eigenvalues lie within
// kClusterSeparation of each other are reorthogonalized.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "clockgap/errors.hpp"
#include "clockgap/tridiagonal.hpp"

namespace clockgap {

struct SolverConfig {
  double abs_tol = 1e-12;
  int max_bisection_iters = 200;
  bool want_vectors = false;

  void validate() const {
    if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) {
      throw ParameterError("SolverConfig: abs_tol must be positive and finite");
    }
    if (max_bisection_iters < 60) {
      throw ParameterError("SolverConfig: max_bisection_iters must be >= 60");
    }
  }
};

template <typename Scalar = double>
struct SpectrumResult {
  std::vector<Scalar> eigenvalues;                   // ascending
  std::optional<std::vector<Vector<Scalar>>> eigenvectors;
  Scalar abs_tol{};                                  // largest final bracket half-width
  Eigen::Index dim{};
};

inline constexpr double kClusterSeparation = 1e-8;
inline constexpr int kInverseIterations = 5;

/// Number of eigenvalues of `op` strictly below x.
///
/// Pivots q_i = (a_i - x) - b_{i-1}^2 / q_{i-1}; the count of negative pivots
/// equals the count of eigenvalues below x. A pivot smaller in magnitude than
/// pivmin = eps * ||T||_inf is replaced by +pivmin, so an exact zero pivot is
/// not counted. The substitution is a diagonal perturbation of at most pivmin.
template <typename Scalar>
Eigen::Index sturm_count(const TridiagonalOperator<Scalar>& op, Scalar x) {
  const Eigen::Index n = op.dim();
  const Scalar* a = op.diag().data();
  const Scalar* b = op.offdiag().data();
  const Scalar pivmin = std::max(std::numeric_limits<Scalar>::min(),
                                 std::numeric_limits<Scalar>::epsilon() * op.norm_inf());

  Eigen::Index count = 0;
  Scalar q = a[0] - x;
  if (std::abs(q) < pivmin) q = pivmin;
  if (q < Scalar(0)) ++count;
  for (Eigen::Index i = 1; i < n; ++i) {
    q = (a[i] - x) - b[i - 1] * b[i - 1] / q;
    if (std::abs(q) < pivmin) q = pivmin;
    if (q < Scalar(0)) ++count;
  }
  return count;
}

namespace detail {

/// sturm_count at two shifts in one pass. The two recurrences are independent,
/// so their divisions overlap in the pipeline.
template <typename Scalar>
std::pair<Eigen::Index, Eigen::Index> sturm_count_pair(const TridiagonalOperator<Scalar>& op,
                                                       Scalar x, Scalar y) {
  const Eigen::Index n = op.dim();
  const Scalar* a = op.diag().data();
  const Scalar* b = op.offdiag().data();
  const Scalar pivmin = std::max(std::numeric_limits<Scalar>::min(),
                                 std::numeric_limits<Scalar>::epsilon() * op.norm_inf());

  Eigen::Index cx = 0, cy = 0;
  Scalar qx = a[0] - x;
  Scalar qy = a[0] - y;
  if (std::abs(qx) < pivmin) qx = pivmin;
  if (std::abs(qy) < pivmin) qy = pivmin;
  cx += qx < Scalar(0);
  cy += qy < Scalar(0);
  for (Eigen::Index i = 1; i < n; ++i) {
    const Scalar b2 = b[i - 1] * b[i - 1];
    qx = (a[i] - x) - b2 / qx;
    qy = (a[i] - y) - b2 / qy;
    if (std::abs(qx) < pivmin) qx = pivmin;
    if (std::abs(qy) < pivmin) qy = pivmin;
    cx += qx < Scalar(0);
    cy += qy < Scalar(0);
  }
  return {cx, cy};
}

}  // namespace detail

namespace detail {

/// LU factorization with partial pivoting of (T - shift I), LAPACK gttrf layout.
template <typename Scalar>
class ShiftedTridiagonalLU {
 public:
  ShiftedTridiagonalLU(const TridiagonalOperator<Scalar>& op, Scalar shift)
      : n_(op.dim()),
        lower_(op.offdiag()),
        diag_(op.diag().array() - shift),
        upper_(op.offdiag()),
        upper2_(Vector<Scalar>::Zero(std::max<Eigen::Index>(n_ - 2, 0))),
        swapped_(static_cast<std::size_t>(n_ - 1), false) {
    const Scalar tiny = std::numeric_limits<Scalar>::epsilon() *
                        std::max(op.norm_inf(), std::numeric_limits<Scalar>::min());
    for (Eigen::Index i = 0; i + 1 < n_; ++i) {
      if (std::abs(diag_[i]) >= std::abs(lower_[i])) {
        if (diag_[i] == Scalar(0)) diag_[i] = tiny;
        const Scalar fact = lower_[i] / diag_[i];
        lower_[i] = fact;
        diag_[i + 1] -= fact * upper_[i];
      } else {
        const Scalar fact = diag_[i] / lower_[i];
        diag_[i] = lower_[i];
        lower_[i] = fact;
        const Scalar temp = upper_[i];
        upper_[i] = diag_[i + 1];
        diag_[i + 1] = temp - fact * diag_[i + 1];
        if (i + 2 < n_) {
          upper2_[i] = upper_[i + 1];
          upper_[i + 1] = -fact * upper_[i + 1];
        }
        swapped_[static_cast<std::size_t>(i)] = true;
      }
    }
    for (Eigen::Index i = 0; i < n_; ++i) {
      if (std::abs(diag_[i]) < tiny) diag_[i] = std::copysign(tiny, diag_[i]);
    }
  }

  void solve_in_place(Vector<Scalar>& x) const {
    for (Eigen::Index i = 0; i + 1 < n_; ++i) {
      if (swapped_[static_cast<std::size_t>(i)]) {
        const Scalar temp = x[i];
        x[i] = x[i + 1];
        x[i + 1] = temp - lower_[i] * x[i];
      } else {
        x[i + 1] -= lower_[i] * x[i];
      }
    }
    x[n_ - 1] /= diag_[n_ - 1];
    x[n_ - 2] = (x[n_ - 2] - upper_[n_ - 2] * x[n_ - 1]) / diag_[n_ - 2];
    for (Eigen::Index i = n_ - 3; i >= 0; --i) {
      x[i] = (x[i] - upper_[i] * x[i + 1] - upper2_[i] * x[i + 2]) / diag_[i];
    }
  }

 private:
  Eigen::Index n_;
  Vector<Scalar> lower_;
  Vector<Scalar> diag_;
  Vector<Scalar> upper_;
  Vector<Scalar> upper2_;
  std::vector<bool> swapped_;
};

template <typename Scalar>
Vector<Scalar> inverse_iteration(const TridiagonalOperator<Scalar>& op, Scalar lambda,
                                 const std::vector<const Vector<Scalar>*>& cluster,
                                 std::uint64_t seed) {
  const Eigen::Index n = op.dim();
  const ShiftedTridiagonalLU<Scalar> lu(op, lambda);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector<Scalar> x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = Scalar(dist(rng));

  auto orthogonalize = [&cluster](Vector<Scalar>& v) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector<Scalar>* q : cluster) v -= q->dot(v) * (*q);
    }
  };
  orthogonalize(x);
  x.normalize();

  const Scalar target = Scalar(1e-13) * (op.norm_inf() + std::abs(lambda));
  for (int it = 0; it < kInverseIterations; ++it) {
    lu.solve_in_place(x);
    orthogonalize(x);
    x.normalize();
    if (it >= 1 && (op.apply(x) - lambda * x).norm() <= target) break;
  }
  return x;
}

}  // namespace detail

/// The k smallest eigenvalues of `op`, each bracketed to half-width
/// cfg.abs_tol, plus eigenvectors when cfg.want_vectors is set.
///
/// Bisection stops early only if the bracket can no longer be split in
/// floating point; the achieved half-width is reported in abs_tol.
template <typename Scalar>
SpectrumResult<Scalar> smallest_eigenvalues(const TridiagonalOperator<Scalar>& op,
                                            Eigen::Index k, const SolverConfig& cfg = {}) {
  cfg.validate();
  const Eigen::Index n = op.dim();
  if (k < 1 || k > n) {
    throw ParameterError("smallest_eigenvalues: k must satisfy 1 <= k <= dim");
  }

  auto [glo, ghi] = op.gershgorin();
  const Scalar pad = Scalar(2) * std::numeric_limits<Scalar>::epsilon() *
                         Scalar(n) * std::max(op.norm_inf(), Scalar(1)) +
                     Scalar(cfg.abs_tol);
  glo -= pad;
  ghi += pad;

  const auto kk = static_cast<std::size_t>(k);
  std::vector<Scalar> lo(kk, glo), hi(kk, ghi);
  const Scalar tol = Scalar(cfg.abs_tol);

  SpectrumResult<Scalar> result;
  result.dim = n;
  result.eigenvalues.resize(kk);
  result.abs_tol = Scalar(0);

  auto record = [&](Scalar x, Eigen::Index below_count, std::size_t from) {
    const auto below = static_cast<std::size_t>(below_count);
    for (std::size_t j = from; j < kk; ++j) {
      if (below > j) {
        hi[j] = std::min(hi[j], x);
      } else {
        lo[j] = std::max(lo[j], x);
      }
    }
  };
  auto midpoint = [&](std::size_t j) { return lo[j] + (hi[j] - lo[j]) / Scalar(2); };
  // Unconverged and still splittable in floating point.
  auto active = [&](std::size_t j) {
    if (j >= kk || (hi[j] - lo[j]) / Scalar(2) <= tol) return false;
    const Scalar mid = midpoint(j);
    return mid > lo[j] && mid < hi[j];
  };
  auto give_up = [&](std::size_t j) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "smallest_eigenvalues: bisection for eigenvalue " << j << " did not converge in "
        << cfg.max_bisection_iters << " iterations; bracket [" << static_cast<double>(lo[j])
        << ", " << static_cast<double>(hi[j]) << "]";
    return ConvergenceError(msg.str(), static_cast<double>(lo[j]), static_cast<double>(hi[j]));
  };

  // Eigenvalues are bisected in pairs (i, i + 1) so each sweep serves two shifts.
  for (std::size_t i = 0; i < kk; i += 2) {
    const std::size_t j = i + 1;
    if (i > 0) lo[i] = std::max(lo[i], lo[i - 1]);
    if (j < kk) lo[j] = std::max(lo[j], lo[i]);
    int iters_i = 0, iters_j = 0;
    while (true) {
      const bool act_i = active(i);
      const bool act_j = active(j);
      if (!act_i && !act_j) break;
      if (act_i && ++iters_i > cfg.max_bisection_iters) throw give_up(i);
      if (act_j && ++iters_j > cfg.max_bisection_iters) throw give_up(j);
      if (act_i && act_j && midpoint(i) != midpoint(j)) {
        const Scalar xi = midpoint(i), xj = midpoint(j);
        const auto [ci, cj] = detail::sturm_count_pair(op, xi, xj);
        record(xi, ci, i);
        record(xj, cj, i);
      } else {
        const Scalar x = act_i ? midpoint(i) : midpoint(j);
        record(x, sturm_count(op, x), i);
      }
    }
    for (std::size_t m = i; m < std::min(j + 1, kk); ++m) {
      result.eigenvalues[m] = midpoint(m);
      result.abs_tol = std::max(result.abs_tol, (hi[m] - lo[m]) / Scalar(2));
    }
  }

  if (cfg.want_vectors) {
    std::vector<Vector<Scalar>> vectors;
    vectors.reserve(kk);
    std::size_t cluster_start = 0;
    for (std::size_t i = 0; i < kk; ++i) {
      if (i > 0 && result.eigenvalues[i] - result.eigenvalues[i - 1] >=
                       Scalar(kClusterSeparation)) {
        cluster_start = i;
      }
      std::vector<const Vector<Scalar>*> cluster;
      for (std::size_t j = cluster_start; j < i; ++j) cluster.push_back(&vectors[j]);
      vectors.push_back(detail::inverse_iteration(op, result.eigenvalues[i], cluster,
                                                  0x9e3779b97f4a7c15ULL + i));
    }
    result.eigenvectors = std::move(vectors);
  }
  return result;
}

/// Lowest two eigenvalues (lambda1 <= lambda2).
template <typename Scalar>
std::pair<Scalar, Scalar> two_lowest(const TridiagonalOperator<Scalar>& op,
                                     const SolverConfig& cfg = {}) {
  SolverConfig values_only = cfg;
  values_only.want_vectors = false;
  const auto res = smallest_eigenvalues(op, 2, values_only);
  return {res.eigenvalues[0], res.eigenvalues[1]};
}

}  // namespace clockgap

#endif  // CLOCKGAP_EIGENSOLVER_HPP
