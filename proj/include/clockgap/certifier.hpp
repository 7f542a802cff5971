#ifndef CLOCKGAP_CERTIFIER_HPP
#define CLOCKGAP_CERTIFIER_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "clockgap/analytic_bounds.hpp"
#include "clockgap/clock_family.hpp"
#include "clockgap/eigensolver.hpp"

namespace clockgap {

using FamilySpec = ClockFamilySpec<double>;

/// Uniform grid over s in [0, 1], endpoints included.
struct SGrid {
  std::vector<double> points;

  static SGrid uniform(int n);
};

struct SweepRow {
  Eigen::Index d = 0;
  double s = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double gap = 0.0;
  std::optional<double> Lambda1;
  std::optional<double> Lambda2;
  std::optional<double> family_gap;
  double upper_min = 0.0;
  double lambda2_lower = 0.0;
  double gap_lower = 0.0;
  double floor = 0.0;
  double margin_vs_floor = 0.0;  // gap - floor

  /// The gap that certification binds on: family_gap for family runs, gap otherwise.
  double binding_gap() const { return family_gap.value_or(gap); }
};

struct GapCertificate {
  Eigen::Index d = 0;
  std::optional<FamilySpec> family;
  int grid_size = 0;
  double grid_min_s = 0.0;
  double grid_min_gap = 0.0;
  double refined_min_s = 0.0;
  double refined_min_gap = 0.0;
  double floor = 0.0;
  double chain_bound = 0.0;        // s_c * mu0
  bool chain_meets_floor = false;  // s_c * mu0 >= 1/(2 d^2)
  bool verdict_floor = false;
  bool verdict_upper = false;
  std::optional<bool> verdict_lower;  // not applicable for d = 2
  bool verdict_lambda1_identity = false;
  bool low_resolution = false;
  double solver_tol = 0.0;
  std::string timestamp;

  bool operator==(const GapCertificate&) const = default;
};

struct GapMinimum {
  double s;
  double gap;
};

/// Grids coarser than this are flagged low-resolution in certificates.
inline constexpr int kLowResolutionGrid = 101;
/// s-resolution of golden-section refinement.
inline constexpr double kRefineResolution = 1e-6;
/// Solver tolerance cap during refinement. Near a minimum the gap varies by
/// only curvature * (1e-6)^2 ~ 1e-12 across the final bracket, so gaps must be
/// resolved well below that.
inline constexpr double kRefineSolverTol = 1e-14;

/// Two lowest eigenvalues of the block-diagonal family at s. Each distinct b
/// is solved once; a block of multiplicity >= 2 contributes each of its
/// eigenvalues twice to the merged multiset.
std::pair<double, double> family_two_lowest(const FamilySpec& spec, double s,
                                            const SolverConfig& cfg = {});

/// One row per grid point, sorted by s. Grid points are evaluated in parallel
/// (see worker_count()).
std::vector<SweepRow> sweep(Eigen::Index d, const std::optional<FamilySpec>& family,
                            const SGrid& grid, const SolverConfig& cfg = {});

/// Golden-section search for the minimum of the (family) gap on [s_lo, s_hi],
/// solving with abs_tol = min(cfg.abs_tol, kRefineSolverTol).
/// Returns the best point evaluated, including the bracket endpoints.
GapMinimum refine_minimum(Eigen::Index d, const std::optional<FamilySpec>& family,
                          double s_lo, double s_hi, const SolverConfig& cfg = {});

/// Sweep + refinement seeded at the grid argmin and at s_c, with all verdicts.
/// A failed verdict is reported in the certificate, never thrown.
GapCertificate certify(Eigen::Index d, const std::optional<FamilySpec>& family,
                       int grid_size = 1001, const SolverConfig& cfg = {});

/// Worker threads used by sweep(): $CLOCKGAP_THREADS when set to a positive
/// integer, otherwise the hardware concurrency.
int worker_count();

}  // namespace clockgap

#endif  // CLOCKGAP_CERTIFIER_HPP
