#include "clockgap/certifier.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <sstream>
#include <thread>

namespace clockgap {

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

// Runs body(i) for i in [0, n) on up to worker_count() threads. Exceptions are
// rethrown for the lowest failing index, so failures are schedule independent.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, worker_count())));
  std::vector<std::exception_ptr> errors(n);
  auto run_range = [&](std::size_t worker) {
    for (std::size_t i = worker; i < n; i += workers) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run_range(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run_range, w);
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

std::pair<double, double> merge_family(std::pair<double, double> ground, const FamilySpec& spec,
                                       double s, const SolverConfig& cfg) {
  std::vector<double> pool{ground.first, ground.second};
  for (const auto& blk : spec.blocks()) {
    if (blk.b == 0.0) continue;
    const auto [l1, l2] = two_lowest(build_hj(spec.dim(), s, blk.b), cfg);
    const int copies = std::min(blk.multiplicity, 2);
    for (int c = 0; c < copies; ++c) {
      pool.push_back(l1);
      pool.push_back(l2);
    }
  }
  std::partial_sort(pool.begin(), pool.begin() + 2, pool.end());
  return {pool[0], pool[1]};
}

struct GapEvaluation {
  std::pair<double, double> ground;
  std::optional<std::pair<double, double>> family;

  double binding_gap() const {
    return family ? family->second - family->first : ground.second - ground.first;
  }
};

GapEvaluation evaluate(Eigen::Index d, const std::optional<FamilySpec>& family, double s,
                       const SolverConfig& cfg) {
  try {
    GapEvaluation ev;
    ev.ground = two_lowest(build_h0(d, s), cfg);
    if (family) ev.family = merge_family(ev.ground, *family, s, cfg);
    return ev;
  } catch (const ConvergenceError& e) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "(d=" << d << ", s=" << s << ") " << e.what();
    throw ConvergenceError(msg.str(), e.lower(), e.upper());
  }
}

void check_family(Eigen::Index d, const std::optional<FamilySpec>& family) {
  detail::require_dim(d, "certifier");
  if (family && family->dim() != d) {
    throw DimensionError("certifier: family dimension does not match d");
  }
}

}  // namespace

SGrid SGrid::uniform(int n) {
  if (n < 2) throw ParameterError("SGrid::uniform: need at least 2 points");
  SGrid grid;
  grid.points.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) grid.points[static_cast<std::size_t>(i)] = double(i) / double(n - 1);
  grid.points.back() = 1.0;
  return grid;
}

int worker_count() {
  if (const char* env = std::getenv("CLOCKGAP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::pair<double, double> family_two_lowest(const FamilySpec& spec, double s,
                                            const SolverConfig& cfg) {
  return merge_family(two_lowest(build_h0(spec.dim(), s), cfg), spec, s, cfg);
}

std::vector<SweepRow> sweep(Eigen::Index d, const std::optional<FamilySpec>& family,
                            const SGrid& grid, const SolverConfig& cfg) {
  check_family(d, family);
  cfg.validate();
  const auto& pts = grid.points;
  if (pts.size() < 2 || !std::is_sorted(pts.begin(), pts.end()) || pts.front() != 0.0 ||
      pts.back() != 1.0) {
    throw ParameterError("sweep: grid must be sorted, have >= 2 points, and include s = 0 and s = 1");
  }

  std::vector<SweepRow> rows(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const double s = pts[i];
    const GapEvaluation ev = evaluate(d, family, s, cfg);
    const BoundCurve<double> bc = bound_curve(d, s);
    SweepRow& row = rows[i];
    row.d = d;
    row.s = s;
    row.lambda1 = ev.ground.first;
    row.lambda2 = ev.ground.second;
    row.gap = row.lambda2 - row.lambda1;
    if (ev.family) {
      row.Lambda1 = ev.family->first;
      row.Lambda2 = ev.family->second;
      row.family_gap = ev.family->second - ev.family->first;
    }
    row.upper_min = bc.upper_min;
    row.lambda2_lower = bc.lambda2_lower;
    row.gap_lower = bc.gap_lower;
    row.floor = bc.floor;
    row.margin_vs_floor = row.gap - row.floor;
  });
  return rows;
}

GapMinimum refine_minimum(Eigen::Index d, const std::optional<FamilySpec>& family, double s_lo,
                          double s_hi, const SolverConfig& solver) {
  check_family(d, family);
  SolverConfig cfg = solver;
  cfg.abs_tol = std::min(cfg.abs_tol, kRefineSolverTol);
  cfg.validate();
  if (s_lo > s_hi) throw ParameterError("refine_minimum: bracket is inverted");
  if (s_lo < 0.0 || s_hi > 1.0) throw ParameterError("refine_minimum: bracket must lie in [0, 1]");

  GapMinimum best{s_lo, evaluate(d, family, s_lo, cfg).binding_gap()};
  auto consider = [&best](double s, double gap) {
    if (gap < best.gap) best = {s, gap};
  };
  if (s_hi == s_lo) return best;

  auto f = [&](double s) {
    const double g = evaluate(d, family, s, cfg).binding_gap();
    consider(s, g);
    return g;
  };
  f(s_hi);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = s_lo, b = s_hi;
  double c = b - inv_phi * (b - a);
  double e = a + inv_phi * (b - a);
  double fc = f(c), fe = f(e);
  while (b - a > kRefineResolution) {
    if (fc < fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + inv_phi * (b - a);
      fe = f(e);
    }
  }
  f(0.5 * (a + b));
  return best;
}

GapCertificate certify(Eigen::Index d, const std::optional<FamilySpec>& family, int grid_size,
                       const SolverConfig& cfg) {
  check_family(d, family);
  const SGrid grid = SGrid::uniform(grid_size);
  const std::vector<SweepRow> rows = sweep(d, family, grid, cfg);

  GapCertificate cert;
  cert.d = d;
  cert.family = family;
  cert.grid_size = grid_size;
  cert.floor = gap_floor(d);
  cert.chain_bound = chain_bound(d);
  cert.chain_meets_floor = cert.chain_bound >= cert.floor;
  cert.low_resolution = grid_size < kLowResolutionGrid;
  cert.solver_tol = cfg.abs_tol;

  std::size_t argmin = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].binding_gap() < rows[argmin].binding_gap()) argmin = i;
  }
  cert.grid_min_s = rows[argmin].s;
  cert.grid_min_gap = rows[argmin].binding_gap();
  cert.refined_min_s = cert.grid_min_s;
  cert.refined_min_gap = cert.grid_min_gap;

  const double h = 1.0 / double(grid_size - 1);
  for (const double seed : {cert.grid_min_s, crossing_point(d)}) {
    const GapMinimum m =
        refine_minimum(d, family, std::max(0.0, seed - h), std::min(1.0, seed + h), cfg);
    if (m.gap < cert.refined_min_gap) {
      cert.refined_min_s = m.s;
      cert.refined_min_gap = m.gap;
    }
  }

  const double bound_tol = std::max(1e-9, 10.0 * cfg.abs_tol);
  cert.verdict_floor = cert.refined_min_gap >= cert.floor - 10.0 * cfg.abs_tol;
  cert.verdict_upper = std::all_of(rows.begin(), rows.end(), [&](const SweepRow& r) {
    return r.lambda1 <= r.upper_min + bound_tol;
  });
  if (d >= 3) {
    cert.verdict_lower = std::all_of(rows.begin(), rows.end(), [&](const SweepRow& r) {
      return r.binding_gap() >= r.gap_lower - bound_tol;
    });
  }
  cert.verdict_lambda1_identity = std::all_of(rows.begin(), rows.end(), [&](const SweepRow& r) {
    return !r.Lambda1 || std::abs(*r.Lambda1 - r.lambda1) <= 2.0 * cfg.abs_tol;
  });
  cert.timestamp = utc_timestamp();
  return cert;
}

}  // namespace clockgap
