#include "clockgap/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>

#include "clockgap/analytic_bounds.hpp"
#include "clockgap/certifier.hpp"
#include "clockgap/eigensolver.hpp"
#include "clockgap/tridiagonal.hpp"

namespace clockgap {

namespace {

class CheckBuilder {
 public:
  CheckBuilder(std::string name, double threshold) : name_(std::move(name)), threshold_(threshold) {}

  void observe(double violation) {
    if (std::isnan(violation)) {
      nan_ = true;
    } else {
      worst_ = std::max(worst_, violation);
    }
  }

  SelftestCheck done() const {
    return {name_, worst_, threshold_, !nan_ && worst_ <= threshold_};
  }

 private:
  std::string name_;
  double threshold_;
  double worst_ = 0.0;
  bool nan_ = false;
};

}  // namespace

std::vector<SelftestCheck> run_selftest(const SelftestOptions& opts) {
  SolverConfig cfg;
  cfg.abs_tol = opts.tol;
  cfg.validate();
  const int max_d = std::max(opts.max_d, 4);
  const double value_tol = std::max(1e-10, 100.0 * opts.tol);
  const double bound_tol = std::max(1e-9, 10.0 * opts.tol);
  const double pi = std::numbers::pi;

  std::vector<SelftestCheck> checks;

  {
    CheckBuilder c("neumann_closed_form", value_tol);
    for (int d = 2; d <= max_d; ++d) {
      const auto res = smallest_eigenvalues(build_neumann_laplacian(d), d, cfg);
      for (int n = 0; n < d; ++n) {
        c.observe(std::abs(res.eigenvalues[n] - (1.0 - std::cos(n * pi / d))));
      }
    }
    checks.push_back(c.done());
  }
  {
    CheckBuilder spectrum("lemma_closed_form", value_tol);
    CheckBuilder ground("mu0_vs_solver", value_tol);
    for (int d = 2; d <= max_d; ++d) {
      const auto res = smallest_eigenvalues(build_hj(d, 1.0, 0.5), d, cfg);
      const auto closed = lemma_spectrum(d);
      for (int n = 0; n < d; ++n) spectrum.observe(std::abs(res.eigenvalues[n] - closed[n].lambda));
      ground.observe(std::abs(res.eigenvalues[0] - opts.mu0_scale * mu0_exact(d)));
    }
    checks.push_back(spectrum.done());
    checks.push_back(ground.done());
  }
  {
    CheckBuilder c("recurrence_residuals", bound_tol);
    SolverConfig vcfg = cfg;
    vcfg.want_vectors = true;
    for (int d : {2, 3, 5, 8, max_d}) {
      for (double s : {0.0, 0.3, 0.7, 1.0}) {
        for (double b : {0.0, 0.5, 1.0, 3.0}) {
          const auto op = build_hj(d, s, b);
          const auto res = smallest_eigenvalues(op, std::min(d, 4), vcfg);
          for (std::size_t i = 0; i < res.eigenvalues.size(); ++i) {
            const auto r = eigen_residuals(d, s, b, res.eigenvalues[i], (*res.eigenvectors)[i]);
            c.observe(r.max() / (op.norm_inf() + std::abs(res.eigenvalues[i])));
          }
        }
      }
    }
    checks.push_back(c.done());
  }
  {
    CheckBuilder c("factorization_identity", 1e-12);
    std::mt19937_64 rng(20240611);
    std::normal_distribution<double> normal;
    for (int d : {2, 3, 7, max_d}) {
      const auto lap = build_neumann_laplacian(d);
      for (int trial = 0; trial < 50; ++trial) {
        Vector<double> u(d);
        for (int i = 0; i < d; ++i) u[i] = normal(rng);
        c.observe(std::abs(quadratic_form(lap, u) - difference_energy(u)) / u.squaredNorm());
      }
    }
    checks.push_back(c.done());
  }
  {
    CheckBuilder upper("upper_bound_lambda1", bound_tol);
    CheckBuilder lower2("lower_bound_lambda2", bound_tol);
    CheckBuilder gap("lower_bound_gap", bound_tol);
    const SGrid grid = SGrid::uniform(51);
    for (int d = 2; d <= max_d; ++d) {
      for (double s : grid.points) {
        const auto [l1, l2] = two_lowest(build_h0(d, s), cfg);
        upper.observe(l1 - variational_upper(d, s));
        lower2.observe(lambda2_lower(d, s) - l2);
        if (d >= 3) gap.observe(gap_lower_g(d, s) - (l2 - l1));
      }
    }
    checks.push_back(upper.done());
    checks.push_back(lower2.done());
    checks.push_back(gap.done());
  }
  {
    CheckBuilder single("floor_single_block", 10.0 * opts.tol);
    CheckBuilder family("floor_family", 10.0 * opts.tol);
    for (int d = 2; d <= max_d; ++d) {
      const auto cert = certify(d, std::nullopt, 201, cfg);
      single.observe(cert.floor - cert.refined_min_gap);
      const auto fam = FamilySpec::with_ground_block(d, {{1.0, 2}, {2.0, 1}, {7.0, 1}});
      const auto fcert = certify(d, fam, 201, cfg);
      family.observe(fcert.floor - fcert.refined_min_gap);
    }
    checks.push_back(single.done());
    checks.push_back(family.done());
  }
  return checks;
}

void print_selftest_table(std::ostream& out, const std::vector<SelftestCheck>& checks) {
  out << std::left << std::setw(24) << "check" << std::setw(14) << "worst" << std::setw(14)
      << "threshold" << "result\n";
  for (const auto& c : checks) {
    out << std::left << std::setw(24) << c.name << std::setw(14) << std::setprecision(4)
        << std::scientific << c.worst << std::setw(14) << c.threshold
        << (c.passed ? "PASS" : "FAIL") << '\n';
  }
  out << std::defaultfloat;
}

}  // namespace clockgap
