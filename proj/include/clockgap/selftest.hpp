#ifndef CLOCKGAP_SELFTEST_HPP
#define CLOCKGAP_SELFTEST_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace clockgap {

struct SelftestOptions {
  double tol = 1e-12;     // solver abs_tol; comparison thresholds scale with it
  int max_d = 16;
  double mu0_scale = 1.0;  // != 1 corrupts the closed-form mu0 (fault injection)
};

struct SelftestCheck {
  std::string name;
  double worst;      // worst observed violation measure
  double threshold;
  bool passed;
};

/// Closed-form cross-checks, recurrence residuals, bound sandwiches, and
/// small-d certification.
std::vector<SelftestCheck> run_selftest(const SelftestOptions& opts = {});

void print_selftest_table(std::ostream& out, const std::vector<SelftestCheck>& checks);

}  // namespace clockgap

#endif  // CLOCKGAP_SELFTEST_HPP
