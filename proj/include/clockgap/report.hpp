#ifndef CLOCKGAP_REPORT_HPP
#define CLOCKGAP_REPORT_HPP

// CSV and JSON encodings of sweep rows, bound curves, and gap certificates.
// CSV is locale independent: '.' decimal point, 17 significant digits, '\n'
// line endings, empty cells for absent optional values.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "clockgap/analytic_bounds.hpp"
#include "clockgap/certifier.hpp"

namespace clockgap {

inline constexpr const char* kSweepCsvHeader =
    "d,s,lambda1,lambda2,gap,Lambda1,Lambda2,family_gap,upper_min,lambda2_lower,gap_lower,floor,"
    "margin_vs_floor";
inline constexpr const char* kBoundsCsvHeader =
    "d,s,upper_e1,upper_const,upper_min,s_c,mu0,lambda2_lower,gap_lower,block_lower,floor";
inline constexpr const char* kCertificateCsvHeader =
    "d,blocks,grid_size,grid_min_s,grid_min_gap,refined_min_s,refined_min_gap,floor,chain_bound,"
    "chain_meets_floor,verdict_floor,verdict_upper,verdict_lower,verdict_lambda1_identity,"
    "low_resolution,solver_tol,timestamp";

/// 17 significant digits, independent of the global locale.
std::string format_real(double value);
std::string format_optional(const std::optional<double>& value);

/// Nonzero blocks of a family as "b" or "bxm" items, comma separated.
std::string format_blocks(const FamilySpec& family);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool header = true);
void write_bounds_csv(std::ostream& out, const std::vector<BoundCurve<double>>& rows,
                      bool header = true);
void write_certificates_csv(std::ostream& out, const std::vector<GapCertificate>& certs,
                            bool header = true);

nlohmann::json to_json(const SweepRow& row);
nlohmann::json to_json(const BoundCurve<double>& curve);
nlohmann::json to_json(const GapCertificate& cert);
GapCertificate certificate_from_json(const nlohmann::json& j);

}  // namespace clockgap

#endif  // CLOCKGAP_REPORT_HPP
