#ifndef CLOCKGAP_CLI_HPP
#define CLOCKGAP_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clockgap/clock_family.hpp"

namespace clockgap::cli {

// Exit codes are a stable contract for CI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCertificationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

struct DRange {
  long first;
  long last;  // inclusive
};

/// Either a single s value or a uniform grid "steps=N".
struct SSpec {
  std::optional<double> value;
  int steps = 0;

  std::vector<double> points() const;
};

/// "7" or "2..64". Throws ParameterError on malformed or empty ranges.
DRange parse_d_range(const std::string& text);

/// "0.25" or "steps=N" with N >= 2.
SSpec parse_s_spec(const std::string& text);

/// Comma- or semicolon-separated list of "b" or "b x mult" items (separator 'x', '*' or U+00D7).
std::vector<ClockBlock<double>> parse_blocks(const std::string& text);

/// Entry point behind the clockgap executable. Reports go to `out` unless
/// --out names a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace clockgap::cli

#endif  // CLOCKGAP_CLI_HPP
