#ifndef CLOCKGAP_ERRORS_HPP
#define CLOCKGAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace clockgap {

/// Operator or vector dimensions are invalid or do not match.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A scalar parameter (s, b, k, tolerance, ...) is outside its domain.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bisection exhausted its iteration budget. Carries the best bracket found.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double lower, double upper)
      : std::runtime_error(what), lower_(lower), upper_(upper) {}

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

}  // namespace clockgap

#endif  // CLOCKGAP_ERRORS_HPP
