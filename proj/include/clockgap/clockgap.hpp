#ifndef CLOCKGAP_CLOCKGAP_HPP
#define CLOCKGAP_CLOCKGAP_HPP

#include "clockgap/analytic_bounds.hpp"
#include "clockgap/certifier.hpp"
#include "clockgap/clock_family.hpp"
#include "clockgap/eigensolver.hpp"
#include "clockgap/errors.hpp"
#include "clockgap/report.hpp"
#include "clockgap/selftest.hpp"
#include "clockgap/tridiagonal.hpp"

#endif  // CLOCKGAP_CLOCKGAP_HPP
