#pragma once

#include "speclen/errors.hpp"

namespace speclen {

// Riemann zeta on the real axis, s >= 1 + 1e-6. Partial sum plus
// Euler-Maclaurin tail correction; absolute error <= 1e-12.
double riemann_zeta(double s);

// Gamma function for s > 0, relative error <= 1e-12.
double gamma_function(double s);

// 1/Gamma(s) for any real s (entire; zero at the poles of Gamma).
double reciprocal_gamma(double s);

// Upper incomplete gamma Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt for
// x > 0 and any real s in a wide range around [-10, 10]; relative error
// <= 1e-10. Continued fraction for x >= s+1, series / downward recursion
// otherwise.
double upper_incomplete_gamma(double s, double x);

}  // namespace speclen
