#pragma once

#include <complex>
#include <functional>

namespace heattrace {

/// Adaptive Simpson on [a,b] with a relative target. Value type: double or complex.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-9, int max_depth = 40);
std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f,
                                       double a, double b, double rel_tol = 1e-9, int max_depth = 40);

} // namespace heattrace
