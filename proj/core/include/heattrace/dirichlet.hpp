#pragma once

#include <complex>

#include "heattrace/spectrum.hpp"

namespace heattrace {

struct SeriesMeta {
    double abscissa_zeta = 0;       ///< L; +inf when the zeta series converges nowhere
    bool heat_well_defined = false; ///< sum M_n e^{-t lambda_n} trace-class for every t > 0
    bool analytic = true;           ///< false: numeric limsup estimate
    long indices_used = 0;          ///< numeric path only
    bool divergent_trend = false;   ///< numeric estimate still climbing at the data horizon
};

/// Direct evaluation of sum M_n e^{-t lambda_n} with a certified tail bound
/// (geometric majorant from the eventually-decreasing term ratio).
double heat_trace_direct(const SpectrumSpec& spec, double t, double tol = 1e-12);

/// Direct evaluation of sum M_n lambda_n^{-s}; requires Re(s) > L + 0.1.
std::complex<double> zeta_direct(const SpectrumSpec& spec, std::complex<double> s, double tol = 1e-12);

/// Abscissa of convergence of the zeta series plus the heat-trace criterion.
SeriesMeta abscissa(const SpectrumSpec& spec);

} // namespace heattrace
