#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "heattrace/spectrum.hpp"

namespace heattrace {

enum class ClassTag { linear_a, equal_roots_a, even_power_a, binomial_reduced, exponential_q, none };

enum class Provenance {
    exact_rational, ///< principal part is exactly rational (principal_exact set)
    exact_special,  ///< closed form in special constants, evaluated in binary64
    numeric_cauchy, ///< contour integration; err_est from a node-doubling check
};

struct PoleDatum {
    std::complex<double> location;
    int order = 1;
    std::vector<std::complex<double>> principal; ///< b_{-1}, ..., b_{-order}
    Provenance provenance = Provenance::exact_special;
    double err_est = 0.0;
    std::optional<std::vector<Rational>> principal_exact;
};

struct Region {
    double r_max = 8.0;  ///< poles with Re(s) >= -r_max
    double y_max = 64.0; ///< and |Im(s)| <= y_max
};

struct CancellationRecord {
    long n;     ///< Gamma pole at -n suppressed because zeta(-n) = 0
    bool exact; ///< confirmed by the exact rational path (numeric-only zeros are flagged)
};

struct ContinuationImpl;

/// Meromorphic continuation of the zeta series attached to a spectrum.
///
/// The object describes a *reduced* operator: `entire_head` lists Dirichlet
/// terms (lambda, signed M) split off so that
///   h_spec(t) = sum_head M e^{-lambda t} + e^{-exp_shift t} * h_reduced(t),
/// and `zeta`/`z_poles` refer to the reduced zeta. For most spectra the head
/// is empty and exp_shift = 0, so reduced = original. zeta_full() adds the
/// head terms back (only meaningful when exp_shift = 0).
struct ContinuationData {
    ClassTag class_tag = ClassTag::none;
    int depth = 0;
    double validity_re = 0;  ///< zeta() trustworthy for Re(s) > -validity_re
    double abscissa = 0;     ///< abscissa of the reduced zeta series
    Region region;
    std::vector<PoleDatum> z_poles; ///< poles of Gamma(s)*zeta(s) inside region
    std::vector<CancellationRecord> cancelled;
    std::vector<std::pair<double, double>> entire_head;
    double exp_shift = 0;

    std::complex<double> zeta(std::complex<double> s) const;
    std::complex<double> zeta_full(std::complex<double> s) const;
    double log_abs_Z(double R, double y) const; ///< log |Gamma(s) zeta(s)| at s = -R + iy
    /// Proven pointwise bound |Z(-R+iy)| <= C e^{-eps |y|} when the class has one.
    std::optional<std::pair<double, double>> analytic_line_bound(double R, double delta) const;
    std::vector<PoleDatum> poles_in(const Region& r) const;

    std::shared_ptr<const ContinuationImpl> impl;
};

/// Build the continuation for the supported spectrum classes.
/// depth only matters for the binomial-reduction route (general polynomial
/// eigenvalues with distinct roots); elsewhere the continuation is global.
ContinuationData continue_zeta(const SpectrumSpec& spec, const Region& region = {}, int depth = 12);

/// Continuation of the index-truncated series sum_{n>=N}: same pole set,
/// Gamma-pole residues shifted by the entire head.
ContinuationData truncated_zeta(const SpectrumSpec& spec, long N, const Region& region = {}, int depth = 12);

/// Laurent principal part of Z at s0. Stored poles are returned as-is; other
/// points are probed by Cauchy integrals (256/512-node trapezoid with a
/// Richardson error estimate).
PoleDatum laurent_at(const ContinuationData& data, std::complex<double> s0, int order_hint = 2);

} // namespace heattrace
