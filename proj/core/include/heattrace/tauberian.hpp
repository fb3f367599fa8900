#pragma once

#include <string>

#include "heattrace/spectrum.hpp"

namespace heattrace {

/// F(x) = scale * (log x)^exponent; constant when exponent = 0.
struct SlowlyVarying {
    enum class Kind { constant, log_power, unknown } kind = Kind::unknown;
    double scale = 1.0;
    double exponent = 0.0;
};

struct TauberianReport {
    double L = 0;
    SlowlyVarying F;
    bool slow_variation_ok = false;
    std::string note;
    std::vector<std::pair<double, double>> ratio_samples; ///< (t, h(t)/leading(t))

    /// Gamma(L+1) t^{-L} F(1/t)
    double leading(double t) const;
};

/// Leading small-t behaviour from the counting function, Karamata style.
TauberianReport leading_order(const SpectrumSpec& spec);

struct LacunaryEvidence {
    bool lacunary = false;
    std::vector<double> log_ratios; ///< sampled log(lambda_{n+1}/lambda_n)
};

/// True when the eigenvalue ratio grows without bound (zeta then has the
/// imaginary axis as a natural boundary).
LacunaryEvidence classify_lacunary(const SpectrumSpec& spec);

} // namespace heattrace
