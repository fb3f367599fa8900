#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "heattrace/rational.hpp"

namespace heattrace {

/// lambda_n = A(n), M_n = B(n) for n >= n_start. Roots of A must avoid the index set.
struct PolynomialSpectrum {
    Poly a; ///< eigenvalue polynomial A
    Poly b; ///< multiplicity polynomial B
    long n_start = 0;
};

/// lambda_n = q^{-r n}, M_n = p(n) * lambda_n^{mult_power}, n >= 0.
/// mult_power = 0 is the plain polynomial-multiplicity family; a positive value
/// realises spectra whose multiplicities themselves grow geometrically
/// (e.g. lambda_n = M_n = 2^n with q = 1/2, p = 1, mult_power = 1).
struct ExponentialSpectrum {
    double q = 0.5;
    std::optional<Rational> q_exact; ///< set when q was given exactly
    Poly p = Poly::constant(1);
    double power_r = 1.0;
    Rational mult_power = 0;
};

/// Closed-form eigenvalue tail for explicit spectra.
struct TailDescriptor {
    enum class Kind { power, exponential, exp_power };
    Kind kind = Kind::power;
    double c = 1.0;    ///< power: c*n^g; exponential: c*base^n; exp_power: exp(c*n^g)
    double g = 1.0;
    double base = 2.0; ///< exponential kind only
    double lambda(long n) const;
    double log_lambda(long n) const;
};

/// Finite list of (lambda, multiplicity) pairs, optionally extended by a tail law.
struct ExplicitSpectrum {
    std::vector<std::pair<double, double>> pairs;
    std::optional<TailDescriptor> tail;
};

struct SpectrumSpec {
    std::variant<PolynomialSpectrum, ExponentialSpectrum, ExplicitSpectrum> kind;
    Rational scale = 1; ///< lambda -> scale * (lambda_base + shift)
    Rational shift = 0;

    const PolynomialSpectrum* as_polynomial() const { return std::get_if<PolynomialSpectrum>(&kind); }
    const ExponentialSpectrum* as_exponential() const { return std::get_if<ExponentialSpectrum>(&kind); }
    const ExplicitSpectrum* as_explicit() const { return std::get_if<ExplicitSpectrum>(&kind); }
};

struct CountingPoint {
    double lambda;
    double count;
};

/// Validate a raw description. Invariants checked on a 1e4-index prefix plus
/// symbolic certificates (root bounds) where the kind allows.
SpectrumSpec make_spectrum(SpectrumSpec raw);

/// First represented index: n_start for the polynomial kind, 0 otherwise.
long first_index(const SpectrumSpec& spec);

/// lambda_n at the raw index n (n >= first_index).
double eigenvalue(const SpectrumSpec& spec, long n);
double log_eigenvalue(const SpectrumSpec& spec, long n); ///< overflow-safe for lacunary tails
double multiplicity(const SpectrumSpec& spec, long n);

/// N(lambda): total multiplicity of eigenvalues <= lambda.
CountingPoint counting_function(const SpectrumSpec& spec, double lambda);

/// Same spectrum with the first k represented eigenvalues dropped.
SpectrumSpec shift_index(const SpectrumSpec& spec, long k);

/// Number of represented eigenvalues available (LONG_MAX when unbounded data).
long represented_count(const SpectrumSpec& spec);

/// Eigenvalue/multiplicity polynomials with scale, shift and n_start folded in,
/// reindexed so the running index m starts at 0. Polynomial kind only.
struct EffectivePolynomials {
    Poly a; ///< lambda_m = a(m)
    Poly b; ///< M_m = b(m)
};
EffectivePolynomials effective_polynomials(const SpectrumSpec& spec);

} // namespace heattrace
