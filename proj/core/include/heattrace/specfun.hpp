#pragma once

#include <complex>

#include "heattrace/rational.hpp"

namespace heattrace::specfun {

using Complex = std::complex<double>;

/// Bernoulli number B_n with the B_1 = +1/2 sign convention.
/// The classical generating-function convention (B_1 = -1/2) differs only at n = 1;
/// use bernoulli_number_classic() where a formula assumes that one.
const Rational& bernoulli_number(unsigned n);
Rational bernoulli_number_classic(unsigned n);

/// Bernoulli polynomial B_n(x) (classical: B_1(x) = x - 1/2).
/// Identities honoured exactly: B_n(0) = bernoulli_number_classic(n),
/// B_n(1) = bernoulli_number(n).
const Poly& bernoulli_polynomial_coeffs(unsigned n);
double bernoulli_polynomial(unsigned n, double x);
Rational bernoulli_polynomial_exact(unsigned n, const Rational& x);

/// Eulerian number <j k>: permutations of {1..j} with k descents. Zero for k >= j when j >= 1.
const Int& eulerian_number(unsigned j, unsigned k);

/// Res_{s=-n} Gamma(s) = (-1)^n / n!, exact.
Rational gamma_residue(unsigned n);

/// log Gamma on C minus the poles; imaginary part is not branch-normalised,
/// callers only ever exponentiate or take the real part.
Complex log_gamma(Complex z);

/// Gamma(s). Throws Error(pole_at) for s in {0,-1,-2,...}.
Complex gamma(Complex s);
double gamma(double s);

/// log(sin z) without overflow for large |Im z|.
Complex log_sin(Complex z);

/// Riemann zeta. Throws Error(pole_at) at s = 1. Exact Bernoulli values at
/// integer s <= 0; Euler-Maclaurin summation on the main domain; the
/// functional equation takes over far left / high up where summation is wasteful.
Complex riemann_zeta(Complex s);

/// zeta(-n) = -B_{n+1}/(n+1), exact.
Rational riemann_zeta_neg_int(unsigned n);

/// Hurwitz zeta for alpha > 0, Euler-Maclaurin with adaptive head length and
/// correction order. Throws Error(pole_at) at s = 1.
Complex hurwitz_zeta(Complex s, double alpha);

/// zeta_H(-n, alpha) = -B_{n+1}(alpha)/(n+1), exact.
Rational hurwitz_zeta_neg_int(unsigned n, const Rational& alpha);

/// theta3(0; q) = sum_{n in Z} q^{n^2}, 0 < q < 1 (q = 0 allowed, value 1).
double theta3(double q);
/// theta4(0; q) = sum_{n in Z} (-1)^n q^{n^2}.
double theta4(double q);

inline constexpr double euler_gamma = 0.5772156649015328606;

} // namespace heattrace::specfun
