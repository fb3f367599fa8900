#include "heattrace/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace heattrace {

namespace {

using Complex = std::complex<double>;

// sum_{m >= N} m^{-kappa} by Euler-Maclaurin with a certified remainder;
// valid for Re(kappa) > 1.
Complex power_tail(Complex kappa, double N, double* err = nullptr) {
    double lg = std::log(N);
    auto npow = [&](Complex e) { return std::exp(-e * lg); };
    Complex val = npow(kappa - 1.0) / (kappa - 1.0) + 0.5 * npow(kappa) + kappa / 12.0 * npow(kappa + 1.0);
    if (err) {
        double k = std::abs(kappa);
        *err = k * (k + 1.0) * (k + 2.0) / 720.0 * std::exp(-(kappa.real() + 3.0) * lg);
    }
    return val;
}

} // namespace

SeriesMeta abscissa(const SpectrumSpec& spec) {
    SeriesMeta meta;
    if (auto* ps = spec.as_polynomial()) {
        (void)ps;
        auto eff = effective_polynomials(spec);
        meta.abscissa_zeta = static_cast<double>(1 + eff.b.degree()) / static_cast<double>(eff.a.degree());
        meta.heat_well_defined = true;
        meta.analytic = true;
        return meta;
    }
    if (auto* es = spec.as_exponential()) {
        meta.abscissa_zeta = to_double(es->mult_power);
        meta.heat_well_defined = true;
        meta.analytic = true;
        return meta;
    }
    // explicit kind: limsup estimate of log N(lambda_n)/log lambda_n
    meta.analytic = false;
    long cap = std::min<long>(represented_count(spec), 100000);
    std::vector<double> ratio(cap), eps_ratio(cap);
    double count = 0;
    for (long n = 0; n < cap; ++n) {
        count += multiplicity(spec, n);
        double ll = log_eigenvalue(spec, n);
        ratio[n] = ll > 0 ? std::log(count) / ll : std::numeric_limits<double>::infinity();
        double lam = std::exp(std::min(ll, 700.0));
        eps_ratio[n] = std::log(count) / lam;
    }
    meta.indices_used = cap;
    auto window_max = [&](const std::vector<double>& v, long lo, long hi) {
        lo = std::clamp<long>(lo, 0, hi - 1);
        double m = -std::numeric_limits<double>::infinity();
        for (long i = lo; i < hi; ++i) m = std::max(m, v[i]);
        return m;
    };
    double last = window_max(ratio, cap - std::max<long>(1, cap / 10), cap);
    // compare against the estimate one decade earlier to catch slow divergence
    double prev = cap >= 100 ? window_max(ratio, cap / 10 - std::max<long>(1, cap / 100), cap / 10) : last;
    meta.abscissa_zeta = std::max(last, 0.0);
    meta.divergent_trend = last > prev * 1.05 && last > prev + 0.02;
    if (meta.divergent_trend && last > 2.0) meta.abscissa_zeta = std::numeric_limits<double>::infinity();
    double eps_last = window_max(eps_ratio, cap - std::max<long>(1, cap / 10), cap);
    meta.heat_well_defined = eps_last < 0.05;
    return meta;
}

double heat_trace_direct(const SpectrumSpec& spec, double t, double tol) {
    if (!(t > 0)) fail(errc::domain_error, "heat trace requires t > 0");
    if (!(tol > 0)) fail(errc::domain_error, "tolerance must be positive");
    SeriesMeta meta = abscissa(spec);
    if (!meta.heat_well_defined) fail(errc::not_trace_class, "heat trace is not trace class for this spectrum");

    long cap = represented_count(spec);
    long base = first_index(spec);
    double acc = 0;
    double prev_log_term = std::numeric_limits<double>::infinity();
    int decreasing_run = 0;
    double prev_ratio = 2.0;
    for (long k = 0; k < cap; ++k) {
        if (k > 50000000) fail(errc::tol_error, "heat trace summation exceeded 5e7 terms");
        long n = base + k;
        double lam = (spec.as_explicit() && n >= 8) ? std::exp(std::min(log_eigenvalue(spec, n), 745.0)) : eigenvalue(spec, n);
        double log_term = std::log(multiplicity(spec, n)) - t * lam;
        double term = std::exp(log_term);
        acc += term;
        double ratio = std::exp(log_term - prev_log_term);
        if (k > 0) {
            decreasing_run = (ratio <= prev_ratio + 1e-15) ? decreasing_run + 1 : 0;
            prev_ratio = ratio;
        }
        prev_log_term = log_term;
        if (k >= 8 && decreasing_run >= 8 && ratio < 0.9) {
            double tail = term * ratio / (1.0 - ratio);
            if (tail <= tol) return acc;
        }
        if (term == 0.0 && k >= 2) return acc; // below double range: tail certifiably < tol
    }
    if (cap != std::numeric_limits<long>::max()) return acc; // finite explicit data: exact sum
    fail(errc::tol_error, "heat trace tail bound not certified");
}

std::complex<double> zeta_direct(const SpectrumSpec& spec, std::complex<double> s, double tol) {
    if (!(tol > 0)) fail(errc::domain_error, "tolerance must be positive");
    SeriesMeta meta = abscissa(spec);
    double L = meta.abscissa_zeta;
    if (!(s.real() > L + 0.1))
        fail(errc::outside_half_plane, "zeta series requires Re(s) > abscissa + 0.1");

    // geometric spectra: certified ratio bound
    if (auto* es = spec.as_exponential()) {
        double r_eff = es->power_r * (s.real() - to_double(es->mult_power));
        double decay = std::pow(es->q, r_eff); // < 1
        Complex acc = 0;
        for (long n = 0;; ++n) {
            if (n > 2000000) fail(errc::tol_error, "zeta summation exceeded 2e6 terms");
            Complex term = multiplicity(spec, n) * std::exp(-s * log_eigenvalue(spec, n));
            acc += term;
            if (n >= 4) {
                double rho = decay * std::pow(1.0 + 1.0 / n, std::max(es->p.degree(), 0));
                if (rho < 0.999 && std::abs(term) * rho / (1.0 - rho) <= tol) return acc;
            }
        }
    }

    if (spec.as_polynomial()) {
        auto eff = effective_polynomials(spec);
        int ga = eff.a.degree(), gb = eff.b.degree();
        Complex kappa = s * static_cast<double>(ga) - static_cast<double>(gb);
        for (long N = 4096;; N *= 4) {
            if (N > 40000000) fail(errc::tol_error, "zeta summation exceeded 4e7 terms");
            Complex acc = 0;
            for (long m = 0; m < N; ++m) {
                double lam = eff.a(static_cast<double>(m));
                acc += eff.b(static_cast<double>(m)) * std::exp(-s * std::log(lam));
            }
            // g(m) = f(m) m^kappa -> c + a/m + b/m^2; tail = c T(k) + a T(k+1) + b T(k+2)
            auto g = [&](double m) {
                return eff.b(m) * std::exp(-s * std::log(eff.a(m)) + kappa * std::log(m));
            };
            double m0 = static_cast<double>(N), m1 = 2.0 * m0, m2 = 4.0 * m0;
            Complex g0 = g(m0), g1 = g(m1), g2 = g(m2);
            // Vandermonde solve in u = 1/m
            double u0 = 1 / m0, u1 = 1 / m1, u2 = 1 / m2;
            Complex b2 = ((g2 - g0) / (u2 - u0) - (g1 - g0) / (u1 - u0)) / (u2 - u1);
            Complex a1 = (g1 - g0) / (u1 - u0) - b2 * (u0 + u1);
            Complex c0 = g0 - a1 * u0 - b2 * u0 * u0;
            double e0, e1, e2;
            Complex tail = c0 * power_tail(kappa, m0, &e0) + a1 * power_tail(kappa + 1.0, m0, &e1) +
                           b2 * power_tail(kappa + 2.0, m0, &e2);
            double fit_scale = std::max({std::abs(c0), std::abs(a1), std::abs(b2), 1.0});
            double err = std::abs(c0) * e0 + std::abs(a1) * e1 + std::abs(b2) * e2 +
                         8.0 * fit_scale * std::exp(-(kappa.real() + 2.0) * std::log(m0)) / (kappa.real() + 1.0);
            if (err <= tol) return acc + tail;
        }
    }

    // explicit kind: listed pairs plus the tail law
    auto* xs = spec.as_explicit();
    Complex acc = 0;
    long listed = static_cast<long>(xs->pairs.size());
    for (long n = 0; n < listed; ++n)
        acc += multiplicity(spec, n) * std::exp(-s * log_eigenvalue(spec, n));
    if (!xs->tail) return acc;
    double mult_tail = xs->pairs.back().second;
    if (xs->tail->kind == TailDescriptor::Kind::power) {
        // beyond the listed pairs the terms are exactly pref * n^{-g s}
        Complex kappa = s * xs->tail->g;
        if (!(kappa.real() > 1.02)) fail(errc::tol_error, "power tail too slow to certify");
        long k0 = std::max<long>(listed, 64);
        for (long n = listed; n < k0; ++n) acc += mult_tail * std::exp(-s * log_eigenvalue(spec, n));
        Complex pref = mult_tail * std::exp(-s * std::log(to_double(spec.scale) * xs->tail->c));
        double e0;
        Complex tail = pref * power_tail(kappa, static_cast<double>(k0), &e0);
        if (std::abs(pref) * e0 > tol) fail(errc::tol_error, "power tail remainder exceeds tolerance");
        return acc + tail;
    }
    // exponential / exp-power tails decay super-geometrically in n
    double prev_mag = std::numeric_limits<double>::infinity();
    for (long n = listed;; ++n) {
        if (n > 2000000) fail(errc::tol_error, "zeta summation exceeded 2e6 terms");
        double log_mag = std::log(mult_tail) - s.real() * log_eigenvalue(spec, n);
        acc += mult_tail * std::exp(-s * log_eigenvalue(spec, n));
        double mag = std::exp(log_mag);
        double ratio = mag / prev_mag;
        prev_mag = mag;
        if (n > listed + 4 && ratio < 0.5 && mag * ratio / (1 - ratio) <= tol) return acc;
        if (mag == 0.0) return acc;
    }
}

} // namespace heattrace
