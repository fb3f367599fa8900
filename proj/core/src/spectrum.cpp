#include "heattrace/spectrum.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

namespace heattrace {

double TailDescriptor::lambda(long n) const {
    double x = static_cast<double>(n);
    switch (kind) {
    case Kind::power: return c * std::pow(x, g);
    case Kind::exponential: return c * std::pow(base, x);
    case Kind::exp_power: return std::exp(c * std::pow(x, g));
    }
    return 0;
}

double TailDescriptor::log_lambda(long n) const {
    double x = static_cast<double>(n);
    switch (kind) {
    case Kind::power: return std::log(c) + g * std::log(x);
    case Kind::exponential: return std::log(c) + x * std::log(base);
    case Kind::exp_power: return c * std::pow(x, g);
    }
    return 0;
}

namespace {

constexpr long kRationalPrefix = 10000;

// Cauchy root bound: beyond it a polynomial keeps the sign of its leading coefficient.
long positivity_horizon(const Poly& p) {
    if (p.degree() <= 0) return 0;
    Rational lead = abs(p.leading());
    Rational m(0);
    for (int k = 0; k < p.degree(); ++k) m = std::max(m, Rational(abs(p.coeff(k))));
    double bound = 1.0 + to_double(m / lead);
    return static_cast<long>(std::ceil(bound)) + 1;
}

void validate_polynomial(const PolynomialSpectrum& ps, const Rational& scale, const Rational& shift) {
    if (ps.n_start < 0) fail(errc::malformed_spec, "n_start must be nonnegative");
    if (ps.a.degree() < 1) fail(errc::malformed_spec, "eigenvalue polynomial must be nonconstant");
    if (ps.a.leading() <= 0) fail(errc::non_increasing_eigenvalues, "eigenvalue polynomial must increase to infinity");
    if (ps.b.is_zero()) fail(errc::malformed_spec, "multiplicity polynomial is zero");
    if (ps.b.leading() <= 0) fail(errc::malformed_spec, "multiplicity polynomial must stay positive");

    long horizon = std::max({kRationalPrefix, positivity_horizon(ps.a), positivity_horizon(ps.b),
                             positivity_horizon(ps.a.derivative())});
    horizon = std::min(horizon, static_cast<long>(5000000));

    // exact checks on the contractual prefix, double screen out to the certificate
    // horizon; a root of A inside the index set outranks the other defects
    Rational prev;
    long bad_positive = -1, bad_increase = -1, bad_mult = -1;
    for (long n = ps.n_start; n <= ps.n_start + kRationalPrefix; ++n) {
        Rational an = ps.a(Rational(n));
        if (an == 0) fail(errc::root_in_index_set, "A(" + std::to_string(n) + ") = 0");
        Rational lam = scale * (an + shift);
        if (lam <= 0 && bad_positive < 0) bad_positive = n;
        if (n > ps.n_start && lam <= prev && bad_increase < 0) bad_increase = n;
        if (ps.b(Rational(n)) <= 0 && bad_mult < 0) bad_mult = n;
        prev = lam;
    }
    if (bad_positive >= 0)
        fail(errc::non_positive_eigenvalue, "eigenvalue at n = " + std::to_string(bad_positive) + " is not positive");
    if (bad_increase >= 0)
        fail(errc::non_increasing_eigenvalues, "eigenvalues not strictly increasing at n = " + std::to_string(bad_increase));
    if (bad_mult >= 0)
        fail(errc::malformed_spec, "multiplicity at n = " + std::to_string(bad_mult) + " is not positive");
    double sc = to_double(scale), sh = to_double(shift);
    double dprev = sc * (ps.a(static_cast<double>(ps.n_start + kRationalPrefix)) + sh);
    for (long n = ps.n_start + kRationalPrefix + 1; n <= ps.n_start + horizon; ++n) {
        double x = static_cast<double>(n);
        double lam = sc * (ps.a(x) + sh);
        if (!(lam > 0)) fail(errc::non_positive_eigenvalue, "eigenvalue at n = " + std::to_string(n) + " is not positive");
        if (!(lam > dprev)) fail(errc::non_increasing_eigenvalues, "eigenvalues not strictly increasing at n = " + std::to_string(n));
        if (!(ps.b(x) > 0)) fail(errc::malformed_spec, "multiplicity at n = " + std::to_string(n) + " is not positive");
        dprev = lam;
    }
}

void validate_exponential(const ExponentialSpectrum& es, const Rational& scale, const Rational& shift) {
    if (!(es.q > 0.0 && es.q < 1.0)) fail(errc::malformed_spec, "q must lie in (0,1)");
    if (es.q_exact && (*es.q_exact <= 0 || *es.q_exact >= 1)) fail(errc::malformed_spec, "q must lie in (0,1)");
    if (!(es.power_r > 0.0)) fail(errc::malformed_spec, "power_r must be positive");
    if (es.mult_power < 0) fail(errc::malformed_spec, "mult_power must be nonnegative");
    if (es.p.is_zero()) fail(errc::malformed_spec, "multiplicity polynomial p is zero");
    if (es.p.degree() >= 1 && es.p.leading() <= 0) fail(errc::malformed_spec, "multiplicity polynomial p must stay positive");
    long horizon = std::min<long>(std::max(kRationalPrefix, positivity_horizon(es.p)), 5000000);
    for (long n = 0; n <= horizon; ++n) {
        if (!(es.p(static_cast<double>(n)) > 0)) fail(errc::malformed_spec, "p(" + std::to_string(n) + ") is not positive");
    }
    if (scale * (Rational(1) + shift) <= 0) fail(errc::non_positive_eigenvalue, "shift drives lambda_0 nonpositive");
}

void validate_explicit(const ExplicitSpectrum& xs, const Rational& scale, const Rational& shift) {
    if (xs.pairs.empty()) fail(errc::malformed_spec, "explicit spectrum needs at least one pair");
    double prev = 0;
    double sc = to_double(scale), sh = to_double(shift);
    for (size_t i = 0; i < xs.pairs.size(); ++i) {
        auto [lam, mult] = xs.pairs[i];
        if (!(sc * (lam + sh) > 0)) fail(errc::non_positive_eigenvalue, "pair " + std::to_string(i) + " has nonpositive eigenvalue");
        if (i > 0 && lam <= prev) fail(errc::non_increasing_eigenvalues, "pairs not strictly increasing at index " + std::to_string(i));
        if (!(mult > 0)) fail(errc::malformed_spec, "pair " + std::to_string(i) + " has nonpositive multiplicity");
        prev = lam;
    }
    if (xs.tail) {
        if (xs.tail->kind == TailDescriptor::Kind::exponential && xs.tail->base <= 1.0)
            fail(errc::malformed_spec, "exponential tail base must exceed 1");
        if (xs.tail->kind != TailDescriptor::Kind::exponential && xs.tail->g <= 0.0)
            fail(errc::malformed_spec, "tail exponent must be positive");
        long n0 = static_cast<long>(xs.pairs.size());
        if (!(xs.tail->log_lambda(n0) > std::log(prev)))
            fail(errc::non_increasing_eigenvalues, "tail descriptor does not continue above the listed pairs");
    }
}

Rational rational_pow_int(const Rational& base, long e) {
    Rational r = 1;
    for (long i = 0; i < std::labs(e); ++i) r *= base;
    return e < 0 ? Rational(1) / r : r;
}

bool is_integer(double x) { return x == std::floor(x); }
bool is_integer(const Rational& x) { return denominator(x) == 1; }

} // namespace

SpectrumSpec make_spectrum(SpectrumSpec raw) {
    if (raw.scale <= 0) fail(errc::malformed_spec, "scale must be positive");
    if (auto* ps = std::get_if<PolynomialSpectrum>(&raw.kind)) validate_polynomial(*ps, raw.scale, raw.shift);
    else if (auto* es = std::get_if<ExponentialSpectrum>(&raw.kind)) validate_exponential(*es, raw.scale, raw.shift);
    else validate_explicit(std::get<ExplicitSpectrum>(raw.kind), raw.scale, raw.shift);
    return raw;
}

long first_index(const SpectrumSpec& spec) {
    if (auto* ps = spec.as_polynomial()) return ps->n_start;
    return 0;
}

double eigenvalue(const SpectrumSpec& spec, long n) {
    if (n < first_index(spec)) fail(errc::domain_error, "index below the first represented eigenvalue");
    double sc = to_double(spec.scale), sh = to_double(spec.shift);
    if (auto* ps = spec.as_polynomial()) return sc * (ps->a(static_cast<double>(n)) + sh);
    if (auto* es = spec.as_exponential()) return sc * (std::pow(es->q, -es->power_r * static_cast<double>(n)) + sh);
    auto* xs = spec.as_explicit();
    if (n < static_cast<long>(xs->pairs.size())) return sc * (xs->pairs[n].first + sh);
    if (!xs->tail) fail(errc::malformed_spec, "index beyond explicit data and no tail descriptor");
    return sc * (xs->tail->lambda(n) + sh);
}

double log_eigenvalue(const SpectrumSpec& spec, long n) {
    if (spec.shift == 0) {
        double log_scale = std::log(to_double(spec.scale));
        if (auto* xs = spec.as_explicit(); xs && n >= static_cast<long>(xs->pairs.size())) {
            if (!xs->tail) fail(errc::malformed_spec, "index beyond explicit data and no tail descriptor");
            return log_scale + xs->tail->log_lambda(n);
        }
        if (auto* es = spec.as_exponential())
            return log_scale - es->power_r * static_cast<double>(n) * std::log(es->q);
    }
    return std::log(eigenvalue(spec, n));
}

double multiplicity(const SpectrumSpec& spec, long n) {
    if (n < first_index(spec)) fail(errc::domain_error, "index below the first represented eigenvalue");
    if (auto* ps = spec.as_polynomial()) return ps->b(static_cast<double>(n));
    if (auto* es = spec.as_exponential()) {
        double m = es->p(static_cast<double>(n));
        if (es->mult_power != 0)
            m *= std::pow(es->q, -es->power_r * to_double(es->mult_power) * static_cast<double>(n));
        return m;
    }
    auto* xs = spec.as_explicit();
    if (n < static_cast<long>(xs->pairs.size())) return xs->pairs[n].second;
    if (!xs->tail) fail(errc::malformed_spec, "index beyond explicit data and no tail descriptor");
    return xs->pairs.back().second;
}

CountingPoint counting_function(const SpectrumSpec& spec, double lambda) {
    if (!(lambda > 0)) fail(errc::domain_error, "counting function requires lambda > 0");
    double count = 0;
    long cap = represented_count(spec);
    for (long k = 0; k < cap; ++k) {
        if (k > 100000000) fail(errc::tol_error, "counting function walked 1e8 indices");
        long n = first_index(spec) + k;
        if (eigenvalue(spec, n) > lambda) break;
        count += multiplicity(spec, n);
    }
    return {lambda, count};
}

SpectrumSpec shift_index(const SpectrumSpec& spec, long k) {
    if (k < 0) fail(errc::domain_error, "index shift must be nonnegative");
    if (k == 0) return spec;
    SpectrumSpec out = spec;
    if (auto* ps = std::get_if<PolynomialSpectrum>(&out.kind)) {
        ps->n_start += k;
        return out;
    }
    if (auto* es = std::get_if<ExponentialSpectrum>(&out.kind)) {
        // q^{-r(n+k)} = q^{-rk} * q^{-rn}: the geometric step moves into the scale
        Rational step = (es->q_exact && is_integer(es->power_r))
                            ? rational_pow_int(*es->q_exact, -static_cast<long>(es->power_r) * k)
                            : Rational(std::pow(es->q, -es->power_r * static_cast<double>(k)));
        out.scale *= step;
        if (out.shift != 0) out.shift /= step;
        es->p = es->p.shifted_arg(Rational(k));
        if (es->mult_power != 0) {
            Rational fac = is_integer(es->mult_power)
                               ? rational_pow_int(step, static_cast<long>(es->mult_power))
                               : Rational(std::pow(to_double(step), to_double(es->mult_power)));
            es->p = es->p * fac;
        }
        return out;
    }
    auto* xs = std::get_if<ExplicitSpectrum>(&out.kind);
    if (k >= static_cast<long>(xs->pairs.size()) && !xs->tail)
        fail(errc::malformed_spec, "index shift exhausts explicit data");
    xs->pairs.erase(xs->pairs.begin(), xs->pairs.begin() + std::min<size_t>(k, xs->pairs.size()));
    if (xs->pairs.empty()) fail(errc::malformed_spec, "index shift leaves no explicit pairs");
    return out;
}

long represented_count(const SpectrumSpec& spec) {
    if (auto* xs = spec.as_explicit(); xs && !xs->tail) return static_cast<long>(xs->pairs.size());
    return LONG_MAX;
}

EffectivePolynomials effective_polynomials(const SpectrumSpec& spec) {
    auto* ps = spec.as_polynomial();
    if (!ps) fail(errc::unsupported_class, "effective polynomials exist for the polynomial kind only");
    Poly a = ps->a.shifted_arg(Rational(ps->n_start));
    a = (a + Poly::constant(spec.shift)) * spec.scale;
    Poly b = ps->b.shifted_arg(Rational(ps->n_start));
    return {a, b};
}

} // namespace heattrace
