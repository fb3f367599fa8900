#include "heattrace/catalog.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "heattrace/dirichlet.hpp"

namespace heattrace {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t p = s.find(sep, start);
        out.push_back(s.substr(start, p - start));
        if (p == std::string::npos) break;
        start = p + 1;
    }
    return out;
}

// 2^{floor(d/2)+1} binom(n+d-1, d-1) as an exact polynomial in n
Poly sphere_multiplicity(int d) {
    Poly b = Poly::constant(Rational(Int(1) << (d / 2 + 1)));
    for (int i = 1; i <= d - 1; ++i) b = b * Poly({Rational(i), Rational(1)});
    return b * (Rational(1) / Rational(factorial_int(static_cast<unsigned>(d - 1))));
}

Poly power_poly(const Poly& base, int e) {
    Poly r = Poly::constant(1);
    for (int i = 0; i < e; ++i) r = r * base;
    return r;
}

SpectrumSpec poly_spec(Poly a, Poly b, long n_start = 0) {
    SpectrumSpec s;
    s.kind = PolynomialSpectrum{std::move(a), std::move(b), n_start};
    return make_spectrum(std::move(s));
}

constexpr double inf = std::numeric_limits<double>::infinity();

} // namespace

std::vector<std::string> catalog_names() {
    return {"sphere_absD:<d>",      "sphere_Dpow:<d>,<2k>", "circle_trivial_spin",
            "circle_nontrivial_spin", "theta_operator",       "q_exponential:<q>,<p0>",
            "pow2_pow2",             "lacunary_gauss",        "subexp_n23"};
}

CatalogEntry catalog_entry(const std::string& name_and_params) {
    auto colon = name_and_params.find(':');
    std::string name = name_and_params.substr(0, colon);
    std::vector<std::string> params;
    if (colon != std::string::npos) params = split(name_and_params.substr(colon + 1), ',');

    CatalogEntry e;
    e.name = name_and_params;

    if (name == "sphere_absD") {
        if (params.size() != 1) fail(errc::unknown_name, "sphere_absD takes one parameter: the dimension");
        int d = std::stoi(params[0]);
        if (d < 1) fail(errc::unknown_name, "dimension must be positive");
        e.spec = poly_spec(Poly({Rational(d, 2), Rational(1)}), sphere_multiplicity(d));
        e.expected.classification = ConvergenceKind::exact;
        e.expected.T = 2.0 * std::numbers::pi;
        e.description = "|D| on the round sphere S^" + std::to_string(d);
        return e;
    }
    if (name == "sphere_Dpow") {
        if (params.size() != 2) fail(errc::unknown_name, "sphere_Dpow takes dimension and even power");
        int d = std::stoi(params[0]);
        int p = std::stoi(params[1]);
        if (d < 2 || p < 2 || p % 2) fail(errc::unknown_name, "need d >= 2 and an even power");
        e.spec = poly_spec(power_poly(Poly({Rational(d, 2), Rational(1)}), p), sphere_multiplicity(d));
        if (d % 2 == 1) e.expected.classification = ConvergenceKind::almost_exact;
        else if (p == 2) e.expected.classification = ConvergenceKind::divergent;
        e.description = "D^" + std::to_string(p) + " on the round sphere S^" + std::to_string(d);
        return e;
    }
    if (name == "circle_trivial_spin") {
        e.spec = poly_spec(Poly({Rational(0), Rational(1)}), Poly::constant(2), 1);
        e.kernel_head = {{0.0, 1.0}};
        e.expected.classification = ConvergenceKind::exact;
        e.expected.T = 2.0 * std::numbers::pi;
        e.description = "|D| on S^1, trivial spin structure (kernel mode split off)";
        return e;
    }
    if (name == "circle_nontrivial_spin") {
        e.spec = poly_spec(Poly({Rational(1, 2), Rational(1)}), Poly::constant(2));
        e.expected.classification = ConvergenceKind::exact;
        e.expected.T = 2.0 * std::numbers::pi;
        e.description = "|D| on S^1, nontrivial spin structure";
        return e;
    }
    if (name == "theta_operator") {
        e.spec = poly_spec(Poly({Rational(0), Rational(0), Rational(1)}), Poly::constant(1), 1);
        e.kernel_head = {{0.0, 1.0}};
        e.expected.classification = ConvergenceKind::almost_exact;
        e.expected.has_theta_form = true;
        e.description = "lambda_n = n^2 with the zero mode split off";
        return e;
    }
    if (name == "q_exponential") {
        if (params.size() != 2) fail(errc::unknown_name, "q_exponential takes q and the constant multiplicity");
        Rational q = parse_rational(params[0]);
        Rational p0 = parse_rational(params[1]);
        ExponentialSpectrum es;
        es.q = to_double(q);
        es.q_exact = q;
        es.p = Poly::constant(p0);
        SpectrumSpec s;
        s.kind = es;
        e.spec = make_spectrum(std::move(s));
        e.expected.classification = ConvergenceKind::exact;
        e.expected.T = inf;
        e.description = "lambda_n = q^{-n} with constant multiplicity";
        return e;
    }
    if (name == "pow2_pow2") {
        ExponentialSpectrum es;
        es.q = 0.5;
        es.q_exact = Rational(1, 2);
        es.p = Poly::constant(1);
        es.mult_power = 1;
        SpectrumSpec s;
        s.kind = es;
        e.spec = make_spectrum(std::move(s));
        e.expected.classification = ConvergenceKind::exact;
        e.expected.T = inf;
        e.description = "lambda_n = M_n = 2^n";
        return e;
    }
    if (name == "lacunary_gauss") {
        ExplicitSpectrum xs;
        for (long n = 0; n <= 26; ++n) xs.pairs.emplace_back(std::exp(static_cast<double>(n) * n), 1.0);
        xs.tail = TailDescriptor{TailDescriptor::Kind::exp_power, 1.0, 2.0, 2.0};
        SpectrumSpec s;
        s.kind = xs;
        e.spec = make_spectrum(std::move(s));
        e.expected.classification = ConvergenceKind::no_continuation;
        e.description = "lambda_n = exp(n^2): lacunary";
        return e;
    }
    if (name == "subexp_n23") {
        ExplicitSpectrum xs;
        for (long n = 0; n <= 400; ++n)
            xs.pairs.emplace_back(std::exp(std::pow(static_cast<double>(n), 2.0 / 3.0)), 1.0);
        xs.tail = TailDescriptor{TailDescriptor::Kind::exp_power, 1.0, 2.0 / 3.0, 2.0};
        SpectrumSpec s;
        s.kind = xs;
        e.spec = make_spectrum(std::move(s));
        e.expected.classification = ConvergenceKind::no_continuation;
        e.description = "lambda_n = exp(n^{2/3}): subexponential, still no continuation around 0";
        return e;
    }
    fail(errc::unknown_name, "unknown catalog entry '" + name + "'");
}

double catalog_heat_direct(const CatalogEntry& entry, double t, double tol) {
    double acc = 0;
    for (auto [lam, m] : entry.kernel_head) acc += m * std::exp(-lam * t);
    return acc + heat_trace_direct(entry.spec, t, tol);
}

} // namespace heattrace
