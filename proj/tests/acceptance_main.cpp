// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "heattrace/catalog.hpp"
#include "heattrace/dirichlet.hpp"
#include "heattrace/expansion.hpp"
#include "heattrace/quadrature.hpp"
#include "heattrace/specfun.hpp"
#include "heattrace/tauberian.hpp"

using namespace heattrace;
namespace sf = specfun;
using Complex = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

struct Reporter {
    bool ok = true;
    std::ostringstream notes;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes << "  FAILED: " << what << "\n";
        }
    }
    void note(const std::string& what) { notes << "  note: " << what << "\n"; }
};

SpectrumSpec harmonic() {
    SpectrumSpec s;
    s.kind = PolynomialSpectrum{Poly({Rational(0), Rational(1)}), Poly::constant(1), 1};
    return make_spectrum(std::move(s));
}

std::string g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// ---------------------------------------------------------------- criteria

void c1_bernoulli_ladder(Reporter& r) {
    auto exp = build_expansion(harmonic(), 5);
    std::vector<Rational> expect{Rational(1), Rational(-1, 2), Rational(1, 12), Rational(-1, 720),
                                 Rational(1, 30240)};
    std::vector<Rational> got;
    for (const auto& strip : exp.strips)
        for (const auto& cell : strip.cells)
            for (const auto& term : cell) {
                r.require(term.exact_coeffs.has_value(), "coefficient lacks the exact rational form");
                if (term.exact_coeffs) got.push_back((*term.exact_coeffs)[0]);
            }
    r.require(got == expect, "coefficients differ from {1, -1/2, 1/12, -1/720, 1/30240}");
    double closed1 = 1.0 / (std::exp(1.0) - 1.0);
    double e1 = std::abs(evaluate_expansion(exp, 1.0, 5) - closed1);
    r.require(e1 <= 1e-6, "|eval(1) - 1/(e-1)| = " + g(e1) + " > 1e-6");
    double closed01 = 1.0 / (std::exp(0.1) - 1.0);
    double e01 = std::abs(evaluate_expansion(exp, 0.1, 5) - closed01);
    r.require(e01 <= 1e-12, "|eval(0.1) - closed form| = " + g(e01) + " > 1e-12");
}

void c2_exactness_radius(Reporter& r) {
    for (auto [d, strips] : {std::pair<int, int>{1, 24}, std::pair<int, int>{3, 56}}) {
        auto entry = catalog_entry("sphere_absD:" + std::to_string(d));
        auto exp = build_expansion(entry.spec, strips);
        r.require(exp.classification.kind == ConvergenceKind::exact, "sphere |D| not classified exact");
        r.require(std::abs(exp.classification.T - 2 * pi) <= 1e-12 * 2 * pi, "analytic T != 2pi");
        std::vector<RemainderBound> bounds;
        for (const auto& s : exp.strips) bounds.push_back(s.bound);
        double t_num = exactness_radius(bounds);
        r.note("sphere_absD:" + std::to_string(d) + " numeric T = " + g(t_num) + " (" +
               g(t_num / (2 * pi)) + " of 2pi, " + std::to_string(strips) + " strips)");
        r.require(t_num >= 0.9 * 2 * pi && t_num <= 1.1 * 2 * pi,
                  "numeric T outside [0.9, 1.1] * 2pi for d = " + std::to_string(d));
    }
    // beyond T the asymptotic series turns: best error at a finite strip count
    auto s1 = catalog_entry("sphere_absD:1");
    auto exp = build_expansion(s1.spec, 18);
    double t = 7.0, direct = heat_trace_direct(s1.spec, t, 1e-14);
    int best = 0;
    double best_err = 1e300;
    for (int k = 1; k <= 18; ++k) {
        double err = std::abs(evaluate_expansion(exp, t, k) - direct);
        if (err < best_err) {
            best_err = err;
            best = k;
        }
    }
    double last_err = std::abs(evaluate_expansion(exp, t, 18) - direct);
    r.note("t = 7: best error " + g(best_err) + " at " + std::to_string(best) + " strips, " +
           g(last_err) + " at 18");
    r.require(best < 18, "error at t = 7 keeps shrinking through every strip");
    r.require(last_err > 3.0 * best_err, "no growth after the optimal strip count at t = 7");
}

void c3_circle_closed_form(Reporter& r) {
    auto exp = build_expansion(catalog_entry("circle_nontrivial_spin").spec, 10);
    double err = std::abs(evaluate_expansion(exp, 0.1, 10) - 1.0 / std::sinh(0.05));
    r.require(err <= 1e-10, "|expansion - 1/sinh(t/2)| = " + g(err) + " > 1e-10 at t = 0.1");
}

void c4_jacobi(Reporter& r) {
    auto entry = catalog_entry("theta_operator");
    auto exp = build_expansion(entry.spec, 6, entry.kernel_head);
    const auto& fi = exp.classification.f_inf;
    r.require(fi.kind == FInfDescriptor::Kind::theta_closed_form, "no closed remainder form attached");
    for (double t : {0.5, 1.0, 2.0}) {
        double direct = catalog_heat_direct(entry, t, 1e-14);
        double rebuilt = evaluate_expansion(exp, t, 6) + evaluate_f_inf(fi, t);
        r.require(std::abs(direct - rebuilt) <= 1e-9,
                  "main terms + F_inf missed the theta sum at t = " + g(t));
    }
    double f1 = std::abs(evaluate_f_inf(fi, 1.0));
    double expect = std::sqrt(pi) * 0.5 * (sf::theta3(std::exp(-pi * pi)) - 1.0);
    r.note("F_inf(1) = " + g(f1));
    r.require(std::abs(f1 - expect) <= 0.01 * expect, "|F_inf(1)| off the theta-kernel value by > 1%");
    r.require(std::abs(expect - 9.17e-5) <= 0.01 * 9.17e-5, "oracle value drifted from 9.17e-5");
}

void c5_exponential_exactness(Reporter& r) {
    auto entry = catalog_entry("q_exponential:1/2,1");
    auto exp = build_expansion(entry.spec, 12);
    r.require(exp.classification.kind == ConvergenceKind::exact, "not classified exact");
    r.require(std::isinf(exp.classification.T), "T should be infinite");
    r.require(exp.classification.absolutely_exact, "absolute-exactness flag not set");
    for (double t : {0.01, 1.0}) {
        double direct = heat_trace_direct(entry.spec, t, 1e-15);
        double rel = std::abs(evaluate_expansion(exp, t, 12) - direct) / std::abs(direct);
        r.require(rel <= 1e-8, "12-strip relative error " + g(rel) + " at t = " + g(t));
    }
    // t = 10 sits far beyond what 12 strips resolve; the certified tail bound
    // tells us how many strips the same (everywhere-convergent) expansion needs
    double t = 10.0, direct = heat_trace_direct(entry.spec, t, 1e-15);
    int n = 12;
    auto exp_t = build_expansion(entry.spec, n);
    while (n < 512) {
        const auto& b = exp_t.strips.back().bound;
        if (b.C * std::pow(t, b.R) / (b.eps * pi) <= 1e-8 * direct) break;
        n *= 2;
        exp_t = build_expansion(entry.spec, n);
    }
    double rel12 = std::abs(evaluate_expansion(exp_t, t, 12) - direct) / direct;
    double rel = std::abs(evaluate_expansion(exp_t, t, static_cast<int>(exp_t.strips.size())) - direct) / direct;
    r.note("t = 10: 12 strips give rel err " + g(rel12) + "; certified at " + std::to_string(n) +
           " strips, rel err " + g(rel));
    r.require(rel <= 1e-8, "certified-strip evaluation missed 1e-8 at t = 10");
}

void c6_divergence(Reporter& r) {
    auto entry = catalog_entry("sphere_Dpow:2,2");
    auto exp = build_expansion(entry.spec, 15);
    r.require(exp.classification.kind == ConvergenceKind::divergent, "not classified divergent");
    std::vector<std::pair<long, double>> d;
    for (const auto& strip : exp.strips)
        for (const auto& cell : strip.cells)
            for (const auto& term : cell) {
                double re = term.s0.real();
                if (std::abs(term.s0.imag()) < 1e-12 && re <= 1e-9 && term.log_coeffs.size() == 1)
                    d.emplace_back(std::llround(-re), term.log_coeffs[0].real());
            }
    std::sort(d.begin(), d.end());
    r.require(d.size() >= 13, "fewer than 13 integer-power coefficients");
    bool signs = true;
    for (auto& [p, v] : d)
        if (p <= 12) signs = signs && v < 0;
    r.require(signs, "d_p signs are not all (-1)^{d/2} = -1 for p <= 12");
    long onset_coeff = -1, onset_term = -1;
    for (size_t i = 0; i + 1 < d.size() && d[i + 1].first <= 12; ++i) {
        if (onset_coeff < 0 && std::abs(d[i + 1].second) > std::abs(d[i].second)) onset_coeff = d[i + 1].first;
        double a = std::abs(d[i].second) * std::pow(0.1, d[i].first);
        double b = std::abs(d[i + 1].second) * std::pow(0.1, d[i + 1].first);
        if (onset_term < 0 && b > a) onset_term = d[i + 1].first;
    }
    r.require(onset_coeff >= 0 && onset_coeff <= 12,
              "|d_p| never turns increasing by p = 12 (factorial growth invisible)");
    r.note("|d_p| increases from p = " + std::to_string(onset_coeff) +
           "; evaluated terms |d_p| 0.1^p start increasing at p = " +
           (onset_term < 0 ? std::string("none<=12 (true onset ~ p = 97)") : std::to_string(onset_term)));
}

void c7_specfun(Reporter& r) {
    r.require(std::abs(sf::riemann_zeta(Complex(2, 0)).real() - pi * pi / 6) <= 1e-12, "zeta(2)");
    r.require(std::abs(sf::gamma(0.5) - std::sqrt(pi)) <= 1e-12, "Gamma(1/2)");
    r.require(sf::riemann_zeta(Complex(-1, 0)).real() == -1.0 / 12.0, "zeta(-1) not exactly -1/12");
    r.require(sf::riemann_zeta(Complex(0, 0)).real() == -0.5, "zeta(0) not exactly -1/2");
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> re(-10.0, -1.0), im(-30.0, 30.0);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        Complex s(re(rng), im(rng));
        Complex lhs = sf::riemann_zeta(s);
        Complex rhs = std::pow(Complex(2), s) * std::pow(Complex(pi), s - 1.0) * std::sin(pi * s / 2.0) *
                      sf::gamma(Complex(1.0) - s) * sf::riemann_zeta(Complex(1.0) - s);
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
    }
    r.note("functional-equation residual max = " + g(worst));
    r.require(worst <= 1e-10, "functional-equation residual above 1e-10");
    r.require(sf::hurwitz_zeta(Complex(0, 0), 0.5).real() == 0.0, "zeta_H(0, 1/2) != 0");
    r.require(std::abs(sf::hurwitz_zeta(Complex(-1, 0), 1.5).real() + 11.0 / 24.0) <= 1e-12,
              "zeta_H(-1, 3/2) != -11/24");
}

void c8_mellin(Reporter& r) {
    auto spec = catalog_entry("circle_nontrivial_spin").spec;
    double s = 2.5;
    double a = 1e-4;
    double head = 2.0 * std::pow(a, s - 1.0) / (s - 1.0); // Karamata leading term 2/t
    // u = sqrt(t) flattens the t^{s-2} behaviour near 0
    auto f_left = [&](double u) {
        double t = u * u;
        return heat_trace_direct(spec, t, 1e-11) * std::pow(t, s - 1.0) * 2.0 * u;
    };
    auto f_right = [&](double t) { return heat_trace_direct(spec, t, 1e-12) * std::pow(t, s - 1.0); };
    double t_max = 14.0 * std::log(10.0) / 0.5;
    double integral = head + integrate(f_left, std::sqrt(a), 1.0, 3e-8, 36) + integrate(f_right, 1.0, t_max, 3e-8, 36);
    double rhs = sf::gamma(s) * zeta_direct(spec, Complex(s, 0), 1e-12).real();
    double rel = std::abs(integral - rhs) / rhs;
    r.note("quadrature vs Gamma*zeta relative gap = " + g(rel));
    r.require(rel <= 1e-6, "Mellin integral and Gamma*zeta disagree beyond 1e-6");
}

void c9_tauberian(Reporter& r) {
    auto rep = leading_order(catalog_entry("lacunary_gauss").spec);
    double ratio = rep.ratio_samples.empty() ? 0.0 : rep.ratio_samples.back().second;
    r.note("h(1e-12)/sqrt(-log t) = " + g(ratio));
    r.require(ratio >= 0.85 && ratio <= 1.15, "deep-t ratio outside [0.85, 1.15]");

    auto pow2 = catalog_entry("pow2_pow2");
    auto rep2 = leading_order(pow2.spec);
    r.require(!rep2.slow_variation_ok, "slow-variation check unexpectedly passed");
    auto exp = build_expansion(pow2.spec, 14);
    r.require(exp.classification.kind == ConvergenceKind::exact && std::isinf(exp.classification.T),
              "continuation path should still give Exact(inf)");
    double t = 0.5, direct = heat_trace_direct(pow2.spec, t, 1e-15);
    double rel = std::abs(evaluate_expansion(exp, t, 14) - direct) / direct;
    r.note("pow2_pow2 rel err at t = 0.5: " + g(rel));
    r.require(rel <= 1e-6, "oscillatory-leading expansion missed 1e-6 at t = 0.5");
}

void c10_abscissa(Reporter& r) {
    SpectrumSpec s; // A = (n+1)(n+2), B = n+1
    s.kind = PolynomialSpectrum{Poly({Rational(2), Rational(3), Rational(1)}), Poly({Rational(1), Rational(1)}), 0};
    s = make_spectrum(std::move(s));
    auto meta = abscissa(s);
    r.require(meta.abscissa_zeta == 1.0 && meta.analytic, "analytic path should give L = 1 exactly");
    ExplicitSpectrum xs;
    for (long n = 0; n < 100000; ++n) xs.pairs.emplace_back(eigenvalue(s, n), multiplicity(s, n));
    SpectrumSpec es;
    es.kind = xs;
    auto meta2 = abscissa(make_spectrum(std::move(es)));
    r.note("numeric limsup over " + std::to_string(meta2.indices_used) + " indices: L = " + g(meta2.abscissa_zeta));
    r.require(!meta2.analytic, "explicit form should take the numeric path");
    r.require(std::abs(meta2.abscissa_zeta - 1.0) <= 0.05, "numeric estimate off by more than 0.05");
}

void c11_properties(Reporter& r) {
    // residual boundedness over the resolvable dyadic window, three spectra
    struct Case {
        const char* name;
        int strip;
    };
    for (auto [name, strip] : {Case{"circle_nontrivial_spin", 2}, Case{"q_exponential:1/2,1", 2},
                               Case{"sphere_absD:3", 3}}) {
        auto entry = catalog_entry(name);
        auto exp = build_expansion(entry.spec, strip + 1, entry.kernel_head);
        double R = exp.strips[static_cast<size_t>(strip - 1)].line_R;
        double first = -1, last = -1, worst = 0;
        int points = 0;
        for (int j = 3; j <= 20; ++j) {
            double t = std::pow(2.0, -j);
            double direct = catalog_heat_direct(entry, t, 1e-14);
            double diff = std::abs(evaluate_expansion(exp, t, strip) - direct);
            if (diff < 5e-12 * direct) break; // below double resolution
            double ratio = diff / std::pow(t, R);
            if (first < 0) first = ratio;
            last = ratio;
            worst = std::max(worst, ratio);
            ++points;
        }
        r.require(points >= 2 && worst <= 3.0 * first && last <= first,
                  std::string("residual law failed for ") + name);
    }
    // conjugate-pair reality
    for (const char* name : {"q_exponential:1/2,1", "pow2_pow2"}) {
        auto exp = build_expansion(catalog_entry(name).spec, 10);
        for (double t : {0.3, 1.7}) {
            Complex v = evaluate_expansion_complex(exp, t, 10);
            r.require(std::abs(v.imag()) <= 1e-12 * (std::abs(v.real()) + 1.0),
                      std::string("imaginary leakage in ") + name);
        }
    }
    // truncation identity at summation tolerance
    for (const char* name : {"sphere_absD:2", "q_exponential:1/2,1"}) {
        auto spec = catalog_entry(name).spec;
        double t = 0.6, whole = heat_trace_direct(spec, t, 1e-13);
        double headv = 0;
        long base = first_index(spec);
        for (long k = 0; k < 4; ++k)
            headv += multiplicity(spec, base + k) * std::exp(-t * eigenvalue(spec, base + k));
        double tail = heat_trace_direct(shift_index(spec, 4), t, 1e-13);
        r.require(std::abs(whole - (headv + tail)) <= 1e-11 * whole,
                  std::string("truncation identity failed for ") + name);
    }
    // scaling covariance
    SpectrumSpec scaled;
    scaled.kind = PolynomialSpectrum{Poly({Rational(1, 2), Rational(1)}), Poly::constant(2), 0};
    scaled.scale = Rational(5, 4);
    auto e_scaled = build_expansion(make_spectrum(std::move(scaled)), 8);
    auto e_plain = build_expansion(catalog_entry("circle_nontrivial_spin").spec, 8);
    for (double t : {0.3, 0.8}) {
        double lhs = evaluate_expansion(e_scaled, t, 8);
        double rhs = evaluate_expansion(e_plain, 1.25 * t, 8);
        r.require(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs), "scaling covariance violated");
    }
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<void(Reporter&)> run;
    };
    std::vector<Criterion> criteria{
        {1, "Bernoulli ladder: exact coefficients and small-t accuracy", c1_bernoulli_ladder},
        {2, "exactness radius 2pi for |D| on S^1/S^3, divergence beyond", c2_exactness_radius},
        {3, "S^1 closed form matched to 1e-10", c3_circle_closed_form},
        {4, "Jacobi identity: theta main terms plus closed remainder", c4_jacobi},
        {5, "geometric spectrum: exact for all t with certified strips", c5_exponential_exactness},
        {6, "even-sphere divergence signature", c6_divergence},
        {7, "special-function kernel accuracy", c7_specfun},
        {8, "Mellin transform consistency at s = 2.5", c8_mellin},
        {9, "Karamata leading order and its limits", c9_tauberian},
        {10, "abscissa of convergence, analytic and numeric", c10_abscissa},
        {11, "property suite: residuals, reality, truncation, scaling", c11_properties},
    };

    int failed = 0;
    for (auto& c : criteria) {
        Reporter r;
        try {
            c.run(r);
        } catch (const std::exception& e) {
            r.ok = false;
            r.notes << "  exception: " << e.what() << "\n";
        }
        std::printf("[%2d] %s  %s\n", c.id, r.ok ? "PASS" : "FAIL", c.name);
        std::fputs(r.notes.str().c_str(), stdout);
        failed += !r.ok;
    }
    std::printf("RESULT: %zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
