#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "heattrace/catalog.hpp"
#include "heattrace/continuation.hpp"
#include "heattrace/dirichlet.hpp"
#include "heattrace/specfun.hpp"

using namespace heattrace;
using Complex = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

SpectrumSpec harmonic() {
    SpectrumSpec s;
    s.kind = PolynomialSpectrum{Poly({Rational(0), Rational(1)}), Poly::constant(1), 1};
    return make_spectrum(std::move(s));
}

const PoleDatum* pole_at(const ContinuationData& c, Complex s0) {
    for (const auto& p : c.z_poles)
        if (std::abs(p.location - s0) < 1e-9) return &p;
    return nullptr;
}

} // namespace

TEST_CASE("harmonic spectrum: the textbook pole ladder") {
    auto cont = continue_zeta(harmonic(), Region{6.5, 16.0});
    CHECK(cont.class_tag == ClassTag::linear_a);
    std::vector<double> expect{1, 0, -1, -3, -5};
    REQUIRE(cont.z_poles.size() == expect.size());
    for (size_t i = 0; i < expect.size(); ++i) {
        CHECK(cont.z_poles[i].location.real() == expect[i]);
        CHECK(cont.z_poles[i].order == 1);
        CHECK(cont.z_poles[i].provenance == Provenance::exact_rational);
    }
    CHECK((*pole_at(cont, Complex(1, 0))->principal_exact)[0] == Rational(1));
    CHECK((*pole_at(cont, Complex(0, 0))->principal_exact)[0] == Rational(-1, 2));
    CHECK((*pole_at(cont, Complex(-1, 0))->principal_exact)[0] == Rational(1, 12));
    // even negative integers cancel exactly
    for (const auto& c : cont.cancelled) {
        CHECK(c.n % 2 == 0);
        CHECK(c.exact);
    }
}

TEST_CASE("n^3+1 with quadratic multiplicities keeps a single zeta pole") {
    SpectrumSpec s;
    s.kind = PolynomialSpectrum{Poly({Rational(1), Rational(0), Rational(0), Rational(1)}),
                                Poly({Rational(0), Rational(0), Rational(1)}), 1};
    s = make_spectrum(std::move(s));
    auto cont = continue_zeta(s, Region{3.0, 8.0});
    CHECK(cont.class_tag == ClassTag::binomial_reduced);
    int positive = 0;
    for (const auto& p : cont.z_poles)
        if (p.location.real() > 0) {
            ++positive;
            CHECK(p.location.real() == doctest::Approx(1.0));
            CHECK(p.principal[0].real() == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
        }
    CHECK(positive == 1);
    Complex probe(3.0, 0.4);
    Complex direct = zeta_direct(s, probe, 1e-12);
    CHECK(std::abs(cont.zeta_full(probe) - direct) <= 1e-9 * std::abs(direct));
}

TEST_CASE("exponential class pole structure") {
    auto qe = catalog_entry("q_exponential:1/2,1").spec;
    auto cont = continue_zeta(qe, Region{4.0, 22.0});
    CHECK(cont.class_tag == ClassTag::exponential_q);
    double omega = 2.0 * pi / std::log(2.0);

    const PoleDatum* origin = pole_at(cont, Complex(0, 0));
    REQUIRE(origin);
    CHECK(origin->order == 2); // Gamma pole on top of the zeta pole
    CHECK(origin->principal[1].real() == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-11));

    const PoleDatum* fourier = pole_at(cont, Complex(0, omega));
    REQUIRE(fourier);
    CHECK(fourier->order == 1);
    const PoleDatum* conj_pole = pole_at(cont, Complex(0, -omega));
    REQUIRE(conj_pole);
    CHECK(std::abs(conj_pole->principal[0] - std::conj(fourier->principal[0])) <= 1e-12);

    const PoleDatum* gamma1 = pole_at(cont, Complex(-1, 0));
    REQUIRE(gamma1);
    CHECK(gamma1->provenance == Provenance::exact_rational);
    CHECK((*gamma1->principal_exact)[0] == Rational(1)); // (-1)^1/1! * 1/(1-2) = 1
}

TEST_CASE("laurent probes reproduce the exact data") {
    auto cont = continue_zeta(harmonic(), Region{6.5, 16.0});
    PoleDatum p1 = laurent_at(cont, Complex(1, 0), 1);
    CHECK(p1.principal[0].real() == doctest::Approx(1.0));
    PoleDatum p0 = laurent_at(cont, Complex(0, 0), 1);
    CHECK(p0.principal[0].real() == doctest::Approx(-0.5));

    // numeric Cauchy route agrees with the stored exact residues (dual route)
    ContinuationData shadow = cont;
    shadow.z_poles.clear();
    for (Complex s0 : {Complex(1, 0), Complex(-1, 0), Complex(-3, 0)}) {
        PoleDatum probe = laurent_at(shadow, s0, 2);
        CHECK(probe.provenance == Provenance::numeric_cauchy);
        CHECK(probe.order == 1);
        const PoleDatum* exact = pole_at(cont, s0);
        double tol = std::max(1e3 * probe.err_est, 1e-8 * std::abs(exact->principal[0]));
        CHECK(std::abs(probe.principal[0] - exact->principal[0]) <= tol);
    }
    CHECK_THROWS_AS(laurent_at(shadow, Complex(0.4, 0.4), 2), Error); // not a pole

    // conjugate symmetry at a Fourier pole
    auto qc = continue_zeta(catalog_entry("q_exponential:1/2,1").spec, Region{2.0, 22.0});
    double omega = 2.0 * pi / std::log(2.0);
    ContinuationData qshadow = qc;
    qshadow.z_poles.clear();
    PoleDatum up = laurent_at(qshadow, Complex(0, omega), 1);
    PoleDatum down = laurent_at(qshadow, Complex(0, -omega), 1);
    CHECK(std::abs(up.principal[0] - std::conj(down.principal[0])) <= 10 * (up.err_est + down.err_est) + 1e-13);
}

TEST_CASE("continued zeta agrees with summation on the half-plane") {
    std::mt19937 rng(23);
    for (const char* name : {"sphere_absD:1", "sphere_absD:3", "theta_operator", "q_exponential:1/2,1"}) {
        auto spec = catalog_entry(name).spec;
        double L = abscissa(spec).abscissa_zeta;
        auto cont = continue_zeta(spec, Region{3.0, 8.0});
        std::uniform_real_distribution<double> re(L + 0.5, L + 5.0), im(-10.0, 10.0);
        for (int i = 0; i < 10; ++i) {
            Complex s(re(rng), im(rng));
            Complex direct = zeta_direct(spec, s, 1e-12);
            CHECK(std::abs(cont.zeta_full(s) - direct) <= 1e-9 * std::abs(direct));
        }
    }
}

TEST_CASE("pole orders stay within the class caps") {
    for (const char* name : {"sphere_absD:2", "sphere_absD:3", "sphere_Dpow:3,2", "theta_operator"}) {
        auto cont = continue_zeta(catalog_entry(name).spec, Region{8.0, 20.0});
        for (const auto& p : cont.z_poles) CHECK(p.order <= 2);
    }
    ExponentialSpectrum es; // m = 1: order m+1 lattice poles, m+2 at the origin
    es.q = 0.5;
    es.q_exact = Rational(1, 2);
    es.p = Poly({Rational(1), Rational(1)});
    SpectrumSpec s;
    s.kind = es;
    auto cont = continue_zeta(make_spectrum(std::move(s)), Region{3.0, 22.0});
    const PoleDatum* origin = pole_at(cont, Complex(0, 0));
    REQUIRE(origin);
    CHECK(origin->order == 3);
    double omega = 2.0 * pi / std::log(2.0);
    CHECK(pole_at(cont, Complex(0, omega))->order == 2);
}

TEST_CASE("even-power cancellation is exact") {
    SpectrumSpec half2; // lambda = (n+1/2)^2
    half2.kind = PolynomialSpectrum{Poly({Rational(1, 4), Rational(1), Rational(1)}), Poly::constant(1), 0};
    half2 = make_spectrum(std::move(half2));
    auto cont = continue_zeta(half2, Region{10.0, 8.0});
    CHECK(cont.class_tag == ClassTag::even_power_a);
    for (int n = 1; n <= 8; ++n) CHECK(std::abs(cont.zeta(Complex(-n, 0))) <= 1e-10);
    int exact_cancellations = 0;
    for (const auto& c : cont.cancelled) exact_cancellations += c.exact;
    CHECK(exact_cancellations >= 9);
    // only the pole at 1/2 survives
    REQUIRE(cont.z_poles.size() == 1);
    CHECK(cont.z_poles[0].location.real() == doctest::Approx(0.5));
    CHECK(cont.z_poles[0].principal[0].real() == doctest::Approx(std::sqrt(pi) / 2.0).epsilon(1e-12));
}

TEST_CASE("even-power grids away from the base offset split an entire head") {
    SpectrumSpec s; // lambda = (n + 5/2)^2
    s.kind = PolynomialSpectrum{Poly({Rational(25, 4), Rational(5), Rational(1)}), Poly::constant(1), 0};
    s = make_spectrum(std::move(s));
    auto cont = continue_zeta(s, Region{4.0, 8.0});
    CHECK(cont.class_tag == ClassTag::even_power_a);
    REQUIRE(cont.entire_head.size() == 2);
    CHECK(cont.entire_head[0].first == doctest::Approx(0.25));
    CHECK(cont.entire_head[0].second == -1.0);
    CHECK(cont.entire_head[1].first == doctest::Approx(2.25));
    CHECK(cont.entire_head[1].second == -1.0);
    Complex probe(3.5, 0.0);
    CHECK(std::abs(cont.zeta_full(probe) - zeta_direct(s, probe, 1e-12)) <= 1e-10);
}

TEST_CASE("truncated zeta shifts the series start") {
    CHECK_THROWS_AS(truncated_zeta(harmonic(), 0), Error);
    // theta spectrum: the truncated zeta is zeta(2s)
    auto theta = catalog_entry("theta_operator").spec; // already starts at n = 1
    auto cont = continue_zeta(theta, Region{4.0, 8.0});
    for (double x : {2.0, 3.5}) {
        CHECK(cont.zeta(Complex(x, 0)).real() ==
              doctest::Approx(specfun::riemann_zeta(Complex(2 * x, 0)).real()).epsilon(1e-11));
    }
    REQUIRE(cont.z_poles.size() == 2);
    CHECK(cont.z_poles[0].location.real() == doctest::Approx(0.5));
    CHECK(cont.z_poles[1].location.real() == doctest::Approx(0.0));

    // dropping the first two eigenvalues keeps the zeta pole and adjusts the
    // Gamma-pole data by the entire head sum 1^{-s} + 2^{-s}
    auto s1 = harmonic();
    auto t2 = truncated_zeta(s1, 2, Region{6.5, 8.0});
    auto full = continue_zeta(s1, Region{6.5, 8.0});
    CHECK((*pole_at(t2, Complex(1, 0))->principal_exact)[0] == Rational(1)); // zeta pole untouched
    // at s = -1 the residue moves by gamma_residue(1) * (1 + 2)
    Rational full_res = (*pole_at(full, Complex(-1, 0))->principal_exact)[0];
    Rational trunc_res = (*pole_at(t2, Complex(-1, 0))->principal_exact)[0];
    CHECK(full_res - trunc_res == Rational(-1) * (Rational(1) + Rational(2)));
    // cancellations at even integers are undone by the head, e.g. at s = -2
    CHECK(pole_at(full, Complex(-2, 0)) == nullptr);
    const PoleDatum* reborn = pole_at(t2, Complex(-2, 0));
    REQUIRE(reborn);
    CHECK((*reborn->principal_exact)[0] == Rational(1, 2) * Rational(0 - 5)); // (1/2!)(zeta(-2) - 5)
}

TEST_CASE("explicit spectra have no continuation class") {
    CHECK_THROWS_AS(continue_zeta(catalog_entry("lacunary_gauss").spec, Region{2, 2}), Error);
    try {
        continue_zeta(catalog_entry("lacunary_gauss").spec, Region{2, 2});
    } catch (const Error& e) {
        CHECK(e.code() == errc::unsupported_class);
    }
}
