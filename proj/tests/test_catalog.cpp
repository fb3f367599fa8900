#include <doctest.h>

#include <cmath>

#include "heattrace/catalog.hpp"
#include "heattrace/dirichlet.hpp"
#include "heattrace/expansion.hpp"
#include "oracles.hpp"

using namespace heattrace;

TEST_CASE("every entry validates and carries its promised data") {
    for (const char* name : {"sphere_absD:1", "sphere_absD:2", "sphere_absD:3", "sphere_absD:4",
                             "sphere_Dpow:2,2", "sphere_Dpow:3,2", "circle_trivial_spin",
                             "circle_nontrivial_spin", "theta_operator", "q_exponential:1/2,1",
                             "q_exponential:0.4,3", "pow2_pow2", "lacunary_gauss", "subexp_n23"}) {
        auto e = catalog_entry(name);
        CHECK(!e.description.empty());
        CHECK(multiplicity(e.spec, first_index(e.spec)) > 0);
    }
    CHECK_THROWS_AS(catalog_entry("klein_bottle"), Error);
}

TEST_CASE("sphere multiplicities follow the binomial formula") {
    // 2^{floor(d/2)+1} * binom(n+d-1, d-1)
    auto check = [](int d, long n, double expect) {
        auto spec = catalog_entry("sphere_absD:" + std::to_string(d)).spec;
        CHECK(multiplicity(spec, n) == expect);
        CHECK(eigenvalue(spec, n) == n + d / 2.0);
    };
    check(3, 0, 4.0);
    check(3, 1, 12.0);  // 4 * binom(3,2)
    check(2, 0, 4.0);   // 4 * binom(1,1)
    check(4, 2, 80.0);  // 8 * binom(5,3)
    check(1, 7, 2.0);
}

TEST_CASE("the two circle spin structures differ as spectra but tie as traces") {
    auto trivial = catalog_entry("circle_trivial_spin");
    auto nontrivial = catalog_entry("circle_nontrivial_spin");
    CHECK(eigenvalue(trivial.spec, 1) == 1.0);
    CHECK(eigenvalue(nontrivial.spec, 0) == 0.5);
    REQUIRE(trivial.kernel_head.size() == 1);
    // h_trivial(t) = 1 + 2 sum_{n>=1} e^{-nt}
    for (double t : {0.3, 1.0}) {
        CHECK(catalog_heat_direct(trivial, t, 1e-13) ==
              doctest::Approx(1.0 + 2.0 * oracles::heat_geometric(t)).epsilon(1e-12));
        CHECK(catalog_heat_direct(nontrivial, t, 1e-13) ==
              doctest::Approx(oracles::heat_circle(t)).epsilon(1e-12));
    }
}

TEST_CASE("expected classification matches the classifier") {
    for (const char* name : {"sphere_absD:1", "sphere_absD:3", "sphere_Dpow:2,2", "sphere_Dpow:3,2",
                             "circle_trivial_spin", "circle_nontrivial_spin", "theta_operator",
                             "q_exponential:1/2,1", "pow2_pow2"}) {
        auto e = catalog_entry(name);
        REQUIRE(e.expected.classification.has_value());
        int strips = std::string(name).find("Dpow") != std::string::npos ? 14 : 10;
        auto exp = build_expansion(e.spec, strips, e.kernel_head);
        CHECK_MESSAGE(exp.classification.kind == *e.expected.classification, name);
        if (e.expected.T > 0 && std::isfinite(e.expected.T))
            CHECK(exp.classification.T == doctest::Approx(e.expected.T).epsilon(1e-12));
        if (e.expected.has_theta_form)
            CHECK(exp.classification.f_inf.kind == FInfDescriptor::Kind::theta_closed_form);
    }
    // the lacunary entries refuse a continuation, as recorded
    for (const char* name : {"lacunary_gauss", "subexp_n23"}) {
        auto e = catalog_entry(name);
        CHECK(*e.expected.classification == ConvergenceKind::no_continuation);
        CHECK_THROWS_AS(build_expansion(e.spec, 4, e.kernel_head), Error);
    }
}

TEST_CASE("trivial-spin circle decomposes through the kernel head") {
    auto e = catalog_entry("circle_trivial_spin");
    auto exp = build_expansion(e.spec, 8, e.kernel_head);
    CHECK(exp.classification.kind == ConvergenceKind::exact);
    for (double t : {0.2, 0.9}) {
        double direct = 1.0 + 2.0 * oracles::heat_geometric(t);
        CHECK(evaluate_expansion(exp, t, 8) == doctest::Approx(direct).epsilon(1e-10));
    }
}
