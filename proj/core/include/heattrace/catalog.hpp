#pragma once

#include <string>
#include <vector>

#include "heattrace/expansion.hpp"
#include "heattrace/spectrum.hpp"

namespace heattrace {

struct CatalogExpected {
    std::optional<ConvergenceKind> classification;
    double T = 0; ///< expected convergence radius when classification is exact
    bool has_theta_form = false;
};

struct CatalogEntry {
    std::string name;
    SpectrumSpec spec;
    std::vector<std::pair<double, double>> kernel_head; ///< modes outside the spec, e.g. ker D
    CatalogExpected expected;
    std::string description;
};

/// Named spectra: "sphere_absD:3", "sphere_Dpow:2,2", "circle_trivial_spin",
/// "circle_nontrivial_spin", "theta_operator", "q_exponential:1/2,1",
/// "pow2_pow2", "lacunary_gauss", "subexp_n23".
CatalogEntry catalog_entry(const std::string& name_and_params);

std::vector<std::string> catalog_names();

/// Reference value h(t) including kernel modes.
double catalog_heat_direct(const CatalogEntry& entry, double t, double tol = 1e-12);

} // namespace heattrace
