#pragma once

#include <string>

#include "heattrace/continuation.hpp"

namespace heattrace {

/// One residue contribution: t^{-s0} * sum_k log_coeffs[k] (-log t)^k.
struct ExpansionTerm {
    std::complex<double> s0;
    std::vector<std::complex<double>> log_coeffs; ///< c_k = b_{-k-1}/k!
    std::optional<std::vector<Rational>> exact_coeffs;
    Provenance provenance = Provenance::exact_special;
};

/// |Z(-R+iy)| <= C e^{-eps |y|} on the sampled line, within 5% slack.
struct RemainderBound {
    double R = 0;
    double C = 0;
    double eps = 0;
    double fit_quality = 0; ///< rms residual of the two-parameter log fit
    bool analytic = false;  ///< C from a proven class bound rather than sampling alone
};

struct StripPlan {
    double r0 = 0; ///< rightmost line sits at Re = -r0, with -r0 above the abscissa
    struct Strip {
        double line_R = 0; ///< strip spans -line_R < Re(s) < previous line
        std::vector<double> y_cuts;
        std::vector<std::vector<PoleDatum>> cells; ///< cell k: poles between consecutive cuts
    };
    std::vector<Strip> strips;
};

enum class ConvergenceKind { exact, almost_exact, asymptotic_only, divergent, no_continuation };

struct FInfDescriptor {
    enum class Kind { none, theta_closed_form, numeric } kind = Kind::none;
    double a = 1.0;           ///< reduced eigenvalues a*v^2 (theta family)
    bool half_offset = false; ///< grid v+1/2: theta4 flavour instead of theta3
    double coeff = 1.0;
    double beta = 0.0;
    double sample_at_1 = 0.0; ///< certified-nonzero numeric sample
};

struct Classification {
    ConvergenceKind kind = ConvergenceKind::asymptotic_only;
    double T = 0.0; ///< convergence radius in t (inf for all t); 0 when none is claimed
    bool absolutely_exact = false;
    FInfDescriptor f_inf;
    std::string evidence;
};

struct HeatStrip {
    double line_R = 0;
    std::vector<std::vector<ExpansionTerm>> cells;
    RemainderBound bound;
};

struct HeatExpansion {
    std::vector<HeatStrip> strips;
    Classification classification;
    std::vector<std::pair<double, double>> kernel_head;    ///< modes outside the spec (e.g. kernel of D)
    std::vector<std::pair<double, double>> reduction_head; ///< Dirichlet terms split off by the continuation
    double exp_shift = 0;
    ContinuationData continuation;

    std::vector<std::pair<double, double>> truncation_head() const {
        auto v = kernel_head;
        v.insert(v.end(), reduction_head.begin(), reduction_head.end());
        return v;
    }
};

enum class EvalOrder { conjugate_paired, strict_cells, reversed_cells };

ExpansionTerm residue_term(const PoleDatum& pole);

StripPlan plan_strips(const ContinuationData& data, int num_strips);

HeatExpansion build_expansion(const SpectrumSpec& spec, int num_strips,
                              const std::vector<std::pair<double, double>>& kernel_head = {});

/// truncation_head(t) + e^{-exp_shift t} * sum of the first strips_used strips.
double evaluate_expansion(const HeatExpansion& exp, double t, int strips_used,
                          EvalOrder order = EvalOrder::conjugate_paired);
/// Same sum without conjugate pairing, kept complex (reality diagnostics).
std::complex<double> evaluate_expansion_complex(const HeatExpansion& exp, double t, int strips_used,
                                                EvalOrder order = EvalOrder::strict_cells);

/// F_R(t): the vertical-line integral of Z(s) t^{-s} / (2 pi i) at Re(s) = -R.
double remainder_integral(const ContinuationData& data, double R, double t);

RemainderBound fit_remainder_bound(const ContinuationData& data, double R, int samples = 64);

/// T = 1 / limsup (C_n/eps_n)^{1/R_n}, running max over the last half; needs >= 8 bounds.
double exactness_radius(const std::vector<RemainderBound>& bounds);

Classification classify(const SpectrumSpec& spec, const HeatExpansion& exp);

double evaluate_f_inf(const FInfDescriptor& f, double t);

} // namespace heattrace
