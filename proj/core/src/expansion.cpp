#include "heattrace/expansion.hpp"

#include <algorithm>
#include <cstdlib>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "heattrace/dirichlet.hpp"
#include "heattrace/quadrature.hpp"
#include "heattrace/specfun.hpp"

namespace heattrace {

namespace {
using Complex = std::complex<double>;
constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();
} // namespace

ExpansionTerm residue_term(const PoleDatum& pole) {
    ExpansionTerm term;
    term.s0 = pole.location;
    term.provenance = pole.provenance;
    term.log_coeffs.resize(pole.order);
    double kfact = 1;
    for (int k = 0; k < pole.order; ++k) {
        if (k > 0) kfact *= k;
        term.log_coeffs[k] = pole.principal[k] / kfact;
    }
    if (pole.principal_exact) {
        std::vector<Rational> exact(pole.order);
        Rational f = 1;
        for (int k = 0; k < pole.order; ++k) {
            if (k > 0) f *= k;
            exact[k] = (*pole.principal_exact)[k] / f;
        }
        term.exact_coeffs = std::move(exact);
    }
    return term;
}

StripPlan plan_strips(const ContinuationData& data, int num_strips) {
    if (num_strips < 1) fail(errc::domain_error, "need at least one strip");
    double L = data.abscissa;
    Region reg{L + 2.0 * num_strips + 6.0, 220.0};

    std::vector<PoleDatum> poles;
    std::vector<double> reals; // distinct real parts, descending
    auto enumerate = [&]() {
        poles = data.poles_in(reg);
        reals.clear();
        for (const auto& p : poles) {
            double r = p.location.real();
            if (reals.empty() || std::abs(reals.back() - r) > 1e-9) reals.push_back(r);
        }
    };
    auto clear_of_poles = [&](double line) {
        for (double r : reals)
            if (std::abs(line - r) < 0.1) return false;
        return true;
    };
    auto build_lines = [&]() {
        std::vector<double> lines;
        double line0 = L + 0.5;
        while (!clear_of_poles(line0)) line0 += 0.1;
        lines.push_back(line0);
        size_t next_real = 0;
        while (static_cast<int>(lines.size()) <= num_strips) {
            double prev = lines.back();
            while (next_real < reals.size() && reals[next_real] >= prev) ++next_real;
            double candidate;
            if (next_real < reals.size()) {
                double hi = reals[next_real];
                double lo = next_real + 1 < reals.size() ? reals[next_real + 1] : hi - 2.0;
                candidate = 0.5 * (hi + lo);
                ++next_real;
            } else {
                candidate = prev - 1.0; // pole reals exhausted: unit steps
            }
            int guard = 0;
            while (!clear_of_poles(candidate) && guard++ < 20) candidate -= 0.05;
            lines.push_back(candidate);
        }
        return lines;
    };

    enumerate();
    std::vector<double> lines = build_lines();
    for (int attempt = 0; attempt < 5; ++attempt) {
        if (lines.back() > -(reg.r_max - 1.5)) break; // deepest line safely inside the region
        Region probe{reg.r_max + 6.0, reg.y_max};
        if (std::isfinite(data.validity_re) && probe.r_max > data.validity_re + 6.0) {
            if (lines.back() < -(data.validity_re - 0.5))
                fail(errc::depth_insufficient, "strip plan would leave the continuation's validity half-plane");
            break;
        }
        if (data.poles_in(probe).size() == poles.size()) break; // pole set genuinely finite
        reg.r_max = -lines.back() + 8.0;
        enumerate();
        lines = build_lines();
    }
    if (std::isfinite(data.validity_re) && lines.back() < -(data.validity_re - 0.25))
        fail(errc::depth_insufficient, "strip plan would leave the continuation's validity half-plane");

    StripPlan plan;
    plan.r0 = -lines.front();

    for (int i = 1; i <= num_strips; ++i) {
        StripPlan::Strip strip;
        strip.line_R = -lines[static_cast<size_t>(i)];
        double re_lo = lines[static_cast<size_t>(i)], re_hi = lines[static_cast<size_t>(i) - 1];
        std::vector<const PoleDatum*> inside;
        for (const auto& p : poles)
            if (p.location.real() > re_lo && p.location.real() < re_hi) inside.push_back(&p);
        // distinct |Im| levels
        std::vector<double> levels;
        for (auto* p : inside) {
            double v = std::abs(p->location.imag());
            bool seen = false;
            for (double l : levels) seen = seen || std::abs(l - v) < 1e-9;
            if (!seen) levels.push_back(v);
        }
        std::sort(levels.begin(), levels.end());
        if (!levels.empty() && levels.front() > 1e-9) levels.insert(levels.begin(), 0.0); // y_0 = 0 reference
        for (size_t k = 0; k + 1 < levels.size(); ++k) strip.y_cuts.push_back(0.5 * (levels[k] + levels[k + 1]));
        // cells between cuts
        size_t cell_count = strip.y_cuts.size() + 1;
        strip.cells.assign(cell_count, {});
        for (auto* p : inside) {
            double v = std::abs(p->location.imag());
            size_t cell = 0;
            while (cell < strip.y_cuts.size() && v > strip.y_cuts[cell]) ++cell;
            strip.cells[cell].push_back(*p);
        }
        // drop empty leading cells bookkeeping: keep as-is (cells align with cut indices)
        plan.strips.push_back(std::move(strip));
    }
    return plan;
}

namespace {

Complex term_value(const ExpansionTerm& term, double t) {
    double lt = std::log(t);
    Complex acc = 0;
    double p = 1;
    for (size_t k = 0; k < term.log_coeffs.size(); ++k) {
        if (k > 0) p *= -lt;
        acc += term.log_coeffs[k] * p;
    }
    return acc * std::exp(-term.s0 * lt);
}

double head_value(const std::vector<std::pair<double, double>>& head, double t) {
    double acc = 0;
    for (auto [lam, m] : head) acc += m * std::exp(-lam * t);
    return acc;
}

} // namespace

double evaluate_expansion(const HeatExpansion& exp, double t, int strips_used, EvalOrder order) {
    if (!(t > 0)) fail(errc::domain_error, "evaluation requires t > 0");
    strips_used = std::min<int>(strips_used, static_cast<int>(exp.strips.size()));
    double acc = 0;
    for (int i = 0; i < strips_used; ++i) {
        const auto& strip = exp.strips[static_cast<size_t>(i)];
        double phi = 0;
        auto eval_cell = [&](const std::vector<ExpansionTerm>& cell) {
            double v = 0;
            for (const auto& term : cell) {
                if (term.s0.imag() < -1e-12) continue; // folded into the conjugate partner
                Complex val = term_value(term, t);
                v += term.s0.imag() > 1e-12 ? 2.0 * val.real() : val.real();
            }
            return v;
        };
        if (order == EvalOrder::reversed_cells)
            for (auto it = strip.cells.rbegin(); it != strip.cells.rend(); ++it) phi += eval_cell(*it);
        else
            for (const auto& cell : strip.cells) phi += eval_cell(cell);
        acc += phi;
    }
    double head = head_value(exp.kernel_head, t) + head_value(exp.reduction_head, t);
    return head + std::exp(-exp.exp_shift * t) * acc;
}

Complex evaluate_expansion_complex(const HeatExpansion& exp, double t, int strips_used, EvalOrder order) {
    if (!(t > 0)) fail(errc::domain_error, "evaluation requires t > 0");
    strips_used = std::min<int>(strips_used, static_cast<int>(exp.strips.size()));
    Complex acc = 0;
    for (int i = 0; i < strips_used; ++i) {
        const auto& strip = exp.strips[static_cast<size_t>(i)];
        auto eval_cell = [&](const std::vector<ExpansionTerm>& cell) {
            Complex v = 0;
            for (const auto& term : cell) v += term_value(term, t);
            return v;
        };
        if (order == EvalOrder::reversed_cells)
            for (auto it = strip.cells.rbegin(); it != strip.cells.rend(); ++it) acc += eval_cell(*it);
        else
            for (const auto& cell : strip.cells) acc += eval_cell(cell);
    }
    double head = head_value(exp.kernel_head, t) + head_value(exp.reduction_head, t);
    return Complex(head) + std::exp(-exp.exp_shift * t) * acc;
}

RemainderBound fit_remainder_bound(const ContinuationData& data, double R, int samples) {
    static const int env_samples = [] {
        const char* v = std::getenv("HEATTRACE_PRECISION_SAMPLES");
        return v ? std::atoi(v) : 0;
    }();
    if (env_samples >= 8) samples = env_samples;
    if (samples < 8) samples = 8;
    for (const auto& p : data.poles_in({R + 0.5, 4.0}))
        if (std::abs(p.location.real() + R) < 1e-9) fail(errc::pole_on_line, "pole on the requested vertical line");

    double y_hi = 1000.0;
    while (y_hi > 64.0 && !std::isfinite(data.log_abs_Z(R, y_hi))) y_hi *= 0.5;

    std::vector<double> ys, ls;
    for (int i = 0; i < 8; ++i) {
        double y = 0.05 + 0.95 * i / 8.0;
        double v = data.log_abs_Z(R, y);
        if (std::isfinite(v)) {
            ys.push_back(y);
            ls.push_back(v);
        }
    }
    for (int i = 0; i < samples; ++i) {
        double y = std::exp(std::log(1.0) + (std::log(y_hi) - std::log(1.0)) * i / (samples - 1.0));
        double v = data.log_abs_Z(R, y);
        if (std::isfinite(v)) {
            ys.push_back(y);
            ls.push_back(v);
        }
    }
    if (ys.size() < 12) fail(errc::non_integrable_line, "too few finite samples on the line");

    // two-parameter least squares on the y >= 1 part: log|Z| = log C - eps y
    double sy = 0, sl = 0, syy = 0, syl = 0;
    long cnt = 0;
    for (size_t i = 0; i < ys.size(); ++i) {
        if (ys[i] < 1.0) continue;
        sy += ys[i];
        sl += ls[i];
        syy += ys[i] * ys[i];
        syl += ys[i] * ls[i];
        ++cnt;
    }
    double det = cnt * syy - sy * sy;
    double slope = (cnt * syl - sy * sl) / det;
    double icept = (sl - slope * sy) / cnt;
    double eps_fit = -slope;
    double rms = 0;
    for (size_t i = 0; i < ys.size(); ++i) {
        if (ys[i] < 1.0) continue;
        double r = ls[i] - (icept + slope * ys[i]);
        rms += r * r;
    }
    rms = std::sqrt(rms / std::max<long>(cnt, 1));
    if (eps_fit < 0.02) fail(errc::non_integrable_line, "no exponential decay detected on the line");

    auto majorize = [&](double eps) { // smallest log C with log|Z| <= log C - eps y on samples
        double m = -inf;
        for (size_t i = 0; i < ys.size(); ++i) m = std::max(m, ls[i] + eps * ys[i]);
        return m;
    };

    RemainderBound best;
    double best_score = inf;
    auto consider = [&](double C_log, double eps, bool analytic) {
        double score = R > 0.5 ? (C_log - std::log(eps)) / R : C_log;
        if (score < best_score) {
            best_score = score;
            best = RemainderBound{R, std::exp(C_log), eps, rms, analytic};
        }
    };
    for (double delta : {0.05, 0.1, 0.2, 0.4, 0.7}) {
        double eps = pi / 2.0 - delta;
        consider(majorize(eps), eps, false);
        if (auto ab = data.analytic_line_bound(R, delta)) {
            double c_log = std::log(ab->first);
            if (majorize(ab->second) <= c_log + std::log(1.05)) consider(c_log, ab->second, true);
        }
    }
    if (eps_fit > 0.02) consider(majorize(eps_fit), eps_fit, false);
    return best;
}

double exactness_radius(const std::vector<RemainderBound>& bounds) {
    std::vector<double> u;
    for (const auto& b : bounds)
        if (b.R > 0.5 && b.C > 0 && b.eps > 0) u.push_back(std::exp((std::log(b.C) - std::log(b.eps)) / b.R));
    if (bounds.size() < 8 || u.size() < 4) fail(errc::insufficient_data, "need at least 8 remainder bounds");
    double m = 0;
    for (size_t i = u.size() / 2; i < u.size(); ++i) m = std::max(m, u[i]);
    if (m == 0) return inf;
    return 1.0 / m;
}

double remainder_integral(const ContinuationData& data, double R, double t) {
    if (!(t > 0)) fail(errc::domain_error, "remainder integral requires t > 0");
    RemainderBound b = fit_remainder_bound(data, R, 48);
    double log_scale = std::log(b.C) - std::log(b.eps); // tail at Y: C e^{-eps Y}/eps
    double Y = std::max(16.0, (log_scale + 32.0) / b.eps);
    double panel = std::min(2.0, pi / std::max(1.0, std::abs(std::log(t))));
    Complex acc = 0;
    double y = 0;
    while (y < Y) {
        double y2 = std::min(Y, y + panel * 16.0);
        acc += integrate_complex(
            [&](double yy) {
                Complex s(-R, yy);
                return specfun::gamma(s) * data.zeta(s) * std::exp(Complex(0, -yy * std::log(t)));
            },
            y, y2, 1e-10, 30);
        y = y2;
    }
    return std::pow(t, R) / pi * acc.real();
}

double evaluate_f_inf(const FInfDescriptor& f, double t) {
    if (f.kind != FInfDescriptor::Kind::theta_closed_form)
        fail(errc::domain_error, "no closed form attached");
    double x = f.a * t;
    double q = std::exp(-pi * pi / x);
    double theta = f.half_offset ? specfun::theta4(q) : specfun::theta3(q);
    return f.coeff * std::exp(-f.beta * t) * std::sqrt(pi / x) * 0.5 * (theta - 1.0);
}

Classification classify(const SpectrumSpec& spec, const HeatExpansion& exp) {
    Classification cls;
    const ContinuationData& cont = exp.continuation;
    std::ostringstream ev;

    if (cont.class_tag == ClassTag::linear_a) {
        cls.kind = ConvergenceKind::exact;
        auto eff = effective_polynomials(spec);
        cls.T = 2.0 * pi / to_double(eff.a.leading());
        cls.absolutely_exact = true; // strip lines grow linearly
        ev << "linear eigenvalue growth: expansion converges on (0, 2pi/a)";
        cls.evidence = ev.str();
        return cls;
    }
    if (cont.class_tag == ClassTag::exponential_q) {
        cls.kind = ConvergenceKind::exact;
        cls.T = inf;
        cls.absolutely_exact = true; // R_n = n - 1/2 grows linearly
        ev << "geometric eigenvalue growth: expansion converges for every t";
        cls.evidence = ev.str();
        return cls;
    }

    // finite pole set of the (reduced) continuation => almost exact
    std::vector<PoleDatum> deep = cont.poles_in({24.0, 8.0});
    bool finite_poles = std::none_of(deep.begin(), deep.end(),
                                     [](const PoleDatum& p) { return p.location.real() < -0.5; });
    if (finite_poles) {
        cls.kind = ConvergenceKind::almost_exact;
        cls.T = inf;
        cls.f_inf.kind = FInfDescriptor::Kind::numeric;
        if (cont.class_tag == ClassTag::even_power_a) {
            // theta closed form for the a(v+offset)^2, constant-multiplicity family
            bool const_mult = true;
            // reuse the pole at (1+0)/2: a single zeta pole at 1/2 marks btilde = {b0}
            for (const auto& p : deep)
                if (p.location.imag() == 0 && p.location.real() > 0.5 + 1e-9) const_mult = false;
            if (const_mult) {
                // recover a and the grid offset from the leading pole residue:
                // residue at 1/2 equals Gamma(1/2) a^{-1/2} b0 / 2
                const PoleDatum* lead = nullptr;
                for (const auto& p : deep)
                    if (std::abs(p.location - Complex(0.5, 0)) < 1e-12) lead = &p;
                bool has_zero_pole = std::any_of(deep.begin(), deep.end(), [](const PoleDatum& p) {
                    return std::abs(p.location) < 1e-12;
                });
                if (lead) {
                    cls.f_inf.kind = FInfDescriptor::Kind::theta_closed_form;
                    cls.f_inf.half_offset = !has_zero_pole; // the integer grid keeps the pole at 0
                    cls.f_inf.beta = exp.exp_shift;
                    double res = lead->principal[0].real(); // = sqrt(pi) a^{-1/2} b0 / 2
                    // a and b0 cannot be split from the residue alone; take a from the spec
                    auto eff = effective_polynomials(spec);
                    cls.f_inf.a = to_double(eff.a.leading());
                    cls.f_inf.coeff = res * 2.0 / (std::sqrt(pi) * std::pow(cls.f_inf.a, -0.5));
                }
            }
        }
        double direct = head_value(exp.kernel_head, 1.0) + heat_trace_direct(spec, 1.0, 1e-13);
        double main = evaluate_expansion(exp, 1.0, static_cast<int>(exp.strips.size()));
        cls.f_inf.sample_at_1 = direct - main;
        ev << "finite pole set; F_inf(1) = " << cls.f_inf.sample_at_1;
        cls.evidence = ev.str();
        return cls;
    }

    // divergence signature: one-signed integer-power coefficients with
    // super-geometric growth of successive ratios
    std::vector<std::pair<long, double>> taylor;
    for (const auto& strip : exp.strips)
        for (const auto& cell : strip.cells)
            for (const auto& term : cell) {
                if (std::abs(term.s0.imag()) > 1e-12) continue;
                double re = term.s0.real();
                if (re > 1e-9 || std::abs(re - std::round(re)) > 1e-9) continue;
                if (term.log_coeffs.size() != 1) continue;
                taylor.emplace_back(static_cast<long>(std::llround(-re)), term.log_coeffs[0].real());
            }
    std::sort(taylor.begin(), taylor.end());
    bool contiguous = !taylor.empty();
    for (size_t i = 0; i < taylor.size(); ++i) contiguous = contiguous && taylor[i].first == static_cast<long>(i) + taylor[0].first;
    if (contiguous && taylor.size() >= 8) {
        bool same_sign = true;
        for (auto& [p, v] : taylor) same_sign = same_sign && (v * taylor[0].second > 0);
        std::vector<double> ratios;
        for (size_t i = 0; i + 1 < taylor.size(); ++i)
            ratios.push_back(std::abs(taylor[i + 1].second / taylor[i].second));
        bool growing = true;
        for (size_t i = ratios.size() / 2; i + 1 < ratios.size(); ++i) growing = growing && ratios[i + 1] > ratios[i];
        bool super = ratios.back() > 1.5 * ratios[ratios.size() / 2];
        if (same_sign && growing && super) {
            cls.kind = ConvergenceKind::divergent;
            cls.T = 0;
            ev << "one-signed t^p coefficients with ratio growth " << ratios[ratios.size() / 2] << " -> "
               << ratios.back() << " (signature)";
            cls.evidence = ev.str();
            return cls;
        }
    }

    cls.kind = ConvergenceKind::asymptotic_only;
    std::vector<RemainderBound> bounds;
    for (const auto& strip : exp.strips) bounds.push_back(strip.bound);
    if (bounds.size() >= 8) {
        try {
            double T = exactness_radius(bounds);
            if (std::isfinite(T) && T > 0 && T < 1e6) cls.T = T;
        } catch (const Error&) {
        }
    }
    ev << "infinite pole ladder without an exactness certificate";
    cls.evidence = ev.str();
    return cls;
}

HeatExpansion build_expansion(const SpectrumSpec& spec, int num_strips,
                              const std::vector<std::pair<double, double>>& kernel_head) {
    SeriesMeta meta = abscissa(spec);
    if (!meta.heat_well_defined) fail(errc::not_trace_class, "heat trace undefined for this spectrum");

    double L = meta.abscissa_zeta;
    Region region{L + 2.0 * num_strips + 6.0, 220.0};
    int depth_hint = 12;
    if (spec.as_polynomial()) {
        auto eff = effective_polynomials(spec);
        depth_hint = std::max(12, static_cast<int>(std::ceil(eff.a.degree() * L)) + num_strips +
                                      2 * eff.a.degree() + eff.b.degree() + 6);
    }
    ContinuationData cont = continue_zeta(spec, region, depth_hint);
    StripPlan plan;
    for (int attempt = 0;; ++attempt) {
        try {
            plan = plan_strips(cont, num_strips);
            break;
        } catch (const Error& e) {
            if (e.code() != errc::depth_insufficient || attempt >= 2) throw;
            depth_hint += depth_hint / 2 + 8;
            cont = continue_zeta(spec, region, depth_hint);
        }
    }
    HeatExpansion exp;
    exp.continuation = cont;
    exp.kernel_head = kernel_head;
    exp.reduction_head = cont.entire_head;
    exp.exp_shift = cont.exp_shift;
    for (const auto& strip : plan.strips) {
        HeatStrip hs;
        hs.line_R = strip.line_R;
        for (const auto& cell : strip.cells) {
            std::vector<ExpansionTerm> terms;
            for (const auto& pole : cell) terms.push_back(residue_term(pole));
            hs.cells.push_back(std::move(terms));
        }
        hs.bound = fit_remainder_bound(cont, strip.line_R);
        exp.strips.push_back(std::move(hs));
    }
    exp.classification = classify(spec, exp);
    return exp;
}

} // namespace heattrace
