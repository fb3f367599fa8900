#include "heattrace/tauberian.hpp"

#include <cmath>
#include <sstream>

#include "heattrace/dirichlet.hpp"
#include "heattrace/specfun.hpp"

namespace heattrace {

namespace {

// closed-form heat sum for linear eigenvalue growth: sum_m B(m) e^{-(a m + c) t}
double heat_linear_closed(const Poly& a_eff, const Poly& b_eff, double t) {
    double a = to_double(a_eff.leading());
    double c = to_double(a_eff.coeff(0));
    double x = std::exp(-a * t);
    double acc = 0;
    for (int j = 0; j <= b_eff.degree(); ++j) {
        double bj = to_double(b_eff.coeff(j));
        if (bj == 0) continue;
        double li; // sum_{m>=0} m^j x^m
        if (j == 0) li = 1.0 / (1.0 - x);
        else {
            double num = 0;
            for (int k = 0; k < j; ++k)
                num += to_double(Rational(specfun::eulerian_number(j, k))) * std::pow(x, j - k);
            li = num / std::pow(1.0 - x, j + 1);
        }
        acc += bj * li;
    }
    return std::exp(-c * t) * acc;
}

double heat_for_ratio(const SpectrumSpec& spec, double t) {
    if (auto* ps = spec.as_polynomial()) {
        auto eff = effective_polynomials(spec);
        if (eff.a.degree() == 1) return heat_linear_closed(eff.a, eff.b, t);
        (void)ps;
    }
    return heat_trace_direct(spec, t, 1e-11);
}

} // namespace

double TauberianReport::leading(double t) const {
    double f = F.scale;
    if (F.kind == SlowlyVarying::Kind::log_power) f *= std::pow(-std::log(t), F.exponent);
    return specfun::gamma(L + 1.0) * std::pow(t, -L) * f;
}

TauberianReport leading_order(const SpectrumSpec& spec) {
    SeriesMeta meta = abscissa(spec);
    if (!meta.heat_well_defined) fail(errc::not_trace_class, "heat trace undefined for this spectrum");

    TauberianReport rep;
    rep.L = meta.abscissa_zeta;
    std::ostringstream note;

    if (spec.as_polynomial()) {
        auto eff = effective_polynomials(spec);
        int ga = eff.a.degree(), gb = eff.b.degree();
        rep.F.kind = SlowlyVarying::Kind::constant;
        rep.F.scale = to_double(eff.b.leading()) / (gb + 1) * std::pow(to_double(eff.a.leading()), -rep.L);
        rep.F.exponent = 0;
        rep.slow_variation_ok = true;
        note << "N(lambda) ~ C lambda^" << rep.L;
        (void)ga;
    } else if (auto* es = spec.as_exponential()) {
        double step = es->power_r * std::abs(std::log(es->q));
        if (es->mult_power == 0) {
            int m = std::max(es->p.degree(), 0);
            rep.F.kind = SlowlyVarying::Kind::log_power;
            rep.F.exponent = m + 1;
            rep.F.scale = to_double(es->p.leading()) / ((m + 1) * std::pow(step, m + 1));
            rep.slow_variation_ok = true;
            note << "N(lambda) ~ c (log lambda)^" << m + 1;
        } else {
            // N(lambda)/lambda^L oscillates with log-period r|log q|: the ratio
            // F(x lambda)/F(lambda) only settles along x in the geometric lattice
            rep.F.kind = SlowlyVarying::Kind::unknown;
            rep.slow_variation_ok = false;
            note << "slow-variation check fails: N(lambda)/lambda^" << rep.L
                 << " oscillates; F(x l)/F(l) has a limit only for x = q^{-r k}";
        }
    } else {
        auto* xs = spec.as_explicit();
        if (xs->tail) {
            double mt = xs->pairs.back().second;
            switch (xs->tail->kind) {
            case TailDescriptor::Kind::power:
                rep.L = 1.0 / xs->tail->g;
                rep.F.kind = SlowlyVarying::Kind::constant;
                rep.F.scale = mt * std::pow(to_double(spec.scale) * xs->tail->c, -rep.L);
                rep.slow_variation_ok = true;
                break;
            case TailDescriptor::Kind::exponential:
                rep.L = 0;
                rep.F.kind = SlowlyVarying::Kind::log_power;
                rep.F.exponent = 1;
                rep.F.scale = mt / std::log(xs->tail->base);
                rep.slow_variation_ok = true;
                break;
            case TailDescriptor::Kind::exp_power:
                rep.L = 0;
                rep.F.kind = SlowlyVarying::Kind::log_power;
                rep.F.exponent = 1.0 / xs->tail->g;
                rep.F.scale = mt * std::pow(xs->tail->c, -1.0 / xs->tail->g);
                rep.slow_variation_ok = true;
                break;
            }
            if (rep.F.kind == SlowlyVarying::Kind::log_power &&
                rep.F.exponent != std::floor(rep.F.exponent))
                note << "N(lambda) ~ (log lambda)^" << rep.F.exponent
                     << " with non-integer exponent: no meromorphic continuation around 0 expected";
        } else {
            // regression of log N against log log lambda over the data
            long cap = represented_count(spec);
            double count = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
            long used = 0;
            for (long n = 0; n < cap; ++n) {
                count += multiplicity(spec, n);
                if (n < cap / 2) continue;
                double lll = std::log(std::max(1e-9, log_eigenvalue(spec, n)));
                double ln = std::log(count);
                sx += lll;
                sy += ln;
                sxx += lll * lll;
                sxy += lll * ln;
                ++used;
            }
            if (used >= 8) {
                double a = (used * sxy - sx * sy) / (used * sxx - sx * sx);
                double b = (sy - a * sx) / used;
                rep.F.kind = SlowlyVarying::Kind::log_power;
                rep.F.exponent = a;
                rep.F.scale = std::exp(b);
                rep.slow_variation_ok = true;
                note << "fitted N(lambda) ~ " << rep.F.scale << " (log lambda)^" << a;
            } else {
                rep.F.kind = SlowlyVarying::Kind::unknown;
                note << "too little data to fit the counting function";
            }
        }
    }

    for (double t : {1e-4, 1e-8, 1e-12}) {
        try {
            double h = heat_for_ratio(spec, t);
            double lead = rep.leading(t);
            if (lead > 0 && std::isfinite(h)) rep.ratio_samples.emplace_back(t, h / lead);
        } catch (const Error&) {
            // unaffordable summation at this t: skip the sample
        }
    }
    rep.note = note.str();
    return rep;
}

LacunaryEvidence classify_lacunary(const SpectrumSpec& spec) {
    LacunaryEvidence ev;
    long base = first_index(spec);
    long cap = std::min<long>(represented_count(spec) - 1, 40);
    for (long k = 0; k + 1 <= cap; ++k)
        ev.log_ratios.push_back(log_eigenvalue(spec, base + k + 1) - log_eigenvalue(spec, base + k));
    if (auto* xs = spec.as_explicit(); xs && xs->tail && xs->tail->kind == TailDescriptor::Kind::exp_power) {
        ev.lacunary = xs->tail->g > 1.0; // log-gap c((n+1)^g - n^g) increases without bound
        return ev;
    }
    if (spec.as_polynomial() || spec.as_exponential()) {
        ev.lacunary = false; // ratio tends to 1 (polynomial) or a finite constant (geometric)
        return ev;
    }
    // listed data only: call it lacunary when the log-gaps keep growing and are large
    bool growing = ev.log_ratios.size() >= 6;
    for (size_t i = ev.log_ratios.size() / 2; i + 1 < ev.log_ratios.size(); ++i)
        growing = growing && ev.log_ratios[i + 1] > ev.log_ratios[i] * 1.05;
    ev.lacunary = growing && !ev.log_ratios.empty() && ev.log_ratios.back() > 3.0;
    return ev;
}

} // namespace heattrace
