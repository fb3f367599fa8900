#include "heattrace/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <variant>

#include "heattrace/dirichlet.hpp"
#include "heattrace/specfun.hpp"

namespace heattrace {

namespace {

using Complex = std::complex<double>;
constexpr double pi = std::numbers::pi;

// ------------------------------------------------------------------
// truncated complex power series
// ------------------------------------------------------------------

struct CSeries {
    std::vector<Complex> c;
    explicit CSeries(size_t len) : c(len, Complex(0)) {}
    static CSeries one(size_t len) {
        CSeries s(len);
        s.c[0] = 1.0;
        return s;
    }
    size_t size() const { return c.size(); }
};

CSeries mul(const CSeries& a, const CSeries& b) {
    CSeries r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; i + j < a.size() && j < b.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

CSeries inverse(const CSeries& a) {
    CSeries r(a.size());
    r.c[0] = 1.0 / a.c[0];
    for (size_t k = 1; k < a.size(); ++k) {
        Complex s = 0;
        for (size_t i = 1; i <= k && i < a.size(); ++i) s += a.c[i] * r.c[k - i];
        r.c[k] = -s / a.c[0];
    }
    return r;
}

CSeries pow_series(CSeries a, unsigned e) {
    CSeries r = CSeries::one(a.size());
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

CSeries exp_arg_series(size_t len, Complex k) { // exp(k * eps)
    CSeries r(len);
    Complex term = 1.0;
    for (size_t i = 0; i < len; ++i) {
        r.c[i] = term;
        term *= k / static_cast<double>(i + 1);
    }
    return r;
}

// Gamma(eps) = eps^{-1} * T(eps); returns T
CSeries gamma_origin_series(size_t len) {
    // T = exp(-gamma eps + sum_{k>=2} (-1)^k zeta(k)/k eps^k)
    std::vector<Complex> logc(len, 0.0);
    if (len > 1) logc[1] = -specfun::euler_gamma;
    for (size_t k = 2; k < len; ++k) {
        double z = specfun::riemann_zeta(Complex(static_cast<double>(k), 0)).real();
        logc[k] = ((k % 2) ? -1.0 : 1.0) * z / static_cast<double>(k);
    }
    CSeries e(len);
    e.c[0] = 1.0;
    for (size_t n = 1; n < len; ++n) {
        Complex s = 0;
        for (size_t k = 1; k <= n; ++k) s += static_cast<double>(k) * logc[k] * e.c[n - k];
        e.c[n] = s / static_cast<double>(n);
    }
    return e;
}

// Taylor coefficients of Gamma at a regular point (Cauchy integral, 64 nodes).
std::vector<Complex> gamma_taylor(Complex z0, double radius, size_t count) {
    const int nodes = 64;
    std::vector<Complex> out(count, Complex(0));
    for (int t = 0; t < nodes; ++t) {
        double th = 2.0 * pi * t / nodes;
        Complex w = std::polar(radius, th);
        Complex g = specfun::gamma(z0 + w);
        Complex rot = std::polar(1.0, -th);
        Complex f = g;
        for (size_t d = 0; d < count; ++d) {
            out[d] += f;
            f *= rot / radius;
        }
    }
    for (auto& x : out) x /= nodes;
    return out;
}

double gamma_line_bound(double R) { // |Gamma(-R+iy)| <= this * e^{-pi|y|/2}, R >= 0.5
    return std::sqrt(2.0 * pi) * std::exp(1.0 + R) * std::pow(R, -R - 0.5);
}

// ------------------------------------------------------------------
// class payloads
// ------------------------------------------------------------------

// lambda_v = a (v+alpha)^G + beta, M_v = sum_j btilde[j] (v+alpha)^j, v >= 0
struct HurwitzClass {
    Rational a;
    unsigned G = 1;
    Rational alpha;
    std::vector<Rational> btilde;
    Rational beta = 0;
};

struct BinomialClass {
    Poly a_eff, b_eff;
    Rational a_lead;
    long m0 = 1;
    int depth = 12;
    int G = 2;
    // K[j] maps offset o = i - l (stored at index o + deg b) to the rational
    // weight of binom(-s,j) * zeta_H(G s + o, m0)
    std::vector<std::vector<Rational>> K;
};

struct ExponentialClass {
    double q = 0.5;
    std::optional<Rational> q_exact;
    double r = 1.0;
    Rational c = 0; // multiplicity power: zeta(s) = sigma^{-s} G(s - c)
    int m = 0;
    std::vector<Rational> ptilde;
    Rational sigma = 1;
};

} // namespace

struct ContinuationImpl {
    std::variant<HurwitzClass, BinomialClass, ExponentialClass> payload;
};

namespace {

// ---------------- Hurwitz-kernel class ----------------

Complex hurwitz_class_eval(const HurwitzClass& h, Complex s) {
    Complex acc = 0;
    for (size_t j = 0; j < h.btilde.size(); ++j) {
        if (h.btilde[j] == 0) continue;
        Complex w = static_cast<double>(h.G) * s - static_cast<double>(j);
        acc += to_double(h.btilde[j]) * specfun::hurwitz_zeta(w, to_double(h.alpha));
    }
    return std::exp(-s * std::log(to_double(h.a))) * acc;
}

Rational hurwitz_class_value_neg_int(const HurwitzClass& h, long n) {
    Rational acc = 0;
    for (size_t j = 0; j < h.btilde.size(); ++j) {
        if (h.btilde[j] == 0) continue;
        acc += h.btilde[j] * specfun::hurwitz_zeta_neg_int(static_cast<unsigned>(h.G * n + j), h.alpha);
    }
    Rational an = 1;
    for (long i = 0; i < n; ++i) an *= h.a;
    return an * acc;
}

std::vector<PoleDatum> hurwitz_class_poles(const HurwitzClass& h, const Region& reg,
                                           std::vector<CancellationRecord>& cancelled) {
    std::vector<PoleDatum> poles;
    // poles of the zeta factor at s = (1+j)/G
    for (size_t j = 0; j < h.btilde.size(); ++j) {
        if (h.btilde[j] == 0) continue;
        Rational s0_rat = Rational(1 + static_cast<long>(j), static_cast<long>(h.G));
        double s0 = to_double(s0_rat);
        PoleDatum p;
        p.location = s0;
        p.order = 1;
        if (h.G == 1) {
            // Gamma(1+j) = j! and a^{-(1+j)} are rational: exact residue
            Rational apow = 1;
            for (unsigned i = 0; i <= j; ++i) apow /= h.a;
            Rational res = Rational(factorial_int(static_cast<unsigned>(j))) * h.btilde[j] * apow;
            p.principal = {Complex(to_double(res))};
            p.principal_exact = std::vector<Rational>{res};
            p.provenance = Provenance::exact_rational;
        } else {
            double res = specfun::gamma(s0) * std::pow(to_double(h.a), -s0) * to_double(h.btilde[j]) /
                         static_cast<double>(h.G);
            p.principal = {Complex(res)};
            p.provenance = Provenance::exact_special;
            p.err_est = 1e-14 * std::abs(res);
        }
        if (s0 >= -reg.r_max) poles.push_back(std::move(p));
    }
    // Gamma poles at -n, cancelled where the zeta value vanishes
    for (long n = 0; n <= static_cast<long>(std::floor(reg.r_max)); ++n) {
        Rational val = hurwitz_class_value_neg_int(h, n);
        if (val == 0) {
            cancelled.push_back({n, true});
            continue;
        }
        Rational res = specfun::gamma_residue(static_cast<unsigned>(n)) * val;
        PoleDatum p;
        p.location = Complex(-static_cast<double>(n), 0);
        p.order = 1;
        p.principal = {Complex(to_double(res))};
        p.principal_exact = std::vector<Rational>{res};
        p.provenance = Provenance::exact_rational;
        poles.push_back(std::move(p));
    }
    return poles;
}

// ---------------- binomial-reduction class ----------------

Complex binomial_class_eval(const BinomialClass& bc, Complex s) {
    int gb = bc.b_eff.degree();
    size_t width = 0;
    for (const auto& row : bc.K) width = std::max(width, row.size());
    // fold the binomial weights first so each offset costs one Hurwitz evaluation
    std::vector<Complex> weight(width, Complex(0));
    Complex binom = 1.0; // binom(-s, j)
    for (size_t j = 0; j < bc.K.size(); ++j) {
        if (j > 0) binom *= (-s - static_cast<double>(j - 1)) / static_cast<double>(j);
        for (size_t idx = 0; idx < bc.K[j].size(); ++idx)
            if (bc.K[j][idx] != 0) weight[idx] += binom * to_double(bc.K[j][idx]);
    }
    Complex acc = 0;
    for (size_t idx = 0; idx < width; ++idx) {
        if (weight[idx] == Complex(0)) continue;
        long o = static_cast<long>(idx) - gb;
        Complex w = static_cast<double>(bc.G) * s + static_cast<double>(o);
        acc += weight[idx] * specfun::hurwitz_zeta(w, static_cast<double>(bc.m0));
    }
    return std::exp(-s * std::log(to_double(bc.a_lead))) * acc;
}

Rational binom_rational(const Rational& top, unsigned j) { // binom(top, j)
    Rational r = 1;
    for (unsigned t = 0; t < j; ++t) r *= (top - Rational(t)) / Rational(t + 1);
    return r;
}

Complex binomial_value_near(const BinomialClass& bc, Complex s0) {
    // average on a small circle: cheap analytic-limit evaluation
    Complex acc = 0;
    const int nodes = 8;
    for (int t = 0; t < nodes; ++t) {
        Complex w = std::polar(2e-4, 2.0 * pi * t / nodes);
        acc += binomial_class_eval(bc, s0 + w);
    }
    return acc / static_cast<double>(nodes);
}

std::vector<PoleDatum> binomial_class_poles(const BinomialClass& bc, const Region& reg,
                                            std::vector<CancellationRecord>& cancelled) {
    std::vector<PoleDatum> poles;
    int gb = bc.b_eff.degree();
    double la = std::log(to_double(bc.a_lead));

    // candidates from zeta_H(G s + o, m0) at s = (1-o)/G
    std::map<long, bool> zeta_pole_at_int; // collision bookkeeping
    for (long o = -gb; o <= static_cast<long>(bc.G) * bc.depth; ++o) {
        Rational s0_rat = Rational(1 - o, static_cast<long>(bc.G));
        double s0 = to_double(s0_rat);
        if (s0 < -reg.r_max - 0.5) continue;
        Rational weight = 0;
        for (size_t j = 0; j < bc.K.size(); ++j) {
            size_t idx = static_cast<size_t>(o + gb);
            if (idx >= bc.K[j].size() || bc.K[j][idx] == 0) continue;
            weight += binom_rational(-s0_rat, static_cast<unsigned>(j)) * bc.K[j][idx];
        }
        if (weight == 0) continue;
        bool neg_int = denominator(s0_rat) == 1 && s0_rat <= 0;
        if (neg_int) {
            zeta_pole_at_int[static_cast<long>(-to_double(s0_rat))] = true;
            continue; // handled below together with the Gamma pole (order-2 candidate)
        }
        double res_zeta = std::exp(-s0 * la) * to_double(weight) / static_cast<double>(bc.G);
        PoleDatum p;
        p.location = s0;
        p.order = 1;
        p.principal = {specfun::gamma(Complex(s0)) * res_zeta};
        p.provenance = Provenance::exact_special;
        p.err_est = 1e-12 * std::abs(p.principal[0]);
        if (s0 >= -reg.r_max) poles.push_back(std::move(p));
    }

    // Gamma poles at -n
    long n_max = static_cast<long>(std::floor(std::min(reg.r_max, static_cast<double>(bc.depth - gb) / bc.G - 0.75)));
    for (long n = 0; n <= n_max; ++n) {
        if (zeta_pole_at_int.count(n)) {
            // genuine double-pole candidate: defer to the numeric Cauchy probe
            PoleDatum p;
            p.location = Complex(-static_cast<double>(n), 0);
            p.order = 2;
            p.provenance = Provenance::numeric_cauchy;
            poles.push_back(std::move(p)); // principal filled by caller via laurent_at
            continue;
        }
        // direct evaluation, falling back to a circle average if an inner
        // Hurwitz argument lands on its pole
        bool singular_term = false;
        for (size_t j = 0; j < bc.K.size() && !singular_term; ++j)
            for (size_t idx = 0; idx < bc.K[j].size(); ++idx)
                if (bc.K[j][idx] != 0 && static_cast<long>(bc.G) * (-n) + (static_cast<long>(idx) - gb) == 1) {
                    singular_term = true;
                    break;
                }
        Complex val = singular_term ? binomial_value_near(bc, Complex(-static_cast<double>(n), 0))
                                    : binomial_class_eval(bc, Complex(-static_cast<double>(n), 0));
        double scale = std::abs(binomial_class_eval(bc, Complex(-static_cast<double>(n) + 0.437, 0))) + 1.0;
        if (std::abs(val) < 1e-12 * scale) {
            cancelled.push_back({n, false}); // numeric zero: flagged, never exact here
            continue;
        }
        PoleDatum p;
        p.location = Complex(-static_cast<double>(n), 0);
        p.order = 1;
        p.principal = {to_double(specfun::gamma_residue(static_cast<unsigned>(n))) * val};
        p.provenance = Provenance::exact_special;
        p.err_est = 1e-11 * std::abs(p.principal[0]);
        poles.push_back(std::move(p));
    }
    return poles;
}

// ---------------- exponential class ----------------

double exp_omega(const ExponentialClass& ec) { return 2.0 * pi / (ec.r * std::abs(std::log(ec.q))); }

Complex exp_class_G(const ExponentialClass& ec, Complex w) {
    Complex x = std::exp(ec.r * w * std::log(ec.q));
    Complex num = 0;
    for (auto it = ec.ptilde.rbegin(); it != ec.ptilde.rend(); ++it) num = num * x + to_double(*it);
    return num / std::pow(Complex(1.0) - x, ec.m + 1);
}

Complex exp_class_eval(const ExponentialClass& ec, Complex s) {
    return std::exp(-s * std::log(to_double(ec.sigma))) * exp_class_G(ec, s - to_double(ec.c));
}

// local expansion of G at a lattice pole: G(w0 + eps) = sum g_i kappa^{i-m-1} eps^{i-m-1},
// kappa = r log q, g = (-1)^{m+1} ptilde(e^v) * h(v)^{-(m+1)}, h = (e^v - 1)/v
std::vector<Complex> exp_class_laurent_g(const ExponentialClass& ec, size_t len) {
    CSeries ev = exp_arg_series(len, 1.0); // e^v
    // h(v) = sum v^i/(i+1)!
    CSeries h(len);
    double f = 1;
    for (size_t i = 0; i < len; ++i) {
        f *= static_cast<double>(i + 1);
        h.c[i] = 1.0 / f;
    }
    CSeries num(len);
    for (auto it = ec.ptilde.rbegin(); it != ec.ptilde.rend(); ++it) {
        num = mul(num, ev);
        num.c[0] += to_double(*it);
    }
    CSeries g = mul(num, inverse(pow_series(h, ec.m + 1)));
    double sign = (ec.m + 1) % 2 ? -1.0 : 1.0;
    for (auto& x : g.c) x *= sign;
    return g.c;
}

// assemble principal part of Z = Gamma * zeta at a pole with zeta-part
// sum_i zc[i] eps^{i - zoff} and Gamma-part sum_i gc[i] eps^{i - goff}
std::vector<Complex> combine_principal(const std::vector<Complex>& zc, int zoff,
                                       const std::vector<Complex>& gc, int goff, int order) {
    std::vector<Complex> principal(order, Complex(0)); // b_{-1}..b_{-order}
    for (size_t i = 0; i < zc.size(); ++i)
        for (size_t j = 0; j < gc.size(); ++j) {
            int e = static_cast<int>(i) - zoff + static_cast<int>(j) - goff;
            if (e < 0 && -e <= order) principal[-e - 1] += zc[i] * gc[j];
        }
    return principal;
}

std::vector<PoleDatum> exp_class_poles(const ExponentialClass& ec, const Region& reg,
                                       std::vector<CancellationRecord>& cancelled) {
    std::vector<PoleDatum> poles;
    double omega = exp_omega(ec);
    double c = to_double(ec.c);
    double kappa_abs = ec.r * std::abs(std::log(ec.q));
    Complex kappa(-kappa_abs, 0); // r log q < 0
    size_t len = static_cast<size_t>(ec.m) + 4;
    std::vector<Complex> g = exp_class_laurent_g(ec, len);
    double lsg = std::log(to_double(ec.sigma));

    long k_max = static_cast<long>(std::floor(reg.y_max / omega));
    for (long k = -k_max; k <= k_max; ++k) {
        Complex s0(c, omega * static_cast<double>(k));
        bool at_origin = (c == 0.0) && k == 0;
        // zeta-part Laurent in eps: sigma^{-s} * G; G coefficients from g with kappa powers
        std::vector<Complex> zc(len);
        for (size_t i = 0; i < len; ++i) zc[i] = g[i] * std::pow(kappa, static_cast<double>(i) - (ec.m + 1));
        // fold in sigma^{-s} = sigma^{-s0} exp(-eps log sigma)
        CSeries sg = exp_arg_series(len, Complex(-lsg));
        Complex s0fac = std::exp(-s0 * lsg);
        CSeries zser(len);
        for (size_t i = 0; i < len; ++i) zser.c[i] = zc[i] * s0fac;
        zser = mul(zser, sg);
        int order = ec.m + 1 + (at_origin ? 1 : 0);
        std::vector<Complex> principal;
        if (at_origin) {
            CSeries t = gamma_origin_series(len);
            principal = combine_principal(zser.c, ec.m + 1, t.c, 1, order);
        } else {
            if (std::abs(specfun::gamma(s0)) < 1e-280) continue; // numerically dead pole
            double rho = 0.45 * std::min({omega, std::abs(s0) > 0 ? std::abs(s0) : omega,
                                          std::abs(s0 + 1.0)});
            auto gt = gamma_taylor(s0, rho, len);
            principal = combine_principal(zser.c, ec.m + 1, gt, 0, order);
        }
        PoleDatum p;
        p.location = s0;
        p.order = order;
        p.principal = std::move(principal);
        p.provenance = Provenance::exact_special;
        p.err_est = 1e-12 * std::abs(p.principal.back());
        if (s0.real() >= -reg.r_max) poles.push_back(std::move(p));
    }

    // Gamma poles at -n (n = 0 belongs to the merged pole when c = 0)
    bool exact_ok = ec.q_exact && denominator(ec.c) == 1 && ec.r == std::floor(ec.r);
    for (long n = (c == 0.0 ? 1 : 0); n <= static_cast<long>(std::floor(reg.r_max)); ++n) {
        PoleDatum p;
        p.location = Complex(-static_cast<double>(n), 0);
        p.order = 1;
        if (exact_ok) {
            // G(-n-c) with x = q^{r(-n-c)} exactly rational
            long e = -static_cast<long>(ec.r) * (n + static_cast<long>(to_double(ec.c)));
            Rational x = 1;
            for (long i = 0; i < std::labs(e); ++i) x *= *ec.q_exact;
            if (e < 0) x = Rational(1) / x;
            Rational num = 0;
            for (auto it = ec.ptilde.rbegin(); it != ec.ptilde.rend(); ++it) num = num * x + *it;
            Rational den = 1;
            Rational base = Rational(1) - x;
            for (int i = 0; i <= ec.m; ++i) den *= base;
            Rational sig_pow = 1;
            for (long i = 0; i < n; ++i) sig_pow *= ec.sigma;
            Rational res = specfun::gamma_residue(static_cast<unsigned>(n)) * sig_pow * num / den;
            if (res == 0) {
                cancelled.push_back({n, true});
                continue;
            }
            p.principal = {Complex(to_double(res))};
            p.principal_exact = std::vector<Rational>{res};
            p.provenance = Provenance::exact_rational;
        } else {
            Complex val = std::exp(static_cast<double>(n) * lsg) * exp_class_G(ec, Complex(-static_cast<double>(n) - c, 0));
            p.principal = {to_double(specfun::gamma_residue(static_cast<unsigned>(n))) * val};
            p.provenance = Provenance::exact_special;
            p.err_est = 1e-13 * std::abs(p.principal[0]);
        }
        poles.push_back(std::move(p));
    }
    return poles;
}

void sort_poles(std::vector<PoleDatum>& poles) {
    std::sort(poles.begin(), poles.end(), [](const PoleDatum& x, const PoleDatum& y) {
        if (x.location.real() != y.location.real()) return x.location.real() > y.location.real();
        return std::abs(x.location.imag()) < std::abs(y.location.imag()) ||
               (std::abs(x.location.imag()) == std::abs(y.location.imag()) && x.location.imag() > y.location.imag());
    });
}

} // namespace

// ------------------------------------------------------------------
// ContinuationData methods
// ------------------------------------------------------------------

Complex ContinuationData::zeta(Complex s) const {
    if (auto* h = std::get_if<HurwitzClass>(&impl->payload)) return hurwitz_class_eval(*h, s);
    if (auto* b = std::get_if<BinomialClass>(&impl->payload)) return binomial_class_eval(*b, s);
    return exp_class_eval(std::get<ExponentialClass>(impl->payload), s);
}

Complex ContinuationData::zeta_full(Complex s) const {
    Complex acc = zeta(s);
    for (auto [lam, m] : entire_head) acc += m * std::exp(-s * std::log(lam));
    return acc;
}

double ContinuationData::log_abs_Z(double R, double y) const {
    Complex s(-R, y);
    double lg = specfun::log_gamma(s).real();
    double lz = std::log(std::abs(zeta(s)));
    return lg + lz;
}

std::optional<std::pair<double, double>> ContinuationData::analytic_line_bound(double R, double delta) const {
    if (R < 1.0) return std::nullopt;
    if (auto* h = std::get_if<HurwitzClass>(&impl->payload)) {
        if (h->G != 1) return std::nullopt;
        // peel alpha into (0,1]
        double alpha = to_double(h->alpha);
        int peel = static_cast<int>(std::ceil(alpha - 1.0));
        peel = std::max(peel, 0);
        double a = to_double(h->a);
        double eps = pi / 2.0 - delta;
        double C = 0;
        for (size_t j = 0; j < h->btilde.size(); ++j) {
            if (h->btilde[j] == 0) continue;
            double X = R + static_cast<double>(j);
            double base = 2.004 * std::pow(2.0 * pi, -X) *
                          specfun::riemann_zeta(Complex(1.0 + X, 0)).real();
            for (int p = 0; p < peel; ++p) base += gamma_line_bound(R) * std::pow(alpha - peel + p, X);
            // sup_{y>=1} (R+j+1+y)^j e^{-delta y}
            double jj = static_cast<double>(j);
            double ystar = std::max(1.0, jj / delta - (X + 1.0));
            double sup = std::exp(jj * std::log(X + 1.0 + ystar) - delta * ystar);
            C += std::abs(to_double(h->btilde[j])) * std::pow(a, R) * base * sup;
        }
        return std::make_pair(C, eps);
    }
    if (auto* e = std::get_if<ExponentialClass>(&impl->payload)) {
        double X = std::pow(e->q, -e->r * (R + to_double(e->c)));
        if (X <= 1.0 + 1e-9) return std::nullopt;
        double phat = 0, xp = 1;
        for (auto& coeff : e->ptilde) {
            phat += std::abs(to_double(coeff)) * xp;
            xp *= X;
        }
        double C = gamma_line_bound(R) * std::pow(to_double(e->sigma), R) * phat /
                   std::pow(X - 1.0, e->m + 1);
        return std::make_pair(C, pi / 2.0);
    }
    return std::nullopt;
}

std::vector<PoleDatum> ContinuationData::poles_in(const Region& r) const {
    std::vector<CancellationRecord> scratch;
    std::vector<PoleDatum> poles;
    if (auto* h = std::get_if<HurwitzClass>(&impl->payload)) poles = hurwitz_class_poles(*h, r, scratch);
    else if (auto* b = std::get_if<BinomialClass>(&impl->payload)) poles = binomial_class_poles(*b, r, scratch);
    else poles = exp_class_poles(std::get<ExponentialClass>(impl->payload), r, scratch);
    sort_poles(poles);
    return poles;
}

// ------------------------------------------------------------------
// construction
// ------------------------------------------------------------------

namespace {

// try A = lead*(x+alpha)^G + beta exactly
bool equal_power_split(const Poly& a, Rational& alpha, Rational& beta) {
    int g = a.degree();
    if (g < 1) return false;
    alpha = a.coeff(g - 1) / (Rational(g) * a.leading());
    Poly pw = Poly({alpha, Rational(1)});
    Poly power = Poly::constant(1);
    for (int i = 0; i < g; ++i) power = power * pw;
    Poly diff = a - power * a.leading();
    if (diff.degree() > 0) return false;
    beta = diff.is_zero() ? Rational(0) : diff.coeff(0);
    return true;
}

ContinuationData finish(ClassTag tag, int depth, double validity, double abscissa, const Region& region,
                        std::variant<HurwitzClass, BinomialClass, ExponentialClass> payload,
                        std::vector<std::pair<double, double>> head, double exp_shift) {
    ContinuationData data;
    data.class_tag = tag;
    data.depth = depth;
    data.validity_re = validity;
    data.abscissa = abscissa;
    data.region = region;
    data.entire_head = std::move(head);
    data.exp_shift = exp_shift;
    auto impl = std::make_shared<ContinuationImpl>();
    impl->payload = std::move(payload);
    data.impl = impl;
    if (auto* h = std::get_if<HurwitzClass>(&impl->payload)) data.z_poles = hurwitz_class_poles(*h, region, data.cancelled);
    else if (auto* b = std::get_if<BinomialClass>(&impl->payload)) data.z_poles = binomial_class_poles(*b, region, data.cancelled);
    else data.z_poles = exp_class_poles(std::get<ExponentialClass>(impl->payload), region, data.cancelled);
    sort_poles(data.z_poles);
    // numeric-cauchy placeholders get their principal parts from the probe
    for (auto& p : data.z_poles)
        if (p.principal.empty()) p = laurent_at(data, p.location, p.order);
    return data;
}

ContinuationData build_polynomial(const SpectrumSpec& spec, const Region& region, int depth) {
    auto eff = effective_polynomials(spec);
    const Poly& A = eff.a;
    const Poly& B = eff.b;
    int g = A.degree();
    double L = static_cast<double>(1 + B.degree()) / g;

    Rational alpha, beta;
    if (equal_power_split(A, alpha, beta)) {
        Rational a = A.leading();
        // even-power reduction: beta split off, alpha folded to {1/2, 1}
        bool half_grid = denominator(Rational(2) * alpha) == 1;
        std::vector<Rational> btilde = B.expand_in(alpha);
        bool even_b = true;
        for (size_t j = 1; j < btilde.size(); j += 2) even_b = even_b && btilde[j] == 0;
        if (g % 2 == 0 && half_grid && even_b) {
            bool is_half = denominator(alpha) == 2;
            Rational abar = is_half ? Rational(1, 2) : Rational(1);
            // base grid w in abar + N versus original grid w in alpha + N
            long base_start = is_half ? 0 : 1;
            long orig_start = is_half ? static_cast<long>(to_double(alpha - Rational(1, 2)))
                                      : static_cast<long>(to_double(alpha));
            std::vector<std::pair<double, double>> head;
            Poly bpoly(btilde); // multiplicity as polynomial in w
            auto w_of = [&](long idx) { return is_half ? Rational(2 * idx + 1, 2) : Rational(idx); };
            if (orig_start > base_start) {
                for (long idx = base_start; idx < orig_start; ++idx) {
                    Rational w = w_of(idx);
                    Rational lam = a;
                    for (int i = 0; i < g; ++i) lam *= w;
                    head.emplace_back(to_double(lam + beta), -to_double(bpoly(w)));
                }
            } else if (orig_start < base_start) {
                for (long idx = orig_start; idx < base_start; ++idx) {
                    Rational w = w_of(idx);
                    Rational lam = a;
                    for (int i = 0; i < g; ++i) lam *= w;
                    head.emplace_back(to_double(lam + beta), to_double(bpoly(w)));
                }
            }
            // drop zero-multiplicity head entries
            std::erase_if(head, [](auto& e) { return e.second == 0.0; });
            HurwitzClass h;
            h.a = a;
            h.G = static_cast<unsigned>(g);
            h.alpha = abar;
            h.btilde = btilde; // already expressed in powers of w
            h.beta = beta;
            return finish(ClassTag::even_power_a, depth, std::numeric_limits<double>::infinity(), L, region, h,
                          std::move(head), to_double(beta));
        }
        if (beta == 0 && alpha > 0) {
            HurwitzClass h;
            h.a = a;
            h.G = static_cast<unsigned>(g);
            h.alpha = alpha;
            h.btilde = btilde;
            ClassTag tag = g == 1 ? ClassTag::linear_a : ClassTag::equal_roots_a;
            return finish(tag, depth, std::numeric_limits<double>::infinity(), L, region, h, {}, 0.0);
        }
    }

    // general polynomial: binomial reduction on the original index grid, after
    // a head start keeping |u| small (this also tames the vertical growth:
    // every head eigenvalue is a positive real, so the head is y-uniform)
    auto* ps = spec.as_polynomial();
    Poly A0 = (ps->a + Poly::constant(spec.shift)) * spec.scale;
    const Poly& B0 = ps->b;
    BinomialClass bc;
    bc.a_eff = A0;
    bc.b_eff = B0;
    bc.a_lead = A0.leading();
    bc.G = g;
    bc.depth = std::max(depth, 8);
    if (bc.depth > 160) fail(errc::depth_insufficient, "binomial reduction depth beyond practical range");
    long m0 = std::max<long>(ps->n_start, 1);
    auto u_of = [&](double m) { return A0(m) / (to_double(bc.a_lead) * std::pow(m, g)) - 1.0; };
    while (m0 < 100000 && std::abs(u_of(static_cast<double>(m0))) > 0.25) ++m0;
    if (std::abs(u_of(static_cast<double>(m0))) > 0.25)
        fail(errc::unsupported_class, "eigenvalue polynomial resists the binomial reduction");
    bc.m0 = m0;
    // u(m) = sum gamma_i m^{-i}
    std::vector<Rational> u(static_cast<size_t>(g) + 1, Rational(0));
    for (int i = 1; i <= g; ++i) u[static_cast<size_t>(i)] = A0.coeff(g - i) / bc.a_lead;
    int gb = B0.degree();
    size_t width = static_cast<size_t>(g) * bc.depth + gb + 1;
    std::vector<std::vector<Rational>> upow(bc.depth + 1);
    upow[0] = {Rational(1)};
    for (int j = 1; j <= bc.depth; ++j) {
        upow[j].assign(std::min<size_t>(upow[j - 1].size() + g, width), Rational(0));
        for (size_t i = 0; i < upow[j - 1].size(); ++i)
            for (int t = 1; t <= g; ++t)
                if (i + t < upow[j].size() && upow[j - 1][i] != 0 && u[t] != 0)
                    upow[j][i + t] += upow[j - 1][i] * u[t];
    }
    bc.K.assign(bc.depth + 1, {});
    for (int j = 0; j <= bc.depth; ++j) {
        bc.K[j].assign(width, Rational(0));
        for (size_t i = 0; i < upow[j].size(); ++i) {
            if (upow[j][i] == 0) continue;
            for (int l = 0; l <= gb; ++l) {
                if (B0.coeff(l) == 0) continue;
                long o = static_cast<long>(i) - l;
                bc.K[j][static_cast<size_t>(o + gb)] += upow[j][i] * B0.coeff(l);
            }
        }
    }
    std::vector<std::pair<double, double>> head;
    for (long m = ps->n_start; m < m0; ++m)
        head.emplace_back(A0(static_cast<double>(m)), B0(static_cast<double>(m)));
    double validity = std::max(0.0, (static_cast<double>(bc.depth) - gb) / g - 0.75);
    return finish(ClassTag::binomial_reduced, bc.depth, validity, L, region, bc, std::move(head), 0.0);
}

ContinuationData build_exponential(const SpectrumSpec& spec, const Region& region, int depth) {
    auto* es = spec.as_exponential();
    if (spec.shift != 0)
        fail(errc::unsupported_class, "exponential spectra with an additive shift have no closed continuation here");
    ExponentialClass ec;
    ec.q = es->q;
    ec.q_exact = es->q_exact;
    ec.r = es->power_r;
    ec.c = es->mult_power;
    ec.m = std::max(es->p.degree(), 0);
    ec.sigma = spec.scale;
    // ptilde(x) = sum_j p_j (1-x)^{m-j} E_j(x), E_j(x) = sum_k <j k> x^{j-k}
    Poly one_minus_x({Rational(1), Rational(-1)});
    Poly acc;
    for (int j = 0; j <= ec.m; ++j) {
        if (es->p.coeff(j) == 0) continue;
        Poly ej;
        if (j == 0) ej = Poly::constant(1);
        else {
            std::vector<Rational> c(static_cast<size_t>(j) + 1, Rational(0));
            for (int k = 0; k < j; ++k) c[static_cast<size_t>(j - k)] = Rational(specfun::eulerian_number(j, k));
            ej = Poly(std::move(c));
        }
        Poly pw = Poly::constant(1);
        for (int i = 0; i < ec.m - j; ++i) pw = pw * one_minus_x;
        acc = acc + pw * ej * es->p.coeff(j);
    }
    ec.ptilde = acc.coeffs();
    if (ec.ptilde.empty()) fail(errc::malformed_spec, "zero multiplicity polynomial");
    return finish(ClassTag::exponential_q, depth, std::numeric_limits<double>::infinity(),
                  to_double(es->mult_power), region, ec, {}, 0.0);
}

} // namespace

ContinuationData continue_zeta(const SpectrumSpec& spec, const Region& region, int depth) {
    if (spec.as_polynomial()) return build_polynomial(spec, region, depth);
    if (spec.as_exponential()) return build_exponential(spec, region, depth);
    fail(errc::unsupported_class, "explicit spectra carry no supported continuation class");
}

ContinuationData truncated_zeta(const SpectrumSpec& spec, long N, const Region& region, int depth) {
    if (N < 1) fail(errc::domain_error, "truncation index must be at least 1");
    return continue_zeta(shift_index(spec, N), region, depth);
}

PoleDatum laurent_at(const ContinuationData& data, Complex s0, int order_hint) {
    for (const auto& p : data.z_poles)
        if (std::abs(p.location - s0) < 1e-9 && !p.principal.empty()) return p;

    // distance to other singularities: stored poles plus the Gamma lattice
    double dist = 1e9;
    for (const auto& p : data.z_poles) {
        double d = std::abs(p.location - s0);
        if (d > 1e-9) dist = std::min(dist, d);
    }
    for (long n = 0; n < 200; ++n) {
        double d = std::abs(s0 - Complex(-static_cast<double>(n), 0));
        if (d > 1e-9) dist = std::min(dist, d);
    }
    double radius = 0.5 * std::min(dist, 1.0);
    if (radius < 1e-3) fail(errc::radius_too_small, "pole cluster too tight for a contour probe");

    auto contour = [&](int nodes, std::vector<Complex>& out) {
        out.assign(order_hint, Complex(0));
        for (int t = 0; t < nodes; ++t) {
            double th = 2.0 * pi * t / nodes;
            Complex w = std::polar(radius, th);
            Complex z = specfun::gamma(s0 + w) * data.zeta(s0 + w);
            // b_{-k} = (1/2pi i) \oint Z(s) (s-s0)^{k-1} ds = (1/nodes) sum Z w^k
            Complex wk = w;
            for (int k = 0; k < order_hint; ++k) {
                out[k] += z * wk;
                wk *= w;
            }
        }
        for (auto& x : out) x /= nodes;
    };
    std::vector<Complex> c256, c512;
    contour(256, c256);
    contour(512, c512);
    double err = 0, scale = 0;
    for (int k = 0; k < order_hint; ++k) {
        err = std::max(err, std::abs(c256[k] - c512[k]));
        scale = std::max(scale, std::abs(c512[k]));
    }
    // circle magnitude as the not-a-pole yardstick and evaluator-noise floor
    double zmag = std::abs(specfun::gamma(s0 + radius) * data.zeta(s0 + radius));
    if (scale < 1e-10 * (zmag + 1e-30) * radius)
        fail(errc::not_a_pole, "no principal part detected at the probe point");
    err = std::max(err, 3e-12 * zmag * radius);

    PoleDatum p;
    p.location = s0;
    int order = order_hint;
    while (order > 1 && std::abs(c512[order - 1]) < 1e-9 * scale) --order;
    p.order = order;
    p.principal.assign(c512.begin(), c512.begin() + order);
    p.provenance = Provenance::numeric_cauchy;
    p.err_est = err;
    return p;
}

} // namespace heattrace
