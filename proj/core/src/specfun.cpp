#include "heattrace/specfun.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <vector>

namespace heattrace::specfun {

namespace {

constexpr double pi = std::numbers::pi;

std::mutex table_mutex;

std::vector<Rational>& bernoulli_table() {
    static std::vector<Rational> table{Rational(1), Rational(1, 2)};
    return table;
}

// sum_{k=0}^{n} binom(n+1,k) B+_k = n+1 (with B_1 = +1/2)
void extend_bernoulli(unsigned n) {
    auto& table = bernoulli_table();
    while (table.size() <= n) {
        unsigned m = static_cast<unsigned>(table.size());
        Rational acc(0);
        for (unsigned k = 0; k < m; ++k) acc += Rational(binomial_int(m + 1, k)) * table[k];
        table.push_back((Rational(m + 1) - acc) / Rational(binomial_int(m + 1, m)));
    }
}

} // namespace

const Rational& bernoulli_number(unsigned n) {
    std::lock_guard<std::mutex> lock(table_mutex);
    extend_bernoulli(n);
    return bernoulli_table()[n];
}

Rational bernoulli_number_classic(unsigned n) {
    Rational b = bernoulli_number(n);
    return n == 1 ? -b : b;
}

const Poly& bernoulli_polynomial_coeffs(unsigned n) {
    static std::vector<Poly> polys;
    std::lock_guard<std::mutex> lock(table_mutex);
    extend_bernoulli(n);
    while (polys.size() <= n) {
        unsigned m = static_cast<unsigned>(polys.size());
        std::vector<Rational> c(m + 1);
        for (unsigned k = 0; k <= m; ++k) {
            Rational b = bernoulli_table()[k];
            if (k == 1) b = -b; // classical convention inside polynomials
            c[m - k] = Rational(binomial_int(m, k)) * b;
        }
        polys.emplace_back(std::move(c));
    }
    return polys[n];
}

double bernoulli_polynomial(unsigned n, double x) { return bernoulli_polynomial_coeffs(n)(x); }

Rational bernoulli_polynomial_exact(unsigned n, const Rational& x) { return bernoulli_polynomial_coeffs(n)(x); }

const Int& eulerian_number(unsigned j, unsigned k) {
    static std::vector<std::vector<Int>> rows{{Int(1)}};
    static const Int zero(0);
    std::lock_guard<std::mutex> lock(table_mutex);
    while (rows.size() <= j) {
        unsigned m = static_cast<unsigned>(rows.size());
        std::vector<Int> row(m, Int(0));
        auto& prev = rows[m - 1];
        auto at = [&](unsigned i) { return i < prev.size() ? prev[i] : Int(0); };
        for (unsigned i = 0; i < m; ++i)
            row[i] = Int(i + 1) * at(i) + Int(m - i) * (i > 0 ? at(i - 1) : Int(0));
        rows.push_back(std::move(row));
    }
    const auto& row = rows[j];
    return k < row.size() ? row[k] : zero;
}

Rational gamma_residue(unsigned n) {
    Rational r(1, factorial_int(n));
    return n % 2 ? -r : r;
}

Complex log_sin(Complex z) {
    double v = z.imag();
    if (v > 18.0) {
        // sin z = e^{-iz} (e^{2iz} - 1) / (2i)
        Complex e = std::exp(Complex(0, 2) * z); // |e| = e^{-2v}, tiny
        return Complex(0, -1) * z - std::log(Complex(0, 2)) + std::log(Complex(1) - e) + Complex(0, pi);
    }
    if (v < -18.0) return std::conj(log_sin(std::conj(z)));
    return std::log(std::sin(z));
}

namespace {

// Stirling series after shifting |w| >= 16; Bernoulli terms through B_24.
Complex log_gamma_stirling(Complex w) {
    static const double coef[] = {
        1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680, 1.0 / 1188,
        -691.0 / 360360, 1.0 / 156, -3617.0 / 122400, 43867.0 / 244188,
        -174611.0 / 125400, 77683.0 / 5796, -236364091.0 / 1506960,
    };
    Complex acc = (w - 0.5) * std::log(w) - w + 0.5 * std::log(2 * pi);
    Complex winv2 = 1.0 / (w * w);
    Complex p = 1.0 / w;
    for (double c : coef) {
        acc += c * p;
        p *= winv2;
    }
    return acc;
}

} // namespace

Complex log_gamma(Complex z) {
    if (z.real() < 0.5) {
        // reflection: log pi - log sin(pi z) - log Gamma(1 - z)
        return std::log(Complex(pi)) - log_sin(pi * z) - log_gamma(Complex(1) - z);
    }
    Complex shift = 0;
    while (std::abs(z) < 16.0) {
        shift += std::log(z);
        z += 1.0;
    }
    return log_gamma_stirling(z) - shift;
}

Complex gamma(Complex s) {
    if (s.imag() == 0.0) return Complex(gamma(s.real()));
    return std::exp(log_gamma(s));
}

double gamma(double s) {
    if (s <= 0.0 && s == std::floor(s))
        fail(errc::pole_at, "Gamma pole at s = " + std::to_string(static_cast<long>(s)));
    return std::tgamma(s);
}

namespace {

// Euler-Maclaurin core shared by the Riemann and Hurwitz paths.
Complex hurwitz_em(Complex s, double alpha) {
    double abs_s = std::abs(s);
    long head = static_cast<long>(std::max({15.0, std::abs(s.imag()) / 2.0, 0.9 * abs_s + 8.0}));
    for (int attempt = 0; attempt < 3; ++attempt) {
        Complex acc = 0;
        for (long k = 0; k < head; ++k) acc += std::exp(-s * std::log(alpha + static_cast<double>(k)));
        double base = alpha + static_cast<double>(head);
        double logb = std::log(base);
        Complex bs = std::exp(-s * logb); // base^{-s}
        acc += bs * base / (s - 1.0);
        acc += 0.5 * bs;

        // correction terms: T_j = B_{2j}/(2j)! * s(s+1)...(s+2j-2) * base^{-s-2j+1}
        Complex term = (1.0 / 12.0) * s * bs / base;
        Complex acc_corr = term;
        bool converged = false;
        double prev_mag = std::abs(term);
        for (unsigned j = 2; j <= 60; ++j) {
            double bratio = to_double(bernoulli_number(2 * j) / bernoulli_number(2 * j - 2));
            term *= (s + static_cast<double>(2 * j - 3)) * (s + static_cast<double>(2 * j - 2));
            term *= bratio / (static_cast<double>(2 * j) * static_cast<double>(2 * j - 1) * base * base);
            double mag = std::abs(term);
            acc_corr += term;
            if (mag < 1e-18 * (std::abs(acc + acc_corr) + 1e-300)) {
                converged = true;
                break;
            }
            if (mag > prev_mag && j > 6) break; // divergence onset, raise the head
            prev_mag = mag;
        }
        if (converged) return acc + acc_corr;
        head *= 2;
    }
    fail(errc::tol_error, "Euler-Maclaurin did not converge for Hurwitz zeta");
}

bool is_nonpositive_int(Complex s, long& n) {
    if (s.imag() != 0.0) return false;
    double r = s.real();
    if (r > 0.0 || r != std::floor(r)) return false;
    n = static_cast<long>(-r);
    return true;
}

// sum_{n>=1} e^{2 pi i n a} n^{-w}, Re(w) > 1 comfortably
Complex periodic_zeta(double a, Complex w) {
    Complex acc = 0;
    for (unsigned n = 1; n < 4096; ++n) {
        Complex term = std::exp(Complex(0, 2 * pi * n * a)) * std::exp(-w * std::log(static_cast<double>(n)));
        acc += term;
        if (std::abs(term) < 1e-18 * (std::abs(acc) + 1e-300) && n >= 6) return acc;
    }
    fail(errc::tol_error, "periodic zeta sum not converged");
}

// Hurwitz functional equation, numerically stable far left where the
// defining-series cancellation ruins Euler-Maclaurin in binary64.
Complex hurwitz_fe(Complex s, double alpha) {
    // peel the integer part: zeta_H(s, a) = zeta_H(s, a-1) - (a-1)^{-s}
    Complex corr = 0;
    while (alpha > 1.0) {
        alpha -= 1.0;
        corr -= std::exp(-s * std::log(alpha));
    }
    Complex w = Complex(1.0) - s;
    Complex base = log_gamma(w) - w * std::log(2 * pi);
    Complex f_minus = std::exp(base - Complex(0, pi / 2) * w);
    Complex f_plus = std::exp(base + Complex(0, pi / 2) * w);
    return corr + f_minus * periodic_zeta(alpha, w) + f_plus * periodic_zeta(-alpha, w);
}

} // namespace

Rational riemann_zeta_neg_int(unsigned n) {
    return -bernoulli_number(n + 1) / Rational(n + 1);
}

Rational hurwitz_zeta_neg_int(unsigned n, const Rational& alpha) {
    return -bernoulli_polynomial_exact(n + 1, alpha) / Rational(n + 1);
}

Complex riemann_zeta(Complex s) {
    if (s == Complex(1.0)) fail(errc::pole_at, "zeta pole at s = 1");
    long n;
    if (is_nonpositive_int(s, n)) return Complex(to_double(riemann_zeta_neg_int(static_cast<unsigned>(n))));
    if (s.real() >= 0.5) return hurwitz_em(s, 1.0);
    // functional equation, assembled in log space so the huge factors cancel
    Complex w = Complex(1.0) - s;
    Complex log_chi = s * std::log(2.0) + (s - 1.0) * std::log(pi) + log_sin(pi * s / 2.0) + log_gamma(w);
    return std::exp(log_chi) * hurwitz_em(w, 1.0);
}

Complex hurwitz_zeta(Complex s, double alpha) {
    if (alpha <= 0.0) fail(errc::domain_error, "Hurwitz zeta requires alpha > 0");
    if (s == Complex(1.0)) fail(errc::pole_at, "Hurwitz zeta pole at s = 1");
    long n;
    if (is_nonpositive_int(s, n)) {
        // exact when alpha has a short rational form; EM otherwise
        double rounded = std::round(alpha * 3628800.0) / 3628800.0;
        if (rounded == alpha) {
            Rational a = parse_rational(std::to_string(static_cast<long long>(std::llround(alpha * 3628800.0))));
            a /= 3628800;
            return Complex(to_double(hurwitz_zeta_neg_int(static_cast<unsigned>(n), a)));
        }
    }
    // far left the defining series cancels catastrophically in binary64
    if (s.real() < -8.0) return hurwitz_fe(s, alpha);
    return hurwitz_em(s, alpha);
}

double theta3(double q) {
    if (q < 0.0 || q >= 1.0) fail(errc::domain_error, "theta3 requires q in [0,1)");
    double acc = 1.0;
    double qn = 1.0;
    for (unsigned n = 1; n < 4096; ++n) {
        qn = std::pow(q, static_cast<double>(n) * n);
        if (qn < 1e-18) break;
        acc += 2.0 * qn;
    }
    if (qn >= 1e-18) fail(errc::tol_error, "theta3 truncation not certified");
    return acc;
}

double theta4(double q) {
    if (q < 0.0 || q >= 1.0) fail(errc::domain_error, "theta4 requires q in [0,1)");
    double acc = 1.0;
    double qn = 1.0;
    double sign = -1.0;
    for (unsigned n = 1; n < 4096; ++n) {
        qn = std::pow(q, static_cast<double>(n) * n);
        if (qn < 1e-18) break;
        acc += 2.0 * sign * qn;
        sign = -sign;
    }
    if (qn >= 1e-18) fail(errc::tol_error, "theta4 truncation not certified");
    return acc;
}

} // namespace heattrace::specfun
