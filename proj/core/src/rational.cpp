#include "heattrace/rational.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace heattrace {

Int binomial_int(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    Int r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

Int factorial_int(unsigned n) {
    Int r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) fail(errc::malformed_spec, "empty number");

    auto is_int = [](const std::string& v) {
        if (v.empty()) return false;
        size_t i = (v[0] == '+' || v[0] == '-') ? 1 : 0;
        if (i == v.size()) return false;
        return std::all_of(v.begin() + i, v.end(), [](unsigned char c) { return std::isdigit(c); });
    };

    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) fail(errc::malformed_spec, "bad rational literal '" + s + "'");
        Int d(den);
        if (d == 0) fail(errc::malformed_spec, "zero denominator in '" + s + "'");
        return Rational(Int(num), d);
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string head = s.substr(0, dot), frac = s.substr(dot + 1);
        if (head.empty() || head == "+" || head == "-") head += "0";
        if (!is_int(head) || (!frac.empty() && !std::all_of(frac.begin(), frac.end(), [](unsigned char c) { return std::isdigit(c); })))
            fail(errc::malformed_spec, "bad decimal literal '" + s + "'");
        bool neg = head[0] == '-';
        Int ipart(head);
        Int scale = 1;
        Int fpart = 0;
        for (char c : frac) {
            scale *= 10;
            fpart = fpart * 10 + (c - '0');
        }
        Rational r = Rational(abs(ipart)) + Rational(fpart, scale);
        return neg ? -r : r;
    }
    if (!is_int(s)) fail(errc::malformed_spec, "bad integer literal '" + s + "'");
    return Rational(Int(s));
}

std::string rational_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

Poly Poly::monomial(unsigned deg, const Rational& v) {
    std::vector<Rational> c(deg + 1, Rational(0));
    c[deg] = v;
    return Poly(std::move(c));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& Poly::coeff(unsigned k) const {
    static const Rational zero(0);
    return k < c_.size() ? c_[k] : zero;
}

const Rational& Poly::leading() const {
    if (c_.empty()) fail(errc::malformed_spec, "leading coefficient of zero polynomial");
    return c_.back();
}

Rational Poly::operator()(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Poly::operator()(double x) const {
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

std::complex<double> Poly::operator()(std::complex<double> x) const {
    std::complex<double> acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rational> c(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
    return Poly(std::move(c));
}

Poly Poly::operator-(const Poly& o) const { return *this + o * Rational(-1); }

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rational> c(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(c));
}

Poly Poly::operator*(const Rational& v) const {
    std::vector<Rational> c = c_;
    for (auto& x : c) x *= v;
    return Poly(std::move(c));
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rational> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Poly(std::move(c));
}

Poly Poly::shifted_arg(const Rational& r) const {
    // Horner in (x + r): fold coefficients from the top.
    std::vector<Rational> acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        // acc = acc*(x+r) + coeff
        std::vector<Rational> next(acc.size() + 1, Rational(0));
        for (size_t i = 0; i < acc.size(); ++i) {
            next[i + 1] += acc[i];
            next[i] += acc[i] * r;
        }
        if (next.empty()) next.push_back(Rational(0));
        next[0] += *it;
        acc = std::move(next);
    }
    return Poly(std::move(acc));
}

std::string Poly::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& v = c_[k];
        if (v == 0) continue;
        if (!first) os << (v > 0 ? " + " : " - ");
        else if (v < 0) os << "-";
        Rational a = abs(v);
        if (a != 1 || k == 0) os << rational_string(a);
        if (k > 0) {
            if (a != 1) os << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    return os.str();
}

} // namespace heattrace
