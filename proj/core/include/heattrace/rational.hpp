#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "heattrace/errors.hpp"

namespace heattrace {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

Int binomial_int(unsigned n, unsigned k);
Int factorial_int(unsigned n);

/// Parse "p/q", an integer, or a plain decimal ("-0.25") into an exact rational.
Rational parse_rational(std::string_view text);
std::string rational_string(const Rational& r);

/// Dense univariate polynomial with exact rational coefficients, ascending degree.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly constant(const Rational& v) { return Poly({v}); }
    static Poly monomial(unsigned deg, const Rational& v);

    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero poly
    bool is_zero() const { return c_.empty(); }
    const Rational& coeff(unsigned k) const;
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& leading() const;

    Rational operator()(const Rational& x) const;
    double operator()(double x) const;
    std::complex<double> operator()(std::complex<double> x) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rational& v) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }

    Poly derivative() const;
    /// P(x + r), exact Taylor shift.
    Poly shifted_arg(const Rational& r) const;
    /// Coefficients of P re-expanded in powers of (x + r); index j holds the (x+r)^j coefficient.
    std::vector<Rational> expand_in(const Rational& r) const { return shifted_arg(-r).coeffs_padded(); }

    std::string str(const std::string& var = "n") const;

private:
    std::vector<Rational> coeffs_padded() const {
        std::vector<Rational> v = c_;
        if (v.empty()) v.push_back(Rational(0));
        return v;
    }
    void trim();
    std::vector<Rational> c_;
};

} // namespace heattrace
