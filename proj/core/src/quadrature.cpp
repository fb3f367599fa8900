#include "heattrace/quadrature.hpp"

#include <cmath>

namespace heattrace {

namespace {

template <class V, class F>
V simpson(const F& f, double a, double fa_wt, const V& fa, const V& fm, const V& fb, double b) {
    (void)fa_wt;
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class V, class F>
V adapt(const F& f, double a, double b, const V& fa, const V& fm, const V& fb, const V& whole,
        double tol_abs, int depth) {
    double m = 0.5 * (a + b);
    V fl = f(0.5 * (a + m));
    V fr = f(0.5 * (m + b));
    V left = (m - a) / 6.0 * (fa + 4.0 * fl + fm);
    V right = (b - m) / 6.0 * (fm + 4.0 * fr + fb);
    V err = left + right - whole;
    if (depth <= 0 || std::abs(err) <= 15.0 * tol_abs)
        return left + right + err / 15.0;
    return adapt(f, a, m, fa, fl, fm, left, tol_abs / 2.0, depth - 1) +
           adapt(f, m, b, fm, fr, fb, right, tol_abs / 2.0, depth - 1);
}

template <class V, class F>
V integrate_impl(const F& f, double a, double b, double rel_tol, int max_depth) {
    V fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
    V whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double scale = std::abs(whole) + 1e-300;
    return adapt(f, a, b, fa, fm, fb, whole, rel_tol * scale, max_depth);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol, int max_depth) {
    return integrate_impl<double>(f, a, b, rel_tol, max_depth);
}

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f,
                                       double a, double b, double rel_tol, int max_depth) {
    return integrate_impl<std::complex<double>>(f, a, b, rel_tol, max_depth);
}

} // namespace heattrace
