#ifndef UTS_DD_HPP
#define UTS_DD_HPP

#include <cmath>
#include <complex>

#include "uts/int128.hpp"

namespace uts {

// Double-double ("compensated") arithmetic: an unevaluated sum hi + lo with
// |lo| <= ulp(hi)/2, giving ~106 bits of precision.  Used where plain doubles
// lose the game: Taylor shifts (coefficient growth ~2^deg) and exact floors
// of polynomial values near 1e24.
struct DD {
    double hi = 0.0;
    double lo = 0.0;

    DD() = default;
    constexpr DD(double h) : hi(h), lo(0.0) {}
    constexpr DD(double h, double l) : hi(h), lo(l) {}

    double value() const { return hi + lo; }

    friend bool operator==(DD a, DD b) { return a.hi == b.hi && a.lo == b.lo; }
};

namespace detail {

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DD quick_two_sum(double a, double b) {
    // requires |a| >= |b|
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

}  // namespace detail

inline DD dd_add(DD a, DD b) {
    DD s = detail::two_sum(a.hi, b.hi);
    DD t = detail::two_sum(a.lo, b.lo);
    double lo = s.lo + t.hi;
    DD r = detail::quick_two_sum(s.hi, lo);
    lo = r.lo + t.lo;
    return detail::quick_two_sum(r.hi, lo);
}

inline DD dd_add(DD a, double b) { return dd_add(a, DD(b)); }

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

inline DD dd_sub(DD a, DD b) { return dd_add(a, dd_neg(b)); }

inline DD dd_mul(DD a, DD b) {
    DD p = detail::two_prod(a.hi, b.hi);
    double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
    return detail::quick_two_sum(p.hi, lo);
}

inline DD dd_mul(DD a, double b) { return dd_mul(a, DD(b)); }

inline DD dd_div(DD a, DD b) {
    double q1 = a.hi / b.hi;
    DD r = dd_sub(a, dd_mul(b, q1));
    double q2 = r.hi / b.hi;
    r = dd_sub(r, dd_mul(b, q2));
    double q3 = r.hi / b.hi;
    DD q = detail::quick_two_sum(q1, q2);
    return dd_add(q, q3);
}

inline DD dd_sqrt(double x) {
    // one Newton step on top of the double sqrt
    double s = std::sqrt(x);
    if (s == 0.0 || !std::isfinite(s)) return DD(s);
    DD r = dd_sub(DD(x), dd_mul(DD(s), DD(s)));
    return dd_add(DD(s), r.hi / (2.0 * s));
}

inline bool dd_less(DD a, DD b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}

inline bool dd_less_equal(DD a, DD b) { return !dd_less(b, a); }

// Exact conversion for |v| < 2^106 or so; sequence values stay far below that.
inline DD dd_from_int128(Int128 v) {
    double hi = static_cast<double>(v);
    Int128 hi_i = static_cast<Int128>(hi);
    double lo = static_cast<double>(v - hi_i);
    return detail::quick_two_sum(hi, lo);
}

// floor of hi+lo as an Int128
inline Int128 dd_floor(DD a) {
    double fh = std::floor(a.hi);
    double frac = (a.hi - fh) + a.lo;  // in (-eps, 1+eps)
    Int128 base = static_cast<Int128>(fh);
    if (frac < 0.0) return base - 1;
    if (frac >= 1.0) return base + 1;
    return base;
}

// Horner evaluation of a real polynomial (ascending coefficients) at an
// integer point, in double-double.  Exact for the modest-degree integer
// polynomials the selectors use.
inline DD dd_poly_eval(const double* coeffs_ascending, std::size_t n, double x) {
    if (n == 0) return DD(0.0);
    DD acc(coeffs_ascending[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;) {
        acc = dd_add(dd_mul(acc, x), coeffs_ascending[i]);
    }
    return acc;
}

// Complex double-double, enough for compensated Horner loops.
struct DDComplex {
    DD re, im;

    DDComplex() = default;
    DDComplex(DD r, DD i) : re(r), im(i) {}
    DDComplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    std::complex<double> value() const { return {re.value(), im.value()}; }

    friend bool operator==(const DDComplex& a, const DDComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
};

inline DDComplex ddc_add(DDComplex a, DDComplex b) {
    return {dd_add(a.re, b.re), dd_add(a.im, b.im)};
}

inline DDComplex ddc_sub(DDComplex a, DDComplex b) {
    return {dd_sub(a.re, b.re), dd_sub(a.im, b.im)};
}

inline DDComplex ddc_mul(DDComplex a, DDComplex b) {
    DD re = dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im));
    DD im = dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re));
    return {re, im};
}

}  // namespace uts

#endif
