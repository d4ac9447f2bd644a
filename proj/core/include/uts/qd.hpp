#ifndef UTS_QD_HPP
#define UTS_QD_HPP

#include <complex>

#include "uts/dd.hpp"

namespace uts {

// Quad-double: an unevaluated, non-overlapping sum of four doubles
// (~212 bits).  Taylor shifts condition like (1 + |shift|)^(2 deg) on a
// round trip; at degree 64 that eats ~128 bits, so double-double is not
// enough for the 1e-9 coefficientwise round-trip guarantee and the shift
// pipeline carries quad-double coefficients instead.  Only the handful of
// operations the shift needs are implemented.
struct QD {
    double x0 = 0.0, x1 = 0.0, x2 = 0.0, x3 = 0.0;

    QD() = default;
    constexpr QD(double v) : x0(v) {}
    constexpr QD(double a, double b, double c, double d)
        : x0(a), x1(b), x2(c), x3(d) {}
    QD(DD v) : x0(v.hi), x1(v.lo) {}

    double value() const { return x0 + x1 + x2 + x3; }
    DD dd() const {
        return detail::quick_two_sum(x0, x1 + (x2 + x3));
    }

    friend bool operator==(const QD& a, const QD& b) {
        return a.x0 == b.x0 && a.x1 == b.x1 && a.x2 == b.x2 && a.x3 == b.x3;
    }
};

namespace detail {

// a+b+c -> (sum, err1, err2)
inline void three_sum(double& a, double& b, double& c) {
    DD t1 = two_sum(a, b);
    DD t2 = two_sum(c, t1.hi);
    a = t2.hi;
    DD t3 = two_sum(t1.lo, t2.lo);
    b = t3.hi;
    c = t3.lo;
}

// a+b+c -> (sum, err); the two error terms folded
inline void three_sum2(double& a, double& b, double c) {
    DD t1 = two_sum(a, b);
    DD t2 = two_sum(c, t1.hi);
    a = t2.hi;
    b = t1.lo + t2.lo;
}

inline QD renorm5(double c0, double c1, double c2, double c3, double c4) {
    double s0, s1, s2 = 0.0, s3 = 0.0;
    DD t;

    t = quick_two_sum(c3, c4);
    double s = t.hi;
    c4 = t.lo;
    t = quick_two_sum(c2, s);
    s = t.hi;
    c3 = t.lo;
    t = quick_two_sum(c1, s);
    s = t.hi;
    c2 = t.lo;
    t = quick_two_sum(c0, s);
    c0 = t.hi;
    c1 = t.lo;

    s0 = c0;
    s1 = c1;
    if (s1 != 0.0) {
        t = quick_two_sum(s1, c2);
        s1 = t.hi;
        s2 = t.lo;
        if (s2 != 0.0) {
            t = quick_two_sum(s2, c3);
            s2 = t.hi;
            s3 = t.lo;
            if (s3 != 0.0)
                s3 += c4;
            else {
                t = quick_two_sum(s2, c4);
                s2 = t.hi;
                s3 = t.lo;
            }
        } else {
            t = quick_two_sum(s1, c3);
            s1 = t.hi;
            s2 = t.lo;
            if (s2 != 0.0) {
                t = quick_two_sum(s2, c4);
                s2 = t.hi;
                s3 = t.lo;
            } else {
                t = quick_two_sum(s1, c4);
                s1 = t.hi;
                s2 = t.lo;
            }
        }
    } else {
        t = quick_two_sum(s0, c2);
        s0 = t.hi;
        s1 = t.lo;
        if (s1 != 0.0) {
            t = quick_two_sum(s1, c3);
            s1 = t.hi;
            s2 = t.lo;
            if (s2 != 0.0) {
                t = quick_two_sum(s2, c4);
                s2 = t.hi;
                s3 = t.lo;
            } else {
                t = quick_two_sum(s1, c4);
                s1 = t.hi;
                s2 = t.lo;
            }
        } else {
            t = quick_two_sum(s0, c3);
            s0 = t.hi;
            s1 = t.lo;
            if (s1 != 0.0) {
                t = quick_two_sum(s1, c4);
                s1 = t.hi;
                s2 = t.lo;
            } else {
                t = quick_two_sum(s0, c4);
                s0 = t.hi;
                s1 = t.lo;
            }
        }
    }
    return {s0, s1, s2, s3};
}

}  // namespace detail

inline QD qd_add(const QD& a, const QD& b) {
    using detail::three_sum;
    using detail::three_sum2;
    using detail::two_sum;
    DD t;
    double s0, s1, s2, s3, t0, t1, t2, t3;
    t = two_sum(a.x0, b.x0);
    s0 = t.hi;
    t0 = t.lo;
    t = two_sum(a.x1, b.x1);
    s1 = t.hi;
    t1 = t.lo;
    t = two_sum(a.x2, b.x2);
    s2 = t.hi;
    t2 = t.lo;
    t = two_sum(a.x3, b.x3);
    s3 = t.hi;
    t3 = t.lo;

    t = two_sum(s1, t0);
    s1 = t.hi;
    t0 = t.lo;
    three_sum(s2, t0, t1);
    three_sum2(s3, t0, t2);
    t0 = t0 + t1 + t3;
    return detail::renorm5(s0, s1, s2, s3, t0);
}

inline QD qd_neg(const QD& a) { return {-a.x0, -a.x1, -a.x2, -a.x3}; }

inline QD qd_sub(const QD& a, const QD& b) { return qd_add(a, qd_neg(b)); }

inline QD qd_mul(const QD& a, double b) {
    using detail::three_sum;
    using detail::three_sum2;
    using detail::two_prod;
    using detail::two_sum;
    DD t;
    double p0, p1, p2, p3, q0, q1, q2;
    t = two_prod(a.x0, b);
    p0 = t.hi;
    q0 = t.lo;
    t = two_prod(a.x1, b);
    p1 = t.hi;
    q1 = t.lo;
    t = two_prod(a.x2, b);
    p2 = t.hi;
    q2 = t.lo;
    p3 = a.x3 * b;

    double s0 = p0, s1, s2, s3, s4;
    t = two_sum(q0, p1);
    s1 = t.hi;
    s2 = t.lo;
    three_sum(s2, q1, p2);
    three_sum2(q1, q2, p3);
    s3 = q1;
    s4 = q2 + p2;
    return detail::renorm5(s0, s1, s2, s3, s4);
}

struct QDComplex {
    QD re, im;

    QDComplex() = default;
    QDComplex(QD r, QD i) : re(r), im(i) {}
    QDComplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    std::complex<double> value() const { return {re.value(), im.value()}; }
    DDComplex dd() const { return {re.dd(), im.dd()}; }

    friend bool operator==(const QDComplex& a, const QDComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
};

inline QDComplex qdc_add(const QDComplex& a, const QDComplex& b) {
    return {qd_add(a.re, b.re), qd_add(a.im, b.im)};
}

// a + h * b with a plain complex double factor h: the Taylor-shift kernel
inline QDComplex qdc_fma(const QDComplex& a, std::complex<double> h,
                         const QDComplex& b) {
    const QD re =
        qd_add(a.re, qd_sub(qd_mul(b.re, h.real()), qd_mul(b.im, h.imag())));
    const QD im =
        qd_add(a.im, qd_add(qd_mul(b.re, h.imag()), qd_mul(b.im, h.real())));
    return {re, im};
}

// Horner step acc = acc * w + c for complex-double w
inline QDComplex qdc_horner_step(const QDComplex& acc, std::complex<double> w,
                                 const QDComplex& c) {
    const QD re = qd_add(qd_sub(qd_mul(acc.re, w.real()), qd_mul(acc.im, w.imag())),
                         c.re);
    const QD im = qd_add(qd_add(qd_mul(acc.re, w.imag()), qd_mul(acc.im, w.real())),
                         c.im);
    return {re, im};
}

}  // namespace uts

#endif
