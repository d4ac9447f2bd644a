#ifndef UTS_TAYLOR_POLY_HPP
#define UTS_TAYLOR_POLY_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "uts/log_mag.hpp"
#include "uts/qd.hpp"

namespace uts {

using Complex = std::complex<double>;

// A finite polynomial stored as Taylor coefficients around an explicit
// center: p(z) = sum a_nu (z - center)^nu.  Trailing zero coefficients are
// kept; a partial sum carries its formal truncation index as its length.
//
// Coefficients are held in compensated (quad-double) form.  A recentering
// round trip conditions like (1 + |shift|)^(2 deg); at degree 64 that is
// ~2^128, so plain doubles or even double-doubles between two shifts inject
// rounding noise far above the 1e-9 coefficientwise round-trip guarantee.
// Values parsed or supplied as plain doubles carry zero correction terms.
//
// Immutable after construction; every operation below is a pure function.
struct TaylorPoly {
    Complex center{0.0, 0.0};
    std::vector<QDComplex> coeffs;  // a_0 .. a_d, never empty

    TaylorPoly();
    TaylorPoly(Complex center, std::vector<Complex> coeffs);
    static TaylorPoly compensated(Complex center, std::vector<QDComplex> coeffs);

    std::int64_t degree_bound() const { return std::int64_t(coeffs.size()) - 1; }

    // the nu-th coefficient rounded to a plain complex double
    Complex coeff(std::int64_t nu) const { return coeffs[std::size_t(nu)].value(); }

    static TaylorPoly constant(Complex value, Complex center = {0.0, 0.0});
    static TaylorPoly monomial(std::int64_t degree, Complex scale,
                               Complex center = {0.0, 0.0});
};

// Horner evaluation (compensated).
Complex eval(const TaylorPoly& p, Complex z);

// S_n(p, center): the first n+1 coefficients, zero-padded past the degree.
TaylorPoly partial_sum(const TaylorPoly& p, std::int64_t n);

// Same polynomial function re-expanded around new_center (Taylor shift by
// repeated synthetic division, O(d^2), compensated end to end).
TaylorPoly recenter(const TaylorPoly& p, Complex new_center);

// S_n(p, zeta) = partial_sum(recenter(p, zeta), n).
TaylorPoly partial_sum_at(const TaylorPoly& p, std::int64_t n, Complex zeta);

// Norms on the circle |z| = R (centered at the origin).  `sampled` is the
// max over m equispaced samples; `coeff_sum_bound` is the rigorous upper
// bound sum_nu |a_nu| R^nu.  Both are computed in log domain after
// rescaling by the largest term exponent, so radii like 3^k are safe.
struct CircleNorm {
    LogMag sampled;
    LogMag coeff_sum_bound;
};

// samples == 0 picks the default 4*deg + 64.
CircleNorm circle_norm(const TaylorPoly& p, double radius, std::int64_t samples = 0);

// ln(|a_nu|^(1/nu)); minus infinity when a_nu = 0.  Rejects nu = 0.
LogMag root_coeff_magnitude(const TaylorPoly& p, std::int64_t nu);

// all of |a_nu|^(1/nu) for nu = 1..deg; index 0 of the result is unused
// (set to magnitude 1 so it never dominates a max)
std::vector<LogMag> root_magnitudes(const TaylorPoly& p);

// Cauchy estimate on |a_nu|^(1/nu) from a circle norm at radius R:
//   (1/nu) * (norm_log - nu ln R),
// cross-checked against the regrouped form (lambda_q/nu)*(norm_log/lambda_q) - ln R.
LogMag cauchy_root_bound(LogMag norm, double radius, std::int64_t nu,
                         std::int64_t lambda_q);

}  // namespace uts

#endif
