#include "uts/taylor_poly.hpp"

#include <cmath>

#include "uts/errors.hpp"

namespace uts {

namespace {

void validate_coeffs(const std::vector<QDComplex>& coeffs) {
    if (coeffs.empty())
        throw ConfigError("TaylorPoly: coefficient list must be non-empty");
    for (const auto& c : coeffs) {
        if (!std::isfinite(c.re.x0) || !std::isfinite(c.im.x0) ||
            !std::isfinite(c.re.x3) || !std::isfinite(c.im.x3))
            throw ConfigError("TaylorPoly: coefficients must be finite");
    }
}

}  // namespace

TaylorPoly::TaylorPoly() : coeffs{QDComplex(Complex{0.0, 0.0})} {}

TaylorPoly::TaylorPoly(Complex center, std::vector<Complex> plain)
    : center(center) {
    coeffs.reserve(plain.size());
    for (const auto& c : plain) coeffs.emplace_back(c);
    validate_coeffs(coeffs);
}

TaylorPoly TaylorPoly::compensated(Complex center, std::vector<QDComplex> coeffs) {
    TaylorPoly p;
    p.center = center;
    p.coeffs = std::move(coeffs);
    validate_coeffs(p.coeffs);
    return p;
}

TaylorPoly TaylorPoly::constant(Complex value, Complex center) {
    return TaylorPoly(center, std::vector<Complex>{value});
}

TaylorPoly TaylorPoly::monomial(std::int64_t degree, Complex scale, Complex center) {
    if (degree < 0) throw ConfigError("TaylorPoly::monomial: degree must be >= 0");
    std::vector<Complex> c(std::size_t(degree) + 1, Complex{0.0, 0.0});
    c.back() = scale;
    return TaylorPoly(center, std::move(c));
}

Complex eval(const TaylorPoly& p, Complex z) {
    const Complex w = z - p.center;
    QDComplex acc = p.coeffs.back();
    for (std::size_t i = p.coeffs.size() - 1; i-- > 0;) {
        acc = qdc_horner_step(acc, w, p.coeffs[i]);
    }
    return acc.value();
}

TaylorPoly partial_sum(const TaylorPoly& p, std::int64_t n) {
    if (n < 0) throw ConfigError("partial_sum: n must be >= 0");
    std::vector<QDComplex> c(std::size_t(n) + 1, QDComplex(Complex{0.0, 0.0}));
    const std::size_t keep = std::min(c.size(), p.coeffs.size());
    for (std::size_t i = 0; i < keep; ++i) c[i] = p.coeffs[i];
    return TaylorPoly::compensated(p.center, std::move(c));
}

TaylorPoly recenter(const TaylorPoly& p, Complex new_center) {
    if (!std::isfinite(new_center.real()) || !std::isfinite(new_center.imag()))
        throw ConfigError("recenter: new center must be finite");
    if (new_center == p.center) return p;

    const Complex shift = new_center - p.center;
    const std::size_t n = p.coeffs.size();
    std::vector<QDComplex> a = p.coeffs;

    // repeated synthetic division by (u - shift)
    for (std::size_t j = 0; j + 1 < n; ++j) {
        for (std::size_t i = n - 1; i-- > j;) {
            a[i] = qdc_fma(a[i], shift, a[i + 1]);
        }
    }
    return TaylorPoly::compensated(new_center, std::move(a));
}

TaylorPoly partial_sum_at(const TaylorPoly& p, std::int64_t n, Complex zeta) {
    return partial_sum(recenter(p, zeta), n);
}

CircleNorm circle_norm(const TaylorPoly& p, double radius, std::int64_t samples) {
    if (!(radius > 0.0)) throw ConfigError("circle_norm: radius must be > 0");
    if (samples == 0) samples = 4 * p.degree_bound() + 64;
    if (samples < 4) throw ConfigError("circle_norm: need at least 4 samples");

    const TaylorPoly q = (p.center == Complex{0.0, 0.0}) ? p : recenter(p, {0.0, 0.0});
    const double ln_r = std::log(radius);
    const std::size_t n = q.coeffs.size();

    // term exponents t_nu = ln|a_nu| + nu ln R
    std::vector<LogMag> terms(n);
    double s = -std::numeric_limits<double>::infinity();
    for (std::size_t nu = 0; nu < n; ++nu) {
        LogMag m = LogMag::of(q.coeff(std::int64_t(nu)));
        terms[nu] = m.is_zero() ? m : LogMag::from_log(m.log + double(nu) * ln_r);
        s = std::max(s, terms[nu].log);
    }

    CircleNorm result;
    result.coeff_sum_bound = log_sum(terms);
    if (std::isinf(s) && s < 0) {
        // zero polynomial
        result.sampled = LogMag::zero();
        return result;
    }

    // rescale so the largest term has unit magnitude, then sample the unit circle
    std::vector<DDComplex> scaled(n, DDComplex(Complex{0.0, 0.0}));
    for (std::size_t nu = 0; nu < n; ++nu) {
        if (terms[nu].is_zero()) continue;
        const double mag = std::exp(terms[nu].log - s);
        const double phase = std::arg(q.coeff(std::int64_t(nu)));
        scaled[nu] = DDComplex(std::polar(mag, phase));
    }

    double best = -std::numeric_limits<double>::infinity();
    const double step = 2.0 * std::acos(-1.0) / double(samples);
    for (std::int64_t j = 0; j < samples; ++j) {
        const double theta = step * double(j);
        const DDComplex w(Complex{std::cos(theta), std::sin(theta)});
        DDComplex acc = scaled[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) {
            acc = ddc_add(ddc_mul(acc, w), scaled[i]);
        }
        best = std::max(best, std::log(std::abs(acc.value())));
    }
    result.sampled = LogMag::from_log(best + s);
    return result;
}

LogMag root_coeff_magnitude(const TaylorPoly& p, std::int64_t nu) {
    if (nu < 1) throw ConfigError("root_coeff_magnitude: nu must be >= 1");
    if (nu > p.degree_bound())
        throw ConfigError("root_coeff_magnitude: nu exceeds degree bound");
    LogMag m = LogMag::of(p.coeff(nu));
    if (m.is_zero()) return m;
    return LogMag::from_log(m.log / double(nu));
}

std::vector<LogMag> root_magnitudes(const TaylorPoly& p) {
    std::vector<LogMag> out(p.coeffs.size(), LogMag::from_log(0.0));
    for (std::int64_t nu = 1; nu <= p.degree_bound(); ++nu)
        out[std::size_t(nu)] = root_coeff_magnitude(p, nu);
    return out;
}

LogMag cauchy_root_bound(LogMag norm, double radius, std::int64_t nu,
                         std::int64_t lambda_q) {
    if (!(radius > 0.0)) throw ConfigError("cauchy_root_bound: radius must be > 0");
    if (nu < 1) throw ConfigError("cauchy_root_bound: nu must be >= 1");
    if (nu > lambda_q)
        throw ConfigError("cauchy_root_bound: nu must not exceed lambda_q");
    if (norm.is_zero()) return LogMag::zero();

    const double ln_r = std::log(radius);
    const double direct = norm.log / double(nu) - ln_r;
    const double regrouped =
        (double(lambda_q) / double(nu)) * (norm.log / double(lambda_q)) - ln_r;
    if (std::abs(direct - regrouped) > 1e-12 * std::max(1.0, std::abs(direct)))
        throw NumericalError("cauchy_root_bound: algebraic forms disagree");
    return LogMag::from_log(direct);
}

}  // namespace uts
