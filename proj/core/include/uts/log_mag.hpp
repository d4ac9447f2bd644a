#ifndef UTS_LOG_MAG_HPP
#define UTS_LOG_MAG_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <complex>
#include <limits>
#include <span>
#include <vector>

#include "uts/errors.hpp"

namespace uts {

// Magnitude stored as its natural log.  -inf encodes magnitude 0.
// Adding the stored logs multiplies magnitudes; log-sum-exp adds them.
// Quantities like ||S||_{|z|=3^k} live far outside double range, so every
// norm and bound in this library is carried as a LogMag.
struct LogMag {
    double log = -std::numeric_limits<double>::infinity();

    LogMag() = default;

    static LogMag from_log(double ln_value) { return LogMag{ln_value}; }

    static LogMag zero() { return LogMag{}; }

    static LogMag of(double magnitude) {
        if (!(magnitude >= 0.0))
            throw ConfigError("LogMag::of: magnitude must be >= 0");
        return LogMag{std::log(magnitude)};
    }

    static LogMag of(std::complex<double> z) { return LogMag{std::log(std::abs(z))}; }

    bool is_zero() const { return std::isinf(log) && log < 0; }

    // exp(log); overflows to +inf past ~709, which callers print as "inf"
    double linear() const { return std::exp(log); }

    friend auto operator<=>(LogMag a, LogMag b) { return a.log <=> b.log; }
    friend bool operator==(LogMag a, LogMag b) { return a.log == b.log; }

  private:
    explicit LogMag(double v) : log(v) {}
};

// |x| * |y|
inline LogMag log_mul(LogMag a, LogMag b) {
    if (a.is_zero() || b.is_zero()) return LogMag::zero();
    return LogMag::from_log(a.log + b.log);
}

// |x|^t, t >= 0
inline LogMag log_pow(LogMag a, double t) {
    if (t == 0.0) return LogMag::from_log(0.0);
    if (a.is_zero()) return LogMag::zero();
    return LogMag::from_log(a.log * t);
}

// |x| + |y| via log-sum-exp; never overflows for LogMag-representable inputs
inline LogMag log_add(LogMag a, LogMag b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    double hi = std::max(a.log, b.log);
    double lo = std::min(a.log, b.log);
    return LogMag::from_log(hi + std::log1p(std::exp(lo - hi)));
}

// sum of magnitudes over a range
inline LogMag log_sum(std::span<const LogMag> values) {
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& v : values) hi = std::max(hi, v.log);
    if (std::isinf(hi) && hi < 0) return LogMag::zero();
    double acc = 0.0;
    for (const auto& v : values) {
        if (!v.is_zero()) acc += std::exp(v.log - hi);
    }
    return LogMag::from_log(hi + std::log(acc));
}

inline LogMag log_max(std::span<const LogMag> values) {
    LogMag m = LogMag::zero();
    for (const auto& v : values) m = std::max(m, v);
    return m;
}

}  // namespace uts

#endif
