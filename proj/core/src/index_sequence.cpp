#include "uts/index_sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "uts/dd.hpp"
#include "uts/errors.hpp"

namespace uts {

namespace {

// Exact log of floor-values is unavailable in general; ln(P(n)) from the
// double-double evaluation is accurate to ~1e-30 relative, plenty for every
// log-domain consumer here.
double ln_from_dd(DD v) {
    if (v.hi <= 0.0) throw NumericalError("log of non-positive sequence value");
    return std::log(v.hi) + std::log1p(v.lo / v.hi);
}

}  // namespace

IndexSequence IndexSequence::explicit_list(std::vector<std::int64_t> values) {
    if (values.empty()) throw ConfigError("IndexSequence: explicit list is empty");
    for (auto v : values)
        if (v < 1) throw ConfigError("IndexSequence: values must be >= 1");
    IndexSequence s;
    s.kind_ = Kind::Explicit;
    s.horizon_ = std::int64_t(values.size());
    s.values_ = std::move(values);
    return s;
}

IndexSequence IndexSequence::polynomial_floor(std::vector<double> coeffs,
                                              std::int64_t horizon) {
    while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
    if (coeffs.size() < 2)
        throw ConfigError("IndexSequence: polynomial must have degree >= 1");
    if (!(coeffs.back() > 0.0))
        throw ConfigError("IndexSequence: leading coefficient must be positive "
                          "(P(n) must tend to +inf)");
    if (horizon < 1) throw ConfigError("IndexSequence: horizon must be >= 1");

    IndexSequence s;
    s.kind_ = Kind::PolynomialFloor;
    s.horizon_ = horizon;
    s.poly_coeffs_ = std::move(coeffs);

    // onset: P' has all roots below 1 + max |c_i / c_d| (Cauchy bound), so P
    // is strictly increasing past that; then bump until floor(P) >= 1.
    const auto& c = s.poly_coeffs_;
    const std::size_t deg = c.size() - 1;
    double bound = 0.0;
    for (std::size_t i = 1; i < deg; ++i)
        bound = std::max(bound, std::abs(c[i] * double(i)) / (c[deg] * double(deg)));
    std::int64_t a = std::int64_t(std::ceil(bound)) + 1;
    a = std::max<std::int64_t>(a, 1);
    while (dd_floor(dd_poly_eval(c.data(), c.size(), double(a))) < 1) {
        ++a;
        if (a > s.horizon_)
            throw ConfigError("IndexSequence: P never reaches 1 within horizon");
    }
    s.onset_ = a;
    return s;
}

IndexSequence IndexSequence::geometric(std::int64_t first, double ratio, double theta,
                                       double bound_M, std::int64_t horizon) {
    if (first < 1) throw ConfigError("IndexSequence: first term must be >= 1");
    if (!(theta > 1.0)) throw ConfigError("IndexSequence: theta must exceed 1");
    if (!(bound_M > theta)) throw ConfigError("IndexSequence: need theta < M");
    if (!(ratio > theta && ratio < bound_M))
        throw ConfigError("IndexSequence: ratio must lie in (theta, M)");
    if (horizon < 1) throw ConfigError("IndexSequence: horizon must be >= 1");

    IndexSequence s;
    s.kind_ = Kind::Geometric;
    s.horizon_ = horizon;
    s.first_ = first;
    s.ratio_ = ratio;
    s.theta_ = theta;
    s.bound_M_ = bound_M;

    // ratio band check over the representable range
    std::optional<Int128> prev = s.value128(1);
    for (std::int64_t n = 2; n <= horizon; ++n) {
        auto cur = s.value128(n);
        if (!cur || !prev) break;
        const double r = to_double(*cur) / to_double(*prev);
        if (!(r > theta && r < bound_M))
            throw ConfigError("IndexSequence: materialized ratio " +
                              std::to_string(r) + " leaves (theta, M) at n = " +
                              std::to_string(n));
        prev = cur;
    }
    return s;
}

IndexSequence IndexSequence::factorial(std::int64_t horizon) {
    if (horizon < 1) throw ConfigError("IndexSequence: horizon must be >= 1");
    IndexSequence s;
    s.kind_ = Kind::Factorial;
    s.horizon_ = horizon;
    return s;
}

void IndexSequence::check_index(std::int64_t n) const {
    if (n < 1) throw ConfigError("IndexSequence: index must be >= 1");
    if (n > horizon_) throw ConfigError("IndexSequence: index " + std::to_string(n) +
                                        " beyond horizon " + std::to_string(horizon_));
    if (kind_ == Kind::PolynomialFloor && n < onset_)
        throw ConfigError("IndexSequence: index " + std::to_string(n) +
                          " below monotone onset " + std::to_string(onset_));
}

std::optional<Int128> IndexSequence::value128(std::int64_t n) const {
    check_index(n);
    switch (kind_) {
        case Kind::Explicit:
            return Int128(values_[std::size_t(n - 1)]);
        case Kind::PolynomialFloor: {
            DD v = dd_poly_eval(poly_coeffs_.data(), poly_coeffs_.size(), double(n));
            if (v.hi >= 1.5e38) return std::nullopt;
            Int128 f = dd_floor(v);
            if (f < 1) throw NumericalError("IndexSequence: floor(P(n)) < 1");
            return f;
        }
        case Kind::Geometric: {
            // integer ratios materialize exactly; otherwise round the
            // long-double product
            long double acc = (long double)first_;
            for (std::int64_t i = 1; i < n; ++i) {
                acc *= (long double)ratio_;
                if (acc >= 1.5e38L) return std::nullopt;
            }
            if (acc < 9.0e18L) return Int128(llroundl(acc));
            return Int128(floorl(acc + 0.5L));
        }
        case Kind::Factorial: {
            if (n > 33) return std::nullopt;  // 34! exceeds Int128
            Int128 v = 1;
            for (std::int64_t i = 2; i <= n; ++i) v *= i;
            return v;
        }
    }
    return std::nullopt;
}

std::int64_t IndexSequence::value(std::int64_t n) const {
    auto v = value128(n);
    if (!v || !fits_int64(*v))
        throw OverflowError("IndexSequence: lambda_" + std::to_string(n) +
                            " exceeds the 64-bit range; use log_value");
    return std::int64_t(*v);
}

bool IndexSequence::representable64(std::int64_t n) const {
    auto v = value128(n);
    return v && fits_int64(*v);
}

LogMag IndexSequence::log_value(std::int64_t n) const {
    check_index(n);
    switch (kind_) {
        case Kind::Explicit:
            return LogMag::of(double(values_[std::size_t(n - 1)]));
        case Kind::PolynomialFloor: {
            auto v = value128(n);
            if (v) return LogMag::from_log(std::log(to_double(*v)));
            // beyond Int128: ln P(n) with an O(1/P) floor correction ignored
            return LogMag::from_log(
                ln_from_dd(dd_poly_eval(poly_coeffs_.data(), poly_coeffs_.size(),
                                        double(n))));
        }
        case Kind::Geometric: {
            auto v = value128(n);
            if (v) return LogMag::from_log(std::log(to_double(*v)));
            return LogMag::from_log(std::log(double(first_)) +
                                    double(n - 1) * std::log(ratio_));
        }
        case Kind::Factorial:
            return LogMag::from_log(std::lgamma(double(n) + 1.0));
    }
    return LogMag::zero();
}

std::string IndexSequence::describe() const {
    switch (kind_) {
        case Kind::Explicit:
            return "explicit[" + std::to_string(values_.size()) + "]";
        case Kind::PolynomialFloor: {
            std::string s = "floor(P(n)), P ascending coeffs (";
            for (std::size_t i = 0; i < poly_coeffs_.size(); ++i) {
                if (i) s += ", ";
                s += std::to_string(poly_coeffs_[i]);
            }
            return s + ")";
        }
        case Kind::Geometric:
            return "geometric(first=" + std::to_string(first_) +
                   ", ratio=" + std::to_string(ratio_) + ")";
        case Kind::Factorial:
            return "factorial";
    }
    return "?";
}

IndexStream IndexStream::identity() { return affine(1, 0); }

IndexStream IndexStream::affine(std::int64_t step, std::int64_t offset) {
    if (step < 1) throw ConfigError("IndexStream: step must be >= 1");
    if (step + offset < 1)
        throw ConfigError("IndexStream: first element must be >= 1");
    IndexStream s;
    s.step_ = step;
    s.offset_ = offset;
    return s;
}

IndexStream IndexStream::explicit_list(std::vector<std::int64_t> values) {
    if (values.empty()) throw ConfigError("IndexStream: empty list");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 1) throw ConfigError("IndexStream: elements must be >= 1");
        if (i > 0 && values[i] <= values[i - 1])
            throw ConfigError("IndexStream: elements must be strictly increasing");
    }
    IndexStream s;
    s.values_ = std::move(values);
    return s;
}

std::optional<std::int64_t> IndexStream::first_greater(std::int64_t x) const {
    if (!values_.empty()) {
        auto it = std::upper_bound(values_.begin(), values_.end(), x);
        if (it == values_.end()) return std::nullopt;
        return *it;
    }
    // smallest step*k + offset > x with k >= 1
    std::int64_t k = 1;
    if (x >= step_ + offset_) k = (x - offset_) / step_ + 1;
    return step_ * k + offset_;
}

std::optional<std::int64_t> IndexStream::first_not_below(double x) const {
    const std::int64_t c = std::int64_t(std::ceil(x));
    return first_greater(std::max<std::int64_t>(c - 1, 0));
}

bool IndexStream::contains(std::int64_t v) const {
    if (v < 1) return false;
    if (!values_.empty())
        return std::binary_search(values_.begin(), values_.end(), v);
    return v > offset_ && (v - offset_) % step_ == 0 && (v - offset_) / step_ >= 1;
}

std::int64_t IndexStream::max_element() const {
    if (values_.empty())
        throw ConfigError("IndexStream: affine streams are unbounded");
    return values_.back();
}

std::string IndexStream::describe() const {
    if (!values_.empty()) return "explicit[" + std::to_string(values_.size()) + "]";
    if (step_ == 1 && offset_ == 0) return "identity";
    return std::to_string(step_) + "k" +
           (offset_ ? (offset_ > 0 ? "+" + std::to_string(offset_)
                                   : std::to_string(offset_))
                    : "");
}

}  // namespace uts
