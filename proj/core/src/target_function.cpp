#include "uts/target_function.hpp"

#include <cmath>

#include "uts/errors.hpp"

namespace uts {

TargetFunction TargetFunction::polynomial(TaylorPoly p) {
    TargetFunction t;
    t.kind_ = Kind::Polynomial;
    t.poly_ = std::move(p);
    return t;
}

TargetFunction TargetFunction::rational(TaylorPoly numerator,
                                        std::vector<Complex> poles) {
    if (poles.empty())
        throw ConfigError("TargetFunction::rational: list the poles explicitly");
    TargetFunction t;
    t.kind_ = Kind::Rational;
    t.poly_ = std::move(numerator);
    t.poles_ = std::move(poles);
    return t;
}

TargetFunction TargetFunction::entire_exp(Complex scale, std::int64_t order) {
    if (order < 0) throw ConfigError("TargetFunction::entire_exp: order must be >= 0");
    // store the truncated series as an ordinary polynomial around 0
    std::vector<Complex> coeffs(std::size_t(order) + 1);
    Complex term{1.0, 0.0};
    coeffs[0] = term;
    for (std::int64_t nu = 1; nu <= order; ++nu) {
        term *= scale / double(nu);
        coeffs[std::size_t(nu)] = term;
    }
    TargetFunction t;
    t.kind_ = Kind::Entire;
    t.poly_ = TaylorPoly({0.0, 0.0}, std::move(coeffs));
    return t;
}

Complex TargetFunction::operator()(Complex z) const {
    Complex v = eval(poly_, z);
    for (const auto& pole : poles_) v /= (z - pole);
    return v;
}

void TargetFunction::validate_against(const CompactSetSample& sample) const {
    for (const auto& pole : poles_) {
        for (const auto& node : sample.nodes) {
            if (std::abs(node - pole) < 0.1)
                throw ConfigError(
                    "TargetFunction: pole within 0.1 of a sample node");
        }
    }
}

std::string TargetFunction::describe() const {
    switch (kind_) {
        case Kind::Polynomial:
            return "polynomial(deg " + std::to_string(poly_.degree_bound()) + ")";
        case Kind::Rational:
            return "rational(" + std::to_string(poles_.size()) + " poles)";
        case Kind::Entire:
            return "entire_exp(order " + std::to_string(poly_.degree_bound()) + ")";
    }
    return "?";
}

}  // namespace uts
