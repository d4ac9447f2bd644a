#include "uts/compact_set.hpp"

#include <cmath>
#include <numbers>

#include "uts/errors.hpp"

namespace uts {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double part_length(const std::variant<Segment, Arc>& part) {
    if (std::holds_alternative<Segment>(part)) {
        const auto& s = std::get<Segment>(part);
        return std::abs(s.b - s.a);
    }
    const auto& a = std::get<Arc>(part);
    return a.radius * a.span;
}

void validate_part(const std::variant<Segment, Arc>& part) {
    if (std::holds_alternative<Segment>(part)) {
        const auto& s = std::get<Segment>(part);
        if (std::abs(s.b - s.a) <= 0.0)
            throw ConfigError("SetDescriptor: degenerate segment");
        return;
    }
    const auto& a = std::get<Arc>(part);
    if (!(a.radius > 0.0)) throw ConfigError("SetDescriptor: arc radius must be > 0");
    if (!(a.span > 0.0) || a.span >= kTwoPi)
        throw ConfigError("SetDescriptor: arc span must lie in (0, 2pi)");
}

}  // namespace

SetDescriptor SetDescriptor::segment(Complex a, Complex b) {
    SetDescriptor d;
    d.add_segment(a, b);
    return d;
}

SetDescriptor SetDescriptor::arc(Complex center, double radius, double theta0,
                                 double span) {
    SetDescriptor d;
    d.add_arc(center, radius, theta0, span);
    return d;
}

SetDescriptor& SetDescriptor::add_segment(Complex a, Complex b) {
    parts.push_back(Segment{a, b});
    validate_part(parts.back());
    return *this;
}

SetDescriptor& SetDescriptor::add_arc(Complex center, double radius, double theta0,
                                      double span) {
    parts.push_back(Arc{center, radius, theta0, span});
    validate_part(parts.back());
    return *this;
}

double SetDescriptor::total_length() const {
    double len = 0.0;
    for (const auto& p : parts) len += part_length(p);
    return len;
}

std::string SetDescriptor::describe() const {
    std::string s;
    for (const auto& p : parts) {
        if (!s.empty()) s += " u ";
        if (std::holds_alternative<Segment>(p))
            s += "segment";
        else
            s += "arc";
    }
    return s.empty() ? "empty" : s;
}

double CompactSetSample::min_distance_to(const CompactSetSample& other) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : nodes)
        for (const auto& b : other.nodes) best = std::min(best, std::abs(a - b));
    return best;
}

CompactSetSample discretize(const SetDescriptor& descriptor, double density,
                            double exclusion_radius) {
    if (descriptor.parts.empty())
        throw ConfigError("discretize: descriptor has no parts");
    if (!(density >= 8.0))
        throw ConfigError("discretize: density floor is 8 nodes per unit length");

    CompactSetSample sample;
    sample.descriptor = descriptor;

    for (const auto& part : descriptor.parts) {
        validate_part(part);
        const double len = part_length(part);
        const std::int64_t n = std::int64_t(std::floor(len * density)) + 1;
        for (std::int64_t j = 0; j <= n - 1; ++j) {
            const double t = (n == 1) ? 0.0 : double(j) / double(n - 1);
            Complex z;
            if (std::holds_alternative<Segment>(part)) {
                const auto& s = std::get<Segment>(part);
                z = s.a + t * (s.b - s.a);
            } else {
                const auto& a = std::get<Arc>(part);
                const double theta = a.theta0 + t * a.span;
                z = a.center + std::polar(a.radius, theta);
            }
            if (std::abs(z) <= exclusion_radius)
                throw ConfigError(
                    "discretize: node inside the closed experiment disk |z| <= " +
                    std::to_string(exclusion_radius));
            sample.nodes.push_back(z);
            sample.weights.push_back(1.0);
        }
    }
    return sample;
}

std::vector<Complex> circle_nodes(Complex center, double radius, std::int64_t n) {
    if (n < 4) throw ConfigError("circle_nodes: need at least 4 nodes");
    if (!(radius > 0.0)) throw ConfigError("circle_nodes: radius must be > 0");
    std::vector<Complex> out;
    out.reserve(std::size_t(n));
    for (std::int64_t j = 0; j < n; ++j)
        out.push_back(center + std::polar(radius, kTwoPi * double(j) / double(n)));
    return out;
}

}  // namespace uts
