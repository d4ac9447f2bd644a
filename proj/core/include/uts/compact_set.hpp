#ifndef UTS_COMPACT_SET_HPP
#define UTS_COMPACT_SET_HPP

#include <string>
#include <variant>
#include <vector>

#include "uts/taylor_poly.hpp"

namespace uts {

// Descriptors are limited to finite unions of segments and sub-2pi circular
// arcs.  Such sets always have connected complement, which is the class the
// approximation targets live on.
struct Segment {
    Complex a, b;
};

struct Arc {
    Complex center;
    double radius = 1.0;
    double theta0 = 0.0;  // radians
    double span = 1.0;    // radians, must be < 2pi
};

struct SetDescriptor {
    std::vector<std::variant<Segment, Arc>> parts;

    static SetDescriptor segment(Complex a, Complex b);
    static SetDescriptor arc(Complex center, double radius, double theta0,
                             double span);
    SetDescriptor& add_segment(Complex a, Complex b);
    SetDescriptor& add_arc(Complex center, double radius, double theta0, double span);

    double total_length() const;
    std::string describe() const;
};

// A discretized compact set: nodes with positive weights.  Every node lies
// strictly outside the closed disk of the experiment domain.
struct CompactSetSample {
    SetDescriptor descriptor;
    std::vector<Complex> nodes;
    std::vector<double> weights;

    bool empty() const { return nodes.empty(); }
    double min_distance_to(const CompactSetSample& other) const;
};

// Equispaced arc-length discretization, endpoint-inclusive, with unit
// weights: floor(length * density) + 1 nodes per part.  density >= 8 is the
// floor; descriptors touching the closed disk |z| <= exclusion_radius are
// rejected.
CompactSetSample discretize(const SetDescriptor& descriptor, double density,
                            double exclusion_radius);

// n equispaced nodes on the circle |z - center| = radius (an internal
// control-sample helper; not a member of the compact-set class above since
// a full circle has disconnected complement).
std::vector<Complex> circle_nodes(Complex center, double radius, std::int64_t n);

}  // namespace uts

#endif
