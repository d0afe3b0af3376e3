#ifndef KIRWAN_HULL_HPP
#define KIRWAN_HULL_HPP

#include "kirwan/rational.hpp"

#include <map>
#include <vector>

namespace kirwan {

// Nearest point of a convex hull with a verifiable barycentric certificate:
// point = sum coeff_i * points[i], coeffs >= 0 summing to 1, and
// <point, p - point> >= 0 for every generator p.
struct HullCertificate {
    RatVec point;
    std::map<int, Rat> barycentric;
    bool verify(const std::vector<RatVec>& points) const;
};

// Unique minimizer of |x|^2 over conv(points). Wolfe's nearest-point
// algorithm in exact arithmetic; terminates with the exact answer.
HullCertificate nearest_point_hull(const std::vector<RatVec>& points);

// Is target in conv(points)? If yes, barycentric certificate; if no, a
// separating vector s with <s, p - target> > 0 for all generators p.
struct MembershipResult {
    bool inside = false;
    std::map<int, Rat> barycentric;
    RatVec separator;
};
MembershipResult hull_membership(const std::vector<RatVec>& points, const RatVec& target);

// Projection of the origin onto the affine span of the given points.
// Returns false if the points are affinely dependent (not a proper frame).
bool affine_projection_of_origin(const std::vector<RatVec>& points, RatVec& out);

// Test-support oracle: minimize |x|^2 over conv(points) by enumerating
// affinely independent subsets and checking optimality on each face.
HullCertificate nearest_point_bruteforce(const std::vector<RatVec>& points);

} // namespace kirwan

#endif
