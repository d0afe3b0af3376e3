#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kirwan/hull.hpp"
#include "kirwan/strata.hpp"

#include <random>

using namespace kirwan;

namespace {
std::vector<RatVec> random_points(std::mt19937& rng, int dim, int count) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    std::vector<RatVec> pts(count, RatVec(dim));
    for (auto& p : pts)
        for (Rat& c : p) c = Rat(num(rng), den(rng));
    return pts;
}
} // namespace

TEST_CASE("nearest point basics") {
    // set containing the origin
    std::vector<RatVec> with0 = {{Rat(2), Rat(1)}, {Rat(0), Rat(0)}, {Rat(-1), Rat(3)}};
    HullCertificate c = nearest_point_hull(with0);
    CHECK(is_zero_vec(c.point));
    CHECK(c.verify(with0));

    // symmetric pair
    std::vector<RatVec> pair = {{Rat(1), Rat(-1)}, {Rat(-1), Rat(1)}};
    HullCertificate c2 = nearest_point_hull(pair);
    CHECK(is_zero_vec(c2.point));
    CHECK(c2.barycentric.at(0) == Rat(1, 2));
    CHECK(c2.barycentric.at(1) == Rat(1, 2));

    // single point
    std::vector<RatVec> one = {{Rat(3), Rat(4)}};
    HullCertificate c3 = nearest_point_hull(one);
    CHECK(c3.point == one[0]);
    CHECK(c3.verify(one));
}

TEST_CASE("wolfe agrees with the face-enumeration oracle") {
    std::mt19937 rng(20260808);
    for (int it = 0; it < 150; ++it) {
        int dim = 1 + it % 3;
        int count = 1 + (int)(rng() % 7);
        auto pts = random_points(rng, dim, count);
        HullCertificate fast = nearest_point_hull(pts);
        HullCertificate slow = nearest_point_bruteforce(pts);
        CHECK(fast.point == slow.point);
        CHECK(fast.verify(pts));
        CHECK(slow.verify(pts));
        // certificate optimality: <x, p - x> >= 0 and |x| <= |p| for generators
        Rat n2 = dot(fast.point, fast.point);
        for (const RatVec& p : pts) {
            CHECK(dot(fast.point, p) >= n2);
            CHECK(dot(p, p) >= n2);
        }
    }
}

TEST_CASE("hull membership certificates") {
    std::mt19937 rng(7);
    for (int it = 0; it < 80; ++it) {
        int dim = 2 + it % 2;
        auto pts = random_points(rng, dim, 4 + (int)(rng() % 4));
        RatVec target = random_points(rng, dim, 1)[0];
        MembershipResult m = hull_membership(pts, target);
        if (m.inside) {
            RatVec sum(dim, Rat(0));
            Rat tot;
            for (auto& [i, c] : m.barycentric) {
                CHECK(!c.is_negative());
                sum = sum + scale(c, pts[i]);
                tot += c;
            }
            CHECK(tot == Rat(1));
            CHECK(sum == target);
        } else {
            // separating vector: strictly positive on every shifted generator
            for (const RatVec& p : pts)
                CHECK(dot(m.separator, p - target) > Rat(0));
        }
    }
}

TEST_CASE("generic torus semistability test") {
    // weight set symmetric under negation contains the origin in its hull
    std::vector<RatVec> sym = {{Rat(2), Rat(-1)}, {Rat(-2), Rat(1)}, {Rat(1), Rat(1)}, {Rat(-1), Rat(-1)}};
    TorusSemistable t = generic_torus_semistable(sym);
    CHECK(t.nonempty);

    std::vector<RatVec> oneside = {{Rat(1), Rat(0)}, {Rat(2), Rat(1)}, {Rat(1), Rat(1)}};
    TorusSemistable f = generic_torus_semistable(oneside);
    CHECK_FALSE(f.nonempty);
    for (const RatVec& p : oneside) CHECK(dot(f.separator, p) > Rat(0));
    CHECK_THROWS(generic_torus_semistable({}));
}

TEST_CASE("affine projection of the origin") {
    std::vector<RatVec> line = {{Rat(1), Rat(1)}, {Rat(3), Rat(3)}};
    RatVec x;
    CHECK(affine_projection_of_origin(line, x));
    CHECK(x == RatVec{Rat(0), Rat(0)});
    // affinely dependent triple on a line is rejected
    std::vector<RatVec> dep = {{Rat(0), Rat(0)}, {Rat(1), Rat(1)}, {Rat(2), Rat(2)}};
    CHECK_FALSE(affine_projection_of_origin(dep, x));
}
