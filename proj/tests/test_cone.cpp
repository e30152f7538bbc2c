#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "arithdyn/cone.hpp"
#include "arithdyn/errors.hpp"

using namespace arithdyn;

namespace {

LinearConstraint make(std::vector<long> c, LinearConstraint::Kind kind) {
    LinearConstraint lc;
    for (long x : c) lc.coeffs.emplace_back(x);
    lc.kind = kind;
    return lc;
}

IntVec iv(std::vector<long> v) {
    IntVec out;
    for (long x : v) out.emplace_back(x);
    return out;
}

bool has_ray(const std::vector<IntVec>& rays, std::vector<long> v) {
    return std::find(rays.begin(), rays.end(), iv(std::move(v))) != rays.end();
}

} // namespace

TEST_CASE("Fourier-Motzkin feasibility") {
    using K = LinearConstraint::Kind;
    // x > 0, x < 0 infeasible.
    CHECK(!feasible({make({1}, K::Gt), make({-1}, K::Gt)}, 1));
    // x > 0 feasible.
    CHECK(feasible({make({1}, K::Gt)}, 1));
    // x + y = 0, x > 0, y > 0 infeasible.
    CHECK(!feasible({make({1, 1}, K::Eq), make({1, 0}, K::Gt), make({0, 1}, K::Gt)}, 2));
    // x + y = 0, x > 0, y < 0 feasible.
    CHECK(feasible({make({1, 1}, K::Eq), make({1, 0}, K::Gt), make({0, -1}, K::Gt)}, 2));
    // x >= 0, y >= 0, x + y > 0 feasible.
    CHECK(feasible({make({1, 0}, K::Ge), make({0, 1}, K::Ge), make({1, 1}, K::Gt)}, 2));
}

TEST_CASE("extreme rays of H-representations") {
    // Quadrant.
    HRep quadrant{2, {iv({1, 0}), iv({0, 1})}, {}};
    DDResult dd = extreme_rays(quadrant);
    CHECK(dd.lineality.empty());
    REQUIRE(dd.rays.size() == 2);
    CHECK(has_ray(dd.rays, {1, 0}));
    CHECK(has_ray(dd.rays, {0, 1}));

    // Half-plane: lineality along y.
    HRep half{2, {iv({1, 0})}, {}};
    DDResult hd = extreme_rays(half);
    CHECK(hd.lineality.size() == 1);

    // Slice by an equality: x = y inside the quadrant -> single diagonal ray.
    HRep diag{2, {iv({1, 0}), iv({0, 1})}, {iv({1, -1})}};
    DDResult sd = extreme_rays(diag);
    CHECK(sd.lineality.empty());
    REQUIRE(sd.rays.size() == 1);
    CHECK(has_ray(sd.rays, {1, 1}));

    // Infeasible beyond zero: x >= 0, -x >= 0, plus x = 1... not homogeneous;
    // instead x >= 0 and -x >= 0 gives the y-axis line in 2D.
    HRep line{2, {iv({1, 0}), iv({-1, 0})}, {}};
    DDResult ld = extreme_rays(line);
    CHECK(ld.lineality.size() == 1);

    // Only the origin: x >= 0, y >= 0, -x - y >= 0.
    HRep origin{2, {iv({1, 0}), iv({0, 1}), iv({-1, -1})}, {}};
    DDResult od = extreme_rays(origin);
    CHECK(od.rays.empty());
    CHECK(od.lineality.empty());
}

TEST_CASE("cone H-representation round trip") {
    std::vector<IntVec> gens = {iv({2, 1}), iv({1, 2})};
    HRep h = cone_h_rep(gens, 2);
    for (const auto& g : gens) CHECK(cone_contains(h, g));
    CHECK(cone_contains(h, iv({1, 1})));
    CHECK(!cone_contains(h, iv({1, 0})));
    CHECK(!cone_contains(h, iv({-1, -1})));

    DDResult dd = extreme_rays(h);
    REQUIRE(dd.rays.size() == 2);
    CHECK(has_ray(dd.rays, {2, 1}));
    CHECK(has_ray(dd.rays, {1, 2}));

    // Lower-dimensional cone: single ray in 3D has span equalities.
    HRep rayrep = cone_h_rep({iv({1, 1, 0})}, 3);
    CHECK(rayrep.equalities.size() == 2);
    CHECK(cone_contains(rayrep, iv({2, 2, 0})));
    CHECK(!cone_contains(rayrep, iv({1, 1, 1})));
    CHECK(!cone_contains(rayrep, iv({-1, -1, 0})));
}

TEST_CASE("cone intersection") {
    // Two 2D cones sharing the x-axis ray.
    auto meet = cone_intersection({iv({1, 0}), iv({1, 1})}, {iv({1, 0}), iv({1, -1})}, 2);
    REQUIRE(meet.size() == 1);
    CHECK(meet[0] == iv({1, 0}));

    // Identical cones.
    auto same = cone_intersection({iv({1, 0}), iv({0, 1})}, {iv({1, 0}), iv({0, 1})}, 2);
    CHECK(same.size() == 2);

    // Cones meeting only at the origin.
    auto zero = cone_intersection({iv({1, 0}), iv({1, 1})}, {iv({-1, 0}), iv({-1, -1})}, 2);
    CHECK(zero.empty());

    // Overlapping interiors: intersection is a full 2D cone.
    auto overlap = cone_intersection({iv({1, 0}), iv({0, 1})}, {iv({2, 1}), iv({1, 2})}, 2);
    CHECK(overlap.size() == 2);
    CHECK(has_ray(overlap, {2, 1}));
    CHECK(has_ray(overlap, {1, 2}));
}

TEST_CASE("face recognition") {
    std::vector<IntVec> square = {iv({1, 0, 1}), iv({0, 1, 1}), iv({-1, 0, 1}), iv({0, -1, 1})};
    // Each single generator is a face (edge) of the 3D cone over the square.
    CHECK(is_face_of({iv({1, 0, 1})}, square, 3));
    // Adjacent generators span a 2D face.
    CHECK(is_face_of({iv({1, 0, 1}), iv({0, 1, 1})}, square, 3));
    // Opposite generators do not span a face.
    CHECK(!is_face_of({iv({1, 0, 1}), iv({-1, 0, 1})}, square, 3));
    // The zero cone is a face of any pointed cone.
    CHECK(is_face_of({}, square, 3));
    // The full cone is a face of itself.
    CHECK(is_face_of(square, square, 3));
}
