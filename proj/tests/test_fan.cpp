#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arithdyn/errors.hpp"
#include "arithdyn/fan.hpp"

using namespace arithdyn;

namespace {

IntVec iv(std::vector<long> v) {
    IntVec out;
    for (long x : v) out.emplace_back(x);
    return out;
}

} // namespace

TEST_CASE("canonical fans validate, are simplicial and complete") {
    Fan p1 = projective_space_fan(1);
    for (const Fan& fan : {projective_space_fan(2), product(p1, p1), hirzebruch_fan(2),
                           product(projective_space_fan(2), p1)}) {
        ValidationReport rep = validate(fan);
        CHECK(rep.valid);
        CHECK(rep.simplicial);
        CHECK(rep.issues.empty());
        CHECK(is_simplicial(fan));
        CHECK(is_complete(fan));
    }
    CHECK(projective_space_fan(2).rays.size() == 3);
    CHECK(hirzebruch_fan(2).rays == std::vector<IntVec>{iv({1, 0}), iv({0, 1}), iv({-1, 2}),
                                                        iv({0, -1})});
}

TEST_CASE("validation catches broken fans") {
    // Non-primitive ray.
    Fan bad = projective_space_fan(2);
    bad.rays[0] = iv({2, 0});
    CHECK(!validate(bad).valid);

    // Duplicate ray.
    Fan dup = projective_space_fan(2);
    dup.rays[1] = dup.rays[0];
    CHECK(!validate(dup).valid);

    // Out-of-range cone index.
    Fan idx = projective_space_fan(2);
    idx.max_cones[0] = {0, 7};
    CHECK(!validate(idx).valid);

    // Overlapping cones that do not meet in a common face:
    // cone(e1, e2) and cone(e1+e2-ish interior ray, -e1).
    Fan overlap;
    overlap.dim = 2;
    overlap.rays = {iv({1, 0}), iv({0, 1}), iv({1, 1}), iv({-1, 0})};
    overlap.max_cones = {{0, 1}, {2, 3}};
    CHECK(!validate(overlap).valid);

    // Non-simplicial but valid: cone over a square in 3D.
    Fan square;
    square.dim = 3;
    square.rays = {iv({1, 0, 1}), iv({0, 1, 1}), iv({-1, 0, 1}), iv({0, -1, 1})};
    square.max_cones = {{0, 1, 2, 3}};
    ValidationReport rep = validate(square);
    CHECK(rep.valid);
    CHECK(!rep.simplicial);

    // Not strongly convex: cone containing a line.
    Fan line;
    line.dim = 2;
    line.rays = {iv({1, 0}), iv({-1, 0}), iv({0, 1})};
    line.max_cones = {{0, 1, 2}};
    CHECK(!validate(line).valid);
}

TEST_CASE("completeness detects gaps") {
    // Single quadrant is not complete.
    Fan quadrant;
    quadrant.dim = 2;
    quadrant.rays = {iv({1, 0}), iv({0, 1})};
    quadrant.max_cones = {{0, 1}};
    CHECK(validate(quadrant).valid);
    CHECK(!is_complete(quadrant));

    // P^2 minus one max cone.
    Fan gap = projective_space_fan(2);
    gap.max_cones.pop_back();
    CHECK(validate(gap).valid);
    CHECK(!is_complete(gap));
}

TEST_CASE("products multiply rays and cones") {
    Fan p1 = projective_space_fan(1);
    Fan p2 = projective_space_fan(2);
    Fan prod = product(p2, p1);
    CHECK(prod.dim == 3);
    CHECK(prod.rays.size() == 5);
    CHECK(prod.max_cones.size() == 6);
    for (const auto& cone : prod.max_cones) CHECK(cone.size() == 3);
    CHECK(validate(prod).valid);
}

TEST_CASE("face membership") {
    Fan p2 = projective_space_fan(2);
    CHECK(has_cone(p2, ConeRef{{}}));       // zero cone
    CHECK(has_cone(p2, ConeRef{{0}}));      // ray
    CHECK(has_cone(p2, ConeRef{{0, 1}}));   // max cone
    CHECK(!has_cone(p2, ConeRef{{0, 1, 2}}));

    Fan square;
    square.dim = 3;
    square.rays = {iv({1, 0, 1}), iv({0, 1, 1}), iv({-1, 0, 1}), iv({0, -1, 1})};
    square.max_cones = {{0, 1, 2, 3}};
    CHECK(has_cone(square, ConeRef{{0, 1}}));   // edge
    CHECK(!has_cone(square, ConeRef{{0, 2}}));  // diagonal, not a face
}

TEST_CASE("star fans project onto the quotient lattice") {
    Fan p2 = projective_space_fan(2);
    StarFan star = star_fan(p2, ConeRef{{0}});
    CHECK(star.fan.dim == 1);
    CHECK(star.fan.rays.size() == 2);  // the star of a point on P^2 is a P^1
    CHECK(is_complete(star.fan));
    // rho = #rays - dim on both sides for complete simplicial fans.
    CHECK(star.source_rho == 1);
    CHECK(star.star_rho == 1);

    Fan p2xp1 = product(p2, projective_space_fan(1));
    StarFan star2 = star_fan(p2xp1, ConeRef{{3}});  // a P^1 ray: star is P^2
    CHECK(star2.fan.dim == 2);
    CHECK(star2.fan.rays.size() == 3);
    CHECK(star2.source_rho == 2);
    CHECK(star2.star_rho == 1);

    // Star of a max cone is the trivial fan.
    StarFan point = star_fan(p2, ConeRef{{0, 1}});
    CHECK(point.fan.dim == 0);

    CHECK_THROWS_AS(star_fan(p2, ConeRef{{0, 1, 2}}), ValidationError);
}
