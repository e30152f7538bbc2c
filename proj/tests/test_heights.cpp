#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "arithdyn/errors.hpp"
#include "arithdyn/heights.hpp"

using namespace arithdyn;

namespace {

IntVec iv(std::vector<long> v) {
    IntVec out;
    for (long x : v) out.emplace_back(x);
    return out;
}

DynSystem squaring() {
    // (x:y) -> (x^2 : y^2): f = x^2, g = y^2 in the x^i y^(d-i) basis.
    DynSystem sys;
    sys.factors.push_back(P1MapFactor{iv({0, 0, 1}), iv({1, 0, 0})});
    return sys;
}

DynSystem mixed() {
    // (x:y) -> (x^2 + y^2 : xy).
    DynSystem sys;
    sys.factors.push_back(P1MapFactor{iv({1, 0, 1}), iv({0, 1, 0})});
    return sys;
}

} // namespace

TEST_CASE("projective point normalization") {
    ProjPoint p = make_proj_point({iv({4, 2})});
    CHECK(p.factors[0] == iv({2, 1}));
    ProjPoint n = make_proj_point({iv({-3, 6})});
    CHECK(n.factors[0] == iv({1, -2}));  // first nonzero coordinate positive
    CHECK_THROWS_AS(make_proj_point({iv({0, 0})}), ValidationError);
    CHECK_THROWS_AS(make_proj_point({}), ValidationError);
}

TEST_CASE("binary form resultants") {
    // Res(x^2, y^2) = 1 (up to sign): no common projective root.
    CHECK(binary_form_resultant(iv({0, 0, 1}), iv({1, 0, 0})) != 0);
    // x^2 and xy share the root (0:1).
    CHECK(binary_form_resultant(iv({0, 0, 1}), iv({0, 1, 0})) == 0);
    // Linear forms 2y+x... i.e. coeffs (c0, c1) = c0*y + c1*x: resultant is
    // the 2x2 cross determinant, nonzero iff the forms are independent.
    Int lin = binary_form_resultant(iv({2, 1}), iv({3, 1}));
    CHECK((lin == 1 || lin == -1));
    CHECK(binary_form_resultant(iv({2, 1}), iv({4, 2})) == 0);  // proportional
}

TEST_CASE("system validation") {
    CHECK_NOTHROW(validate_system(squaring()));
    CHECK_NOTHROW(validate_system(mixed()));
    DynSystem bad;
    bad.factors.push_back(P1MapFactor{iv({0, 0, 1}), iv({0, 1, 0})});  // common root
    CHECK_THROWS_AS(validate_system(bad), ValidationError);
    DynSystem degree0;
    degree0.factors.push_back(P1MapFactor{iv({1}), iv({2})});
    CHECK_THROWS_AS(validate_system(degree0), ValidationError);
    DynSystem power;
    power.factors.push_back(PowerFactor{2, 3});
    CHECK_NOTHROW(validate_system(power));
    DynSystem zero_exp;
    zero_exp.factors.push_back(PowerFactor{2, 0});
    CHECK_THROWS_AS(validate_system(zero_exp), ValidationError);
}

TEST_CASE("Weil heights") {
    WeilHeight h1 = weil_height(make_proj_point({iv({2, 1})}));
    CHECK(h1.value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(h1.exact_max == 2);

    WeilHeight h0 = weil_height(make_proj_point({iv({1, 1})}));
    CHECK(h0.value == 0.0);
    CHECK(h0.exact_max == 1);

    WeilHeight hp = weil_height(make_proj_point({iv({3, 1}), iv({5, 2})}));
    CHECK(hp.value == doctest::Approx(std::log(3.0) + std::log(5.0)).epsilon(1e-12));
    CHECK(hp.exact_max == 15);
}

TEST_CASE("apply evaluates exactly") {
    ProjPoint p = apply(squaring(), make_proj_point({iv({2, 1})}));
    CHECK(p.factors[0] == iv({4, 1}));

    ProjPoint q = apply(mixed(), make_proj_point({iv({1, 1})}));
    CHECK(q.factors[0] == iv({2, 1}));

    DynSystem cube;
    cube.factors.push_back(PowerFactor{2, 3});
    ProjPoint r = apply(cube, make_proj_point({iv({1, 2, 3})}));
    CHECK(r.factors[0] == iv({1, 8, 27}));

    CHECK_THROWS_AS(apply(squaring(), make_proj_point({iv({1, 2, 3})})), ValidationError);
}

TEST_CASE("power maps scale Weil heights exactly") {
    DynSystem cube;
    cube.factors.push_back(PowerFactor{2, 3});
    ProjPoint p = make_proj_point({iv({2, 5, 9})});
    WeilHeight before = weil_height(p);
    WeilHeight after = weil_height(apply(cube, p));
    CHECK(after.exact_max == before.exact_max * before.exact_max * before.exact_max);
}

TEST_CASE("alpha estimates") {
    // Squaring at (2:1): every ratio is exactly 2.
    AlphaEstimate est = alpha_estimate(squaring(), make_proj_point({iv({2, 1})}), 10);
    CHECK(est.iterations == 10);
    CHECK(!est.height_collapsed);
    CHECK(!est.budget_exceeded);
    for (double r : est.ratios) CHECK(r == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(est.estimate == doctest::Approx(2.0).epsilon(1e-12));
    // Root estimator converges slowly but is reported.
    CHECK(est.roots.size() == 10);

    // Fixed point (1:1): heights all zero, estimate 1.
    AlphaEstimate fixed = alpha_estimate(squaring(), make_proj_point({iv({1, 1})}), 5);
    CHECK(fixed.height_collapsed);
    CHECK(fixed.estimate == 1.0);
    for (double h : fixed.heights) CHECK(h == 0.0);

    // Mixed quadratic map at (2:1): estimate near 2 by 10 iterations.
    AlphaEstimate m = alpha_estimate(mixed(), make_proj_point({iv({2, 1})}), 10);
    CHECK(m.estimate == doctest::Approx(2.0).epsilon(1e-3));

    CHECK_THROWS_AS(alpha_estimate(squaring(), make_proj_point({iv({2, 1})}), 2),
                    ValidationError);
}

TEST_CASE("product rule for alpha estimates") {
    // Product of squaring and cubing: alpha = max(2, 3) within 1e-2.
    DynSystem prod;
    prod.factors.push_back(P1MapFactor{iv({0, 0, 1}), iv({1, 0, 0})});
    prod.factors.push_back(PowerFactor{1, 3});
    AlphaEstimate est =
        alpha_estimate(prod, make_proj_point({iv({2, 1}), iv({2, 1})}), 10);
    CHECK(est.estimate == doctest::Approx(3.0).epsilon(1e-2));

    // Collapse one factor to a fixed point: the other factor dominates.
    AlphaEstimate est2 =
        alpha_estimate(prod, make_proj_point({iv({2, 1}), iv({1, 1})}), 10);
    CHECK(est2.estimate == doctest::Approx(2.0).epsilon(1e-2));
}

TEST_CASE("iteration law for alpha estimates") {
    // sys^m for a power map d is the power map d^m: alpha^m, m <= 3.
    for (unsigned m = 2; m <= 3; ++m) {
        DynSystem base, iterated;
        base.factors.push_back(PowerFactor{1, 2});
        unsigned dm = 1;
        for (unsigned k = 0; k < m; ++k) dm *= 2;
        iterated.factors.push_back(PowerFactor{1, dm});
        double a = alpha_estimate(base, make_proj_point({iv({3, 1})}), 8).estimate;
        double am = alpha_estimate(iterated, make_proj_point({iv({3, 1})}), 8).estimate;
        CHECK(am == doctest::Approx(std::pow(a, m)).epsilon(1e-2));
    }
}

TEST_CASE("digit budget aborts with a partial report") {
    setenv("ARITHDYN_DIGIT_BUDGET", "40", 1);
    CHECK(digit_budget() == 40);
    AlphaEstimate est = alpha_estimate(squaring(), make_proj_point({iv({123456789, 1})}), 10);
    CHECK(est.budget_exceeded);
    CHECK(est.iterations < 10);
    CHECK(est.heights.size() == est.iterations + 1);
    unsetenv("ARITHDYN_DIGIT_BUDGET");
    CHECK(digit_budget() == 1000000);
}

TEST_CASE("log of huge integers is stable") {
    Int big = 1;
    for (int i = 0; i < 5000; ++i) big *= 10;
    CHECK(log_int(big) == doctest::Approx(5000.0 * std::log(10.0)).epsilon(1e-9));
}
