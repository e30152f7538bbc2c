#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "arithdyn/abelian.hpp"
#include "arithdyn/errors.hpp"

using namespace arithdyn;

namespace {

RatMatrix mat2(long a, long b, long c, long d) {
    RatMatrix m(2, 2);
    m.at(0, 0) = Rat(a);
    m.at(0, 1) = Rat(b);
    m.at(1, 0) = Rat(c);
    m.at(1, 1) = Rat(d);
    return m;
}

} // namespace

TEST_CASE("nef and ample via trace/determinant signs") {
    CHECK(is_nef_class(sym_class(1, 0, 0)));      // E11: PSD, rank 1
    CHECK(!is_ample_class(sym_class(1, 0, 0)));
    CHECK(is_nef_class(sym_class(0, 1, 0)));      // E22
    CHECK(!is_nef_class(sym_class(0, 0, 1)));     // E12+E21: eigenvalues +-1
    CHECK(is_ample_class(sym_class(1, 1, 0)));    // identity
    CHECK(is_ample_class(sym_class(2, 1, 1)));    // det 1, trace 3
    CHECK(!is_nef_class(sym_class(-1, -1, 0)));
    CHECK(is_nef_class(sym_class(0, 0, 0)));
    CHECK_THROWS_AS(is_nef_class(mat2(1, 2, 3, 4)), ValidationError);
}

TEST_CASE("theta matrix of a diagonal isogeny") {
    // f = diag(a, b) acts on (E11, E22, E12+E21) as diag(a^2, b^2, ab).
    ThetaAction theta = theta_matrix(mat2(3, 0, 0, 2));
    CHECK(theta.matrix.at(0, 0) == 9);
    CHECK(theta.matrix.at(1, 1) == 4);
    CHECK(theta.matrix.at(2, 2) == 6);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (i != j) CHECK(theta.matrix.at(i, j) == 0);

    REQUIRE(theta.eigen.rational.size() == 3);
    // Nef flags: the E11 and E22 eigenlines are nef, the mixed one is not.
    int nef = 0, not_nef = 0;
    for (const auto& flag : theta.flags) {
        if (flag.nef)
            ++nef;
        else
            ++not_nef;
        if (flag.eigenvalue == 6) CHECK(!flag.nef);
        CHECK(!flag.ample);  // all eigenlines are rank-1 or indefinite
    }
    CHECK(nef == 2);
    CHECK(not_nef == 1);
}

TEST_CASE("theta respects the pullback identity exactly") {
    // theta_f(alpha) = f^T alpha f recomputed by hand for a dense f.
    RatMatrix f = mat2(1, 2, 3, 4);
    ThetaAction theta = theta_matrix(f);
    std::mt19937 rng(1234);
    std::uniform_int_distribution<long> dist(-5, 5);
    for (int trial = 0; trial < 20; ++trial) {
        Rat c11(dist(rng)), c22(dist(rng)), cm(dist(rng));
        RatMatrix alpha = sym_class(c11, c22, cm);
        RatMatrix direct = f.transposed() * alpha * f;
        RatVec coords = theta.matrix * RatVec{c11, c22, cm};
        CHECK(direct.at(0, 0) == coords[0]);
        CHECK(direct.at(1, 1) == coords[1]);
        CHECK(direct.at(0, 1) == coords[2]);
        CHECK(direct.at(0, 1) == direct.at(1, 0));
    }
}

TEST_CASE("theta contravariance") {
    // Theta_{f g} = Theta_g Theta_f (pullback reverses composition).
    std::mt19937 rng(5678);
    std::uniform_int_distribution<long> dist(-4, 4);
    int done = 0;
    while (done < 10) {
        RatMatrix f = mat2(dist(rng), dist(rng), dist(rng), dist(rng));
        RatMatrix g = mat2(dist(rng), dist(rng), dist(rng), dist(rng));
        if (det(f) == 0 || det(g) == 0) continue;
        CHECK(theta_matrix(f * g).matrix == theta_matrix(g).matrix * theta_matrix(f).matrix);
        ++done;
    }
}

TEST_CASE("counterexample report for a > b > 1") {
    CounterexampleReport report = counterexample_report(3, 2);
    REQUIRE(report.labels.size() == 3);
    CHECK(report.labels[0].value == 9);
    CHECK(report.labels[0].realizable);
    CHECK(report.labels[1].value == 6);
    CHECK(!report.labels[1].realizable);
    CHECK(report.labels[2].value == 4);
    CHECK(!report.labels[2].realizable);
    CHECK(report.realizable == std::vector<Rat>{Rat(9), Rat(1)});
    CHECK(report.non_realizable == std::vector<Rat>{Rat(6), Rat(4)});
    for (const auto& l : report.labels) CHECK(!l.justification.empty());
}

TEST_CASE("degenerate counterexample b = 1") {
    CounterexampleReport report = counterexample_report(2, 1);
    // Eigenvalues 4, 2, 1; only 4 and 2 exceed 1; 2 = ab is not realizable.
    REQUIRE(report.labels.size() == 2);
    CHECK(report.labels[0].value == 4);
    CHECK(report.labels[0].realizable);
    CHECK(report.labels[1].value == 2);
    CHECK(!report.labels[1].realizable);
    CHECK(report.realizable == std::vector<Rat>{Rat(4), Rat(1)});
    CHECK(report.non_realizable == std::vector<Rat>{Rat(2)});
}

TEST_CASE("counterexample preconditions") {
    CHECK_THROWS_AS(counterexample_report(2, 2), ValidationError);
    CHECK_THROWS_AS(counterexample_report(2, 3), ValidationError);
    CHECK_THROWS_AS(counterexample_report(1, 0), ValidationError);
}

TEST_CASE("general isogeny reports") {
    // Scalar n: theta = n^2 Id, single potential degree n^2.
    IsogenyReport scalar = general_isogeny_report(mat2(3, 0, 0, 3), true);
    CHECK(scalar.lambda1 == 9.0);
    REQUIRE(scalar.labels.size() == 1);
    CHECK(scalar.labels[0].value == 9);
    CHECK(scalar.labels[0].realizable);

    // Without the simplicity hypothesis every eigenvalue stays a candidate.
    IsogenyReport open = general_isogeny_report(mat2(3, 0, 0, 2), false);
    REQUIRE(open.labels.size() == 3);
    for (const auto& l : open.labels) CHECK(l.realizable);

    // With it, only the top one (and 1).
    IsogenyReport simple = general_isogeny_report(mat2(3, 0, 0, 2), true);
    CHECK(simple.labels[0].realizable);
    CHECK(!simple.labels[1].realizable);
    CHECK(!simple.labels[2].realizable);

    CHECK_THROWS_AS(theta_matrix(mat2(1, 2, 2, 4)), ValidationError);  // singular
}
