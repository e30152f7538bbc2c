#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "arithdyn/errors.hpp"
#include "arithdyn/ratmat.hpp"

using namespace arithdyn;

namespace {

RatMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    RatMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = Rat(rows[i][j]);
    return m;
}

} // namespace

TEST_CASE("rational vector helpers") {
    IntVec v{Int(4), Int(-6), Int(10)};
    CHECK(vec_gcd(v) == 2);
    primitivize(v);
    CHECK(v == IntVec{Int(2), Int(-3), Int(5)});

    IntVec w{Int(-2), Int(4)};
    sign_normalize(w);
    CHECK(w == IntVec{Int(1), Int(-2)});

    RatVec r{Rat(1, 2), Rat(1, 3)};
    CHECK(clear_denominators(r) == IntVec{Int(3), Int(2)});

    CHECK(parse_int("-12345678901234567890") == Int("-12345678901234567890"));
    CHECK(parse_rat("3", "6") == Rat(1, 2));
    CHECK_THROWS_AS(parse_int("12x"), ValidationError);
}

TEST_CASE("determinant, rank, inverse") {
    RatMatrix m = from_rows({{2, 1, 0}, {0, 3, 1}, {1, 0, 1}});
    CHECK(det(m) == Rat(7));
    CHECK(rank(m) == 3);

    RatMatrix inv = inverse(m);
    CHECK(m * inv == RatMatrix::identity(3));
    CHECK(inv * m == RatMatrix::identity(3));

    RatMatrix singular = from_rows({{1, 2}, {2, 4}});
    CHECK(det(singular) == Rat(0));
    CHECK(rank(singular) == 1);
    CHECK_THROWS_AS(inverse(singular), ValidationError);
}

TEST_CASE("kernel basis is integral, primitive, correct") {
    RatMatrix m = from_rows({{1, 2, 3}});
    auto kernel = kernel_basis(m);
    REQUIRE(kernel.size() == 2);
    for (const auto& v : kernel) {
        Rat s = 0;
        for (std::size_t j = 0; j < 3; ++j) s += m.at(0, j) * v[j];
        CHECK(s == 0);
        IntVec iv;
        for (const auto& c : v) {
            CHECK(c.get_den() == 1);
            iv.push_back(Int(c.get_num()));
        }
        CHECK(vec_gcd(iv) == 1);
    }

    CHECK(kernel_basis(RatMatrix::identity(3)).empty());
}

TEST_CASE("solve handles square, underdetermined and inconsistent systems") {
    RatMatrix m = from_rows({{2, 0}, {0, 4}});
    RatVec x = solve(m, {Rat(1), Rat(2)});
    CHECK(x == RatVec{Rat(1, 2), Rat(1, 2)});

    // Underdetermined but consistent.
    RatMatrix wide = from_rows({{1, 1, 0}, {0, 0, 1}});
    RatVec y = solve(wide, {Rat(3), Rat(5)});
    CHECK(y[0] + y[1] == Rat(3));
    CHECK(y[2] == Rat(5));

    // Inconsistent.
    RatMatrix tall = from_rows({{1, 0}, {1, 0}});
    CHECK_THROWS_AS(solve(tall, {Rat(1), Rat(2)}), ValidationError);
}

TEST_CASE("capacity cap on matrix dimensions") {
    CHECK_THROWS_AS(RatMatrix(kMaxMatrixDim + 1, 2), CapacityError);
    CHECK_THROWS_AS(IntMatrix(2, kMaxMatrixDim + 1), CapacityError);
    CHECK_NOTHROW(RatMatrix(kMaxMatrixDim, kMaxMatrixDim));
}

TEST_CASE("integer matrix round trip and integrality") {
    IntMatrix m(2, 2);
    m.at(0, 0) = Int("123456789123456789");
    m.at(1, 1) = -7;
    RatMatrix r = m.to_rat();
    CHECK(r.is_integral());
    CHECK(IntMatrix::from_rat(r) == m);

    RatMatrix half(1, 1);
    half.at(0, 0) = Rat(1, 2);
    CHECK(!half.is_integral());
    CHECK_THROWS_AS(IntMatrix::from_rat(half), ValidationError);
}

TEST_CASE("random property: inverse and kernel consistency") {
    std::mt19937 rng(20260823);
    std::uniform_int_distribution<long> dist(-9, 9);
    for (int trial = 0; trial < 25; ++trial) {
        RatMatrix m(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) m.at(i, j) = Rat(dist(rng));
        Rat d = det(m);
        if (d != 0) {
            CHECK(m * inverse(m) == RatMatrix::identity(4));
            CHECK(kernel_basis(m).empty());
        } else {
            auto kernel = kernel_basis(m);
            CHECK(rank(m) + kernel.size() == 4);
            for (const auto& v : kernel) {
                RatVec image = m * v;
                for (const auto& c : image) CHECK(c == 0);
            }
        }
    }
}
