#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "arithdyn/snf.hpp"

using namespace arithdyn;

namespace {

IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = Int(rows[i][j]);
    return m;
}

void check_invariants(const IntMatrix& m, const SnfResult& snf) {
    CHECK(snf.u * m * snf.v == snf.d);
    Int du = det(snf.u), dv = det(snf.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    // Diagonal, nonnegative, divisibility chain.
    for (std::size_t i = 0; i < snf.d.rows(); ++i)
        for (std::size_t j = 0; j < snf.d.cols(); ++j)
            if (i != j) CHECK(snf.d.at(i, j) == 0);
    std::size_t n = std::min(snf.d.rows(), snf.d.cols());
    for (std::size_t i = 0; i < n; ++i) CHECK(snf.d.at(i, i) >= 0);
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (snf.d.at(i + 1, i + 1) != 0) {
            REQUIRE(snf.d.at(i, i) != 0);
            CHECK(snf.d.at(i + 1, i + 1) % snf.d.at(i, i) == 0);
        }
}

} // namespace

TEST_CASE("known Smith normal forms") {
    IntMatrix m = from_rows({{2, 4}, {6, 8}});
    SnfResult snf = smith_normal_form(m);
    check_invariants(m, snf);
    CHECK(snf.rank == 2);
    CHECK(snf.d.at(0, 0) == 2);
    CHECK(snf.d.at(1, 1) == 4);

    IntMatrix diag = from_rows({{6, 0}, {0, 4}});
    SnfResult s2 = smith_normal_form(diag);
    check_invariants(diag, s2);
    CHECK(s2.d.at(0, 0) == 2);
    CHECK(s2.d.at(1, 1) == 12);

    // The ray-pairing matrix of the projective plane: cokernel Z (free).
    IntMatrix p2 = from_rows({{1, 0}, {0, 1}, {-1, -1}});
    SnfResult s3 = smith_normal_form(p2);
    check_invariants(p2, s3);
    CHECK(s3.rank == 2);
    CHECK(s3.d.at(0, 0) == 1);
    CHECK(s3.d.at(1, 1) == 1);
}

TEST_CASE("torsion cokernel") {
    // Z^2 / <(1,1), (1,-1)> = Z/2.
    IntMatrix m = from_rows({{1, 1}, {1, -1}});
    SnfResult snf = smith_normal_form(m);
    check_invariants(m, snf);
    CHECK(snf.d.at(0, 0) == 1);
    CHECK(snf.d.at(1, 1) == 2);
}

TEST_CASE("zero and rank-deficient matrices") {
    IntMatrix z(2, 3);
    SnfResult snf = smith_normal_form(z);
    check_invariants(z, snf);
    CHECK(snf.rank == 0);

    IntMatrix r1 = from_rows({{2, 4, 6}, {1, 2, 3}});
    SnfResult s = smith_normal_form(r1);
    check_invariants(r1, s);
    CHECK(s.rank == 1);
    CHECK(s.d.at(0, 0) == 1);
}

TEST_CASE("random property: SNF self-verifies") {
    std::mt19937 rng(987654321);
    std::uniform_int_distribution<long> dist(-20, 20);
    std::uniform_int_distribution<std::size_t> size(1, 5);
    for (int trial = 0; trial < 50; ++trial) {
        IntMatrix m(size(rng), size(rng));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = Int(dist(rng));
        SnfResult snf = smith_normal_form(m);
        check_invariants(m, snf);
    }
}
