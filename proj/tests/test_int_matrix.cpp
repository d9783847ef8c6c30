#include "essx/int_matrix.hpp"

#include <doctest.h>

#include <random>

using namespace essx;

namespace {

IntMatrix rand_matrix(std::mt19937_64& rng, std::size_t max_dim, long long max_abs) {
    std::size_t r = 1 + rng() % max_dim, c = 1 + rng() % max_dim;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m.at(i, j) = Int(static_cast<long long>(rng() % (2 * max_abs + 1)) - max_abs);
    return m;
}

}  // namespace

TEST_SUITE("int_matrix") {

TEST_CASE("smith normal form of the identity") {
    IntMatrix a = IntMatrix::identity(3);
    SmithForm f = smith_normal_form(a);
    CHECK(f.s == a);
    CHECK(f.u == IntMatrix::identity(3));
    CHECK(f.v == IntMatrix::identity(3));
}

TEST_CASE("smith normal form 2x2 worked case") {
    IntMatrix a = IntMatrix::from_rows({{2, 4}, {6, 8}});
    SmithForm f = smith_normal_form(a);
    CHECK(f.s.at(0, 0) == 2);
    CHECK(f.s.at(1, 1) == 4);
    CHECK(f.s.at(0, 1) == 0);
    CHECK(f.s.at(1, 0) == 0);
    CHECK(f.u * a * f.v == f.s);
    CHECK(abs_int(determinant(f.u)) == 1);
    CHECK(abs_int(determinant(f.v)) == 1);
}

TEST_CASE("smith normal form of a zero matrix") {
    IntMatrix a(2, 3);
    SmithForm f = smith_normal_form(a);
    CHECK(f.s == a);
    CHECK(f.u == IntMatrix::identity(2));
    CHECK(f.v == IntMatrix::identity(3));
}

TEST_CASE("smith normal form handles empty shapes") {
    for (auto [r, c] : {std::pair<std::size_t, std::size_t>{0, 0}, {0, 3}, {3, 0}}) {
        IntMatrix a(r, c);
        SmithForm f = smith_normal_form(a);
        CHECK(f.s.rows() == r);
        CHECK(f.s.cols() == c);
    }
}

TEST_CASE("smith property suite") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 250; ++iter) {
        IntMatrix a = rand_matrix(rng, 8, 50);
        SmithForm f = smith_normal_form(a);
        REQUIRE(f.u * a * f.v == f.s);
        REQUIRE(abs_int(determinant(f.u)) == 1);
        REQUIRE(abs_int(determinant(f.v)) == 1);
        REQUIRE(f.u * f.ui == IntMatrix::identity(a.rows()));
        REQUIRE(f.v * f.vi == IntMatrix::identity(a.cols()));
        std::size_t bound = std::min(a.rows(), a.cols());
        for (std::size_t i = 0; i + 1 < bound; ++i) {
            const Int& d = f.s.at(i, i);
            const Int& e = f.s.at(i + 1, i + 1);
            REQUIRE(d >= 0);
            if (d == 0)
                REQUIRE(e == 0);
            else
                REQUIRE(e % d == 0);
        }
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (i != j) REQUIRE(f.s.at(i, j) == 0);
    }
}

TEST_CASE("solve_linear finds exact solutions and detects unsolvable systems") {
    IntMatrix a = IntMatrix::from_rows({{2, 0}, {0, 3}});
    LinearSolve ok = solve_linear(a, IntMatrix::column({4, 9}));
    REQUIRE(ok.solvable);
    CHECK(a * ok.solution == IntMatrix::column({4, 9}));
    CHECK_FALSE(solve_linear(a, IntMatrix::column({1, 0})).solvable);

    // random consistency: a * x = a * y is always solvable and exact
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 100; ++iter) {
        IntMatrix m = rand_matrix(rng, 5, 9);
        IntMatrix y(m.cols(), 2);
        for (std::size_t i = 0; i < y.rows(); ++i)
            for (std::size_t j = 0; j < 2; ++j)
                y.at(i, j) = Int(static_cast<long long>(rng() % 11) - 5);
        IntMatrix b = m * y;
        LinearSolve sol = solve_linear(m, b);
        REQUIRE(sol.solvable);
        REQUIRE(m * sol.solution == b);
    }
}

TEST_CASE("kernel_basis spans the kernel") {
    std::mt19937_64 rng(13);
    for (int iter = 0; iter < 100; ++iter) {
        IntMatrix m = rand_matrix(rng, 5, 7);
        IntMatrix k = kernel_basis(m);
        REQUIRE((m * k).is_zero());
        // every kernel column recovered by solving is in the span
        if (k.cols() > 0) REQUIRE(span_contains(k, k));
    }
}

TEST_CASE("determinant is exact") {
    CHECK(determinant(IntMatrix::identity(4)) == 1);
    CHECK(determinant(IntMatrix::from_rows({{2, 1}, {7, 4}})) == 1);
    CHECK(determinant(IntMatrix::from_rows({{2, 4}, {6, 8}})) == -8);
    CHECK(determinant(IntMatrix(3, 3)) == 0);
}

}  // TEST_SUITE
