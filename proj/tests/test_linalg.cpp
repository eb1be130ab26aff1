#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ad/linalg.hpp"

using namespace ad;

static Mat from_rows(const std::vector<std::vector<long>>& rows) {
    Mat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
    return m;
}

TEST_CASE("rref and rank") {
    Mat m = from_rows({{2, 4, 6}, {1, 2, 3}, {0, 1, 1}});
    CHECK(rank(m) == 2);
    int r = rref_inplace(m);
    CHECK(r == 2);
    CHECK(m.at(0, 0) == 1);
    CHECK(m.at(0, 1) == 0);
    CHECK(m.at(0, 2) == 1);
    CHECK(m.at(1, 1) == 1);
    CHECK(m.at(1, 2) == 1);
    for (int j = 0; j < 3; ++j) CHECK(m.at(2, j) == 0);

    CHECK(rank(Mat::identity(5)) == 5);
    Mat z(3, 4);
    CHECK(rank(z) == 0);
}

TEST_CASE("rref with rational pivots") {
    Mat m = from_rows({{0, 3}, {2, 7}});
    m.at(0, 1) = Rat(1, 3);
    rref_inplace(m);
    CHECK(m == Mat::identity(2));
}

TEST_CASE("nullspace") {
    // x + y + z = 0, x - z = 0  ->  kernel spanned by (1, -2, 1)
    Mat m = from_rows({{1, 1, 1}, {1, 0, -1}});
    Mat ns = nullspace(m);
    REQUIRE(ns.rows == 1);
    Vec v = {ns.at(0, 0), ns.at(0, 1), ns.at(0, 2)};
    CHECK(vec_is_zero(mat_vec(m, v)));
    CHECK(!vec_is_zero(v));
    CHECK(v[0] * Rat(-2) == v[1]);
    CHECK(v[0] == v[2]);

    CHECK(nullspace(Mat::identity(4)).rows == 0);
    Mat z(2, 3);
    CHECK(nullspace(z).rows == 3);
}

TEST_CASE("solve") {
    Mat A = from_rows({{1, 2}, {3, 4}});
    Vec b = {Rat(5), Rat(6)};
    Vec x;
    REQUIRE(solve(A, b, x));
    CHECK(x[0] == Rat(-4));
    CHECK(x[1] == Rat(9, 2));

    // inconsistent
    Mat B = from_rows({{1, 1}, {2, 2}});
    Vec c = {Rat(1), Rat(3)};
    CHECK(!solve(B, c, x));

    // underdetermined: free variable pinned to zero, still a solution
    Mat C = from_rows({{1, 1, 1}});
    Vec d = {Rat(7)};
    REQUIRE(solve(C, d, x));
    CHECK(x[0] + x[1] + x[2] == Rat(7));
}

TEST_CASE("inverse") {
    Mat A = from_rows({{2, 1}, {1, 1}});
    auto inv = inverse(A);
    REQUIRE(inv.has_value());
    CHECK(mat_mul(A, *inv) == Mat::identity(2));
    CHECK(mat_mul(*inv, A) == Mat::identity(2));

    Mat S = from_rows({{1, 2}, {2, 4}});
    CHECK(!inverse(S).has_value());
}

TEST_CASE("mat_mul and transpose") {
    Mat A = from_rows({{1, 2, 3}, {4, 5, 6}});
    Mat B = from_rows({{1, 0}, {0, 1}, {1, 1}});
    Mat C = mat_mul(A, B);
    CHECK(C.rows == 2);
    CHECK(C.cols == 2);
    CHECK(C.at(0, 0) == 4);
    CHECK(C.at(0, 1) == 5);
    CHECK(C.at(1, 0) == 10);
    CHECK(C.at(1, 1) == 11);
    Mat At = mat_transpose(A);
    CHECK(At.rows == 3);
    CHECK(At.at(2, 1) == 6);
}

TEST_CASE("coords_in_rowspan and row_span") {
    Mat basis = row_span({{Rat(1), Rat(0), Rat(1)}, {Rat(0), Rat(1), Rat(1)}}, 3);
    REQUIRE(basis.rows == 2);
    auto c = coords_in_rowspan(basis, {Rat(2), Rat(3), Rat(5)});
    REQUIRE(c.has_value());
    CHECK((*c)[0] == 2);
    CHECK((*c)[1] == 3);
    CHECK(!coords_in_rowspan(basis, {Rat(1), Rat(0), Rat(0)}).has_value());

    // span is order-independent
    Mat basis2 = row_span({{Rat(0), Rat(1), Rat(1)}, {Rat(1), Rat(1), Rat(2)}}, 3);
    CHECK(basis == basis2);
}
