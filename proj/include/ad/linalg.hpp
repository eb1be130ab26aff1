#pragma once

#include <optional>
#include <vector>

#include "ad/rational.hpp"

namespace ad {

// Dense exact-rational matrix.
struct Mat {
    int rows = 0, cols = 0;
    std::vector<Rat> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n);
    bool operator==(const Mat&) const = default;
};

Mat mat_mul(const Mat& x, const Mat& y);
Vec mat_vec(const Mat& m, const Vec& v);
Mat mat_transpose(const Mat& m);

// Reduced row echelon form in place; returns rank. Pivot choice: nonzero
// entry of smallest bit size in the column, ties broken by lowest row index.
int rref_inplace(Mat& m);
int rank(Mat m);

// Rows span the kernel of m (as row vectors x with m x = 0).
Mat nullspace(const Mat& m);

// Solve A x = b; returns false when inconsistent. A need not be square;
// when underdetermined the free variables are set to zero.
bool solve(const Mat& A, const Vec& b, Vec& x);

std::optional<Mat> inverse(const Mat& m);

bool vec_is_zero(const Vec& v);
Vec vec_add(const Vec& x, const Vec& y);
Vec vec_sub(const Vec& x, const Vec& y);
Vec vec_scale(const Rat& c, const Vec& x);

// Coordinates of v in the row span of an RREF basis; nullopt when v is
// outside the span.
std::optional<Vec> coords_in_rowspan(const Mat& rref_basis, const Vec& v);

// Row-reduce the concatenation of the given row sets and return the RREF
// basis of their joint span.
Mat row_span(const std::vector<Vec>& rows, int cols);

}  // namespace ad
