#include "ad/linalg.hpp"

#include <cstdio>
#include <cstdlib>

namespace ad {

void internal_failure(const char* file, int line, const std::string& msg) {
    std::fprintf(stderr, "internal inconsistency at %s:%d: %s\n", file, line, msg.c_str());
    std::abort();
}

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat mat_mul(const Mat& x, const Mat& y) {
    AD_INTERNAL_CHECK(x.cols == y.rows, "mat_mul shape mismatch");
    Mat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Rat& v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j)
                if (y.at(k, j) != 0) r.at(i, j) += v * y.at(k, j);
        }
    return r;
}

Vec mat_vec(const Mat& m, const Vec& v) {
    AD_INTERNAL_CHECK(static_cast<size_t>(m.cols) == v.size(), "mat_vec shape mismatch");
    Vec r(m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (m.at(i, j) != 0 && v[j] != 0) r[i] += m.at(i, j) * v[j];
    return r;
}

Mat mat_transpose(const Mat& m) {
    Mat r(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r.at(j, i) = m.at(i, j);
    return r;
}

int rref_inplace(Mat& m) {
    int pivot_row = 0;
    for (int col = 0; col < m.cols && pivot_row < m.rows; ++col) {
        int best = -1;
        size_t best_bits = 0;
        for (int r = pivot_row; r < m.rows; ++r) {
            if (m.at(r, col) == 0) continue;
            size_t bits = rat_bitsize(m.at(r, col));
            if (best < 0 || bits < best_bits) {
                best = r;
                best_bits = bits;
            }
        }
        if (best < 0) continue;
        if (best != pivot_row)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(best, j), m.at(pivot_row, j));
        Rat inv = 1 / m.at(pivot_row, col);
        for (int j = col; j < m.cols; ++j) m.at(pivot_row, j) *= inv;
        for (int r = 0; r < m.rows; ++r) {
            if (r == pivot_row || m.at(r, col) == 0) continue;
            Rat f = m.at(r, col);
            for (int j = col; j < m.cols; ++j) m.at(r, j) -= f * m.at(pivot_row, j);
        }
        ++pivot_row;
    }
    return pivot_row;
}

int rank(Mat m) { return rref_inplace(m); }

Mat nullspace(const Mat& m) {
    Mat r = m;
    int rk = rref_inplace(r);
    std::vector<int> pivot_col_of_row(rk, -1);
    std::vector<bool> is_pivot(m.cols, false);
    for (int row = 0; row < rk; ++row) {
        int lead = -1;
        for (int c = 0; c < m.cols; ++c)
            if (r.at(row, c) != 0) {
                lead = c;
                break;
            }
        AD_INTERNAL_CHECK(lead >= 0, "nullspace pivot scan failed");
        pivot_col_of_row[row] = lead;
        is_pivot[lead] = true;
    }
    Mat basis(m.cols - rk, m.cols);
    int b = 0;
    for (int col = 0; col < m.cols; ++col) {
        if (is_pivot[col]) continue;
        basis.at(b, col) = 1;
        for (int k = 0; k < rk; ++k) basis.at(b, pivot_col_of_row[k]) = -r.at(k, col);
        ++b;
    }
    return basis;
}

bool solve(const Mat& A, const Vec& b, Vec& x) {
    Mat aug(A.rows, A.cols + 1);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = b[i];
    }
    rref_inplace(aug);
    x.assign(A.cols, Rat(0));
    for (int i = 0; i < A.rows; ++i) {
        int lead = -1;
        for (int j = 0; j <= A.cols; ++j)
            if (aug.at(i, j) != 0) {
                lead = j;
                break;
            }
        if (lead < 0) continue;
        if (lead == A.cols) return false;  // 0 = nonzero
        x[lead] = aug.at(i, A.cols);
    }
    // verify (free variables may make back-substitution wrong otherwise)
    Vec check = mat_vec(A, x);
    for (int i = 0; i < A.rows; ++i)
        if (check[i] != b[i]) return false;
    return true;
}

std::optional<Mat> inverse(const Mat& m) {
    if (m.rows != m.cols) return std::nullopt;
    int n = m.rows;
    Mat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    rref_inplace(aug);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (aug.at(i, j) != (i == j ? Rat(1) : Rat(0))) return std::nullopt;
    Mat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

bool vec_is_zero(const Vec& v) {
    for (const Rat& q : v)
        if (q != 0) return false;
    return true;
}

Vec vec_add(const Vec& x, const Vec& y) {
    AD_INTERNAL_CHECK(x.size() == y.size(), "vec_add size mismatch");
    Vec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
}

Vec vec_sub(const Vec& x, const Vec& y) {
    AD_INTERNAL_CHECK(x.size() == y.size(), "vec_sub size mismatch");
    Vec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
}

Vec vec_scale(const Rat& c, const Vec& x) {
    Vec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = c * x[i];
    return r;
}

std::optional<Vec> coords_in_rowspan(const Mat& rref_basis, const Vec& v) {
    // rref rows have leading 1s in distinct columns; peel them off in order.
    Vec rem = v;
    Vec coords(rref_basis.rows, Rat(0));
    for (int i = 0; i < rref_basis.rows; ++i) {
        int lead = -1;
        for (int j = 0; j < rref_basis.cols; ++j)
            if (rref_basis.at(i, j) != 0) {
                lead = j;
                break;
            }
        AD_INTERNAL_CHECK(lead >= 0, "zero row in rref basis");
        coords[i] = rem[lead];
        if (coords[i] != 0)
            for (int j = 0; j < rref_basis.cols; ++j) rem[j] -= coords[i] * rref_basis.at(i, j);
    }
    if (!vec_is_zero(rem)) return std::nullopt;
    return coords;
}

Mat row_span(const std::vector<Vec>& rows, int cols) {
    Mat m(static_cast<int>(rows.size()), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        AD_INTERNAL_CHECK(static_cast<int>(rows[i].size()) == cols, "row_span width mismatch");
        for (int j = 0; j < cols; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
    }
    int rk = rref_inplace(m);
    Mat span(rk, cols);
    for (int i = 0; i < rk; ++i)
        for (int j = 0; j < cols; ++j) span.at(i, j) = m.at(i, j);
    return span;
}

}  // namespace ad
