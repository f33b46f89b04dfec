#include "courant/linalg.hpp"

namespace courant {

ScalarMat identity_mat(size_t n) {
    ScalarMat m(n, ScalarVec(n, Scalar(0)));
    for (size_t i = 0; i < n; ++i) m[i][i] = Scalar(1);
    return m;
}

ScalarMat mat_mul(const ScalarMat& a, const ScalarMat& b) {
    size_t n = a.size(), k = b.size(), p = k ? b[0].size() : 0;
    ScalarMat r(n, ScalarVec(p, Scalar(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < k; ++j) {
            if (a[i][j].is_zero()) continue;
            for (size_t l = 0; l < p; ++l) r[i][l] += a[i][j] * b[j][l];
        }
    return r;
}

ScalarVec mat_apply(const ScalarMat& a, const ScalarVec& v) {
    ScalarVec r(a.size(), Scalar(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
    return r;
}

ScalarMat mat_transpose(const ScalarMat& a) {
    size_t n = a.size(), m = n ? a[0].size() : 0;
    ScalarMat r(m, ScalarVec(n, Scalar(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) r[j][i] = a[i][j];
    return r;
}

std::vector<size_t> rref(ScalarMat& m) {
    std::vector<size_t> pivots;
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Scalar inv = Scalar(1) / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Scalar f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

size_t rank(ScalarMat m) { return rref(m).size(); }

std::vector<ScalarVec> kernel_basis(const ScalarMat& m_in) {
    ScalarMat m = m_in;
    size_t cols = m.empty() ? 0 : m[0].size();
    auto pivots = rref(m);
    std::vector<char> is_pivot(cols, 0);
    for (size_t c : pivots) is_pivot[c] = 1;
    std::vector<ScalarVec> basis;
    for (size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        ScalarVec v(cols, Scalar(0));
        v[c] = Scalar(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

ScalarMat mat_inverse(const ScalarMat& m_in) {
    size_t n = m_in.size();
    ScalarMat aug(n, ScalarVec(2 * n, Scalar(0)));
    for (size_t i = 0; i < n; ++i) {
        if (m_in[i].size() != n) throw ValidationError("inverse of non-square matrix");
        for (size_t j = 0; j < n; ++j) aug[i][j] = m_in[i][j];
        aug[i][n + i] = Scalar(1);
    }
    auto pivots = rref(aug);
    if (pivots.size() != n || (n && pivots[n - 1] >= n))
        throw ValidationError("singular matrix");
    ScalarMat inv(n, ScalarVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

bool solve(const ScalarMat& m, const ScalarVec& b, ScalarVec& x) {
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    ScalarMat aug(rows, ScalarVec(cols + 1, Scalar(0)));
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j) aug[i][j] = m[i][j];
        aug[i][cols] = b[i];
    }
    auto pivots = rref(aug);
    x.assign(cols, Scalar(0));
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == cols) return false; // inconsistent
        x[pivots[r]] = aug[r][cols];
    }
    return true;
}

bool in_row_span(const ScalarMat& m, const ScalarVec& v) {
    ScalarVec x;
    return solve(mat_transpose(m), v, x);
}

std::vector<ScalarVec> row_space_basis(const std::vector<ScalarVec>& rows) {
    ScalarMat m = rows;
    rref(m);
    std::vector<ScalarVec> basis;
    for (auto& r : m) {
        bool nz = false;
        for (auto& s : r)
            if (!s.is_zero()) { nz = true; break; }
        if (nz) basis.push_back(r);
    }
    return basis;
}

} // namespace courant
