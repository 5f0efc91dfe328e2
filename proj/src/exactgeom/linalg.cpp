#include "polynorm/linalg.hpp"

#include <utility>

#include "polynorm/errors.hpp"

namespace polynorm {

RowEchelon rref(const Matrix& m) {
    Matrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t sel = row;
        while (sel < a.rows() && a(sel, col) == 0) ++sel;
        if (sel == a.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(sel, j), a(row, j));
        const Rational inv = 1 / a(row, col);
        for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col) == 0) continue;
            const Rational f = a(i, col);
            for (std::size_t j = col; j < a.cols(); ++j)
                if (a(row, j) != 0) a(i, j) -= f * a(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    Matrix reduced(row, a.cols());
    for (std::size_t i = 0; i < row; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) reduced(i, j) = a(i, j);
    return {std::move(reduced), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::size_t rank(const std::vector<Vec>& vectors, std::size_t dim) {
    if (vectors.empty() || dim == 0) return 0;
    return rank(Matrix::from_rows(dim, vectors));
}

std::vector<Vec> nullspace(const Matrix& m) {
    const RowEchelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const std::size_t n = m.rows();
    const RowEchelon e = rref(hconcat(m, Matrix::identity(n)));
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    if (b.size() != m.rows()) throw Error(ErrorKind::ShapeMismatch, "solve");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    const RowEchelon e = rref(aug);
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
    Vec x(m.cols());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, m.cols());
    return x;
}

std::vector<std::size_t> independent_subset(const std::vector<Vec>& vectors, std::size_t dim) {
    // Incremental elimination against the rows kept so far.
    std::vector<Vec> basis;
    std::vector<std::size_t> lead;
    std::vector<std::size_t> chosen;
    for (std::size_t k = 0; k < vectors.size() && basis.size() < dim; ++k) {
        Vec v = vectors[k];
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (v[lead[b]] == 0) continue;
            const Rational f = v[lead[b]];
            for (std::size_t j = 0; j < dim; ++j)
                if (basis[b][j] != 0) v[j] -= f * basis[b][j];
        }
        std::size_t p = 0;
        while (p < dim && v[p] == 0) ++p;
        if (p == dim) continue;
        const Rational inv = 1 / v[p];
        for (auto& x : v) x *= inv;
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (basis[b][p] == 0) continue;
            const Rational f = basis[b][p];
            for (std::size_t j = 0; j < dim; ++j)
                if (v[j] != 0) basis[b][j] -= f * v[j];
        }
        basis.push_back(std::move(v));
        lead.push_back(p);
        chosen.push_back(k);
    }
    return chosen;
}

}  // namespace polynorm
