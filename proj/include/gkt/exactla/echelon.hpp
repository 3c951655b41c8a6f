#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "gkt/exactla/matrix.hpp"

namespace gkt {

/// Fully reduced row echelon form together with its pivot columns.
template <class F>
struct Echelon {
    Matrix<F> rref;
    std::vector<std::size_t> pivots;  // pivot column of row i, increasing
    std::size_t rank() const { return pivots.size(); }
};

template <class F>
Echelon<F> echelon(Matrix<F> m) {
    const F& f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && f.is_zero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        auto inv = f.inv(m(r, c));
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
        const auto* prow = m.row_ptr(r);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || f.is_zero(m(i, c))) continue;
            auto factor = m(i, c);
            auto* irow = m.row_ptr(i);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!f.is_zero(prow[j])) irow[j] = f.sub(irow[j], f.mul(factor, prow[j]));
        }
        pivots.push_back(c);
        ++r;
    }
    Matrix<F> reduced = m.block(0, 0, r, m.cols());
    return Echelon<F>{std::move(reduced), std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
    return echelon(m).rank();
}

template <class F>
struct KernelResult {
    std::size_t rank = 0;
    std::vector<Vector<F>> kernel_basis;
};

/// Rank and a canonical kernel basis: the unique basis that restricts to the
/// identity on the free (non-pivot) columns, ordered by free column.
template <class F>
KernelResult<F> rank_kernel(const Matrix<F>& m) {
    const F& f = m.field();
    Echelon<F> e = echelon(m);
    KernelResult<F> out;
    out.rank = e.rank();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivots) is_pivot[c] = true;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (is_pivot[j]) continue;
        Vector<F> v(m.cols(), f.zero());
        v[j] = f.one();
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = f.neg(e.rref(i, j));
        out.kernel_basis.push_back(std::move(v));
    }
    return out;
}

/// Kernel basis as the columns of a matrix.
template <class F>
Matrix<F> kernel_matrix(const Matrix<F>& m) {
    auto k = rank_kernel(m);
    return Matrix<F>::from_columns(m.field(), m.cols(), k.kernel_basis);
}

/// Solve a·x = b. Empty iff b is outside the column space of a.
template <class F>
std::optional<Vector<F>> solve(const Matrix<F>& a, const Vector<F>& b) {
    if (b.size() != a.rows()) throw InvalidArgument("solve: right-hand side has wrong length");
    const F& f = a.field();
    Matrix<F> aug(f, a.rows(), a.cols() + 1);
    aug.set_block(0, 0, a);
    for (std::size_t i = 0; i < a.rows(); ++i) aug(i, a.cols()) = b[i];
    Echelon<F> e = echelon(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
    Vector<F> x(a.cols(), f.zero());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.rref(i, a.cols());
    return x;
}

/// Solve a·X = b for a matrix X (all columns at once).
template <class F>
std::optional<Matrix<F>> solve_matrix(const Matrix<F>& a, const Matrix<F>& b) {
    if (b.rows() != a.rows()) throw InvalidArgument("solve_matrix: shape mismatch");
    const F& f = a.field();
    Echelon<F> e = echelon(hstack(a, b));
    std::size_t n = a.cols();
    for (auto p : e.pivots)
        if (p >= n) return std::nullopt;
    Matrix<F> x(f, n, b.cols());
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[i], j) = e.rref(i, n + j);
    return x;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    auto x = solve_matrix(m, Matrix<F>::identity(m.field(), m.rows()));
    if (!x || rank(m) != m.rows()) return std::nullopt;
    return x;
}

template <class F>
bool is_invertible(const Matrix<F>& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

template <class F>
typename F::Element determinant(Matrix<F> m) {
    const F& f = m.field();
    if (m.rows() != m.cols()) throw InvalidArgument("determinant of a non-square matrix");
    auto det = f.one();
    std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && f.is_zero(m(p, c))) ++p;
        if (p == n) return f.zero();
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = f.neg(det);
        }
        det = f.mul(det, m(c, c));
        auto inv = f.inv(m(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            if (f.is_zero(m(i, c))) continue;
            auto factor = f.mul(m(i, c), inv);
            for (std::size_t j = c; j < n; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(c, j)));
        }
    }
    return det;
}

/// Columns of `m` forming a basis of its column space (the pivot columns).
template <class F>
Matrix<F> column_space_basis(const Matrix<F>& m) {
    return m.select_columns(echelon(m).pivots);
}

/// A subspace of F^n kept as fully reduced echelon rows. Supports
/// incremental insertion and reduction of vectors modulo the subspace.
template <class F>
class Subspace {
public:
    Subspace(F field, std::size_t ambient) : field_(field), n_(ambient) {}

    std::size_t ambient() const { return n_; }
    std::size_t dim() const { return rows_.size(); }
    const std::vector<Vector<F>>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Remainder of v after eliminating every pivot coordinate.
    Vector<F> reduce(Vector<F> v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            auto c = v[pivots_[i]];
            if (field_.is_zero(c)) continue;
            const auto& r = rows_[i];
            for (std::size_t j = pivots_[i]; j < n_; ++j)
                if (!field_.is_zero(r[j])) v[j] = field_.sub(v[j], field_.mul(c, r[j]));
        }
        return v;
    }

    bool contains(const Vector<F>& v) const {
        auto r = reduce(v);
        for (const auto& e : r)
            if (!field_.is_zero(e)) return false;
        return true;
    }

    /// Inserts v; returns false if it was already in the span.
    bool insert(const Vector<F>& v) {
        auto r = reduce(v);
        std::size_t lead = 0;
        while (lead < n_ && field_.is_zero(r[lead])) ++lead;
        if (lead == n_) return false;
        auto inv = field_.inv(r[lead]);
        for (std::size_t j = lead; j < n_; ++j) r[j] = field_.mul(r[j], inv);
        for (auto& row : rows_) {
            auto c = row[lead];
            if (field_.is_zero(c)) continue;
            for (std::size_t j = lead; j < n_; ++j)
                if (!field_.is_zero(r[j])) row[j] = field_.sub(row[j], field_.mul(c, r[j]));
        }
        auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
        pivots_.insert(pivots_.begin() + pos, lead);
        rows_.insert(rows_.begin() + pos, std::move(r));
        return true;
    }

    /// Coordinates not used as pivots: a canonical complement basis.
    std::vector<std::size_t> free_coordinates() const {
        std::vector<bool> piv(n_, false);
        for (auto p : pivots_) piv[p] = true;
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < n_; ++j)
            if (!piv[j]) out.push_back(j);
        return out;
    }

    /// Coordinates of v modulo the subspace, in the free-coordinate basis.
    Vector<F> quotient_coordinates(const Vector<F>& v) const {
        auto r = reduce(v);
        Vector<F> q;
        for (auto j : free_coordinates()) q.push_back(r[j]);
        return q;
    }

private:
    F field_;
    std::size_t n_;
    std::vector<Vector<F>> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace gkt
