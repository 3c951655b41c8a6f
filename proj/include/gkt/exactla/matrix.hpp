#pragma once

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "gkt/errors.hpp"
#include "gkt/exactla/field.hpp"

namespace gkt {

template <class F>
using Vector = std::vector<typename F::Element>;

/// Dense row-major matrix over a field F. Every entry lives in the same field.
template <class F>
class Matrix {
public:
    using Element = typename F::Element;

    explicit Matrix(F field, std::size_t rows = 0, std::size_t cols = 0)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

    static Matrix identity(F field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
        return m;
    }

    static Matrix from_rows(F field, const std::vector<std::vector<std::int64_t>>& rows) {
        std::size_t r = rows.size();
        std::size_t c = r ? rows.front().size() : 0;
        Matrix m(field, r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw InvalidArgument("ragged matrix literal");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = field.from_int(rows[i][j]);
        }
        return m;
    }

    /// Column matrix from a vector.
    static Matrix column(F field, const Vector<F>& v) {
        Matrix m(field, v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
        return m;
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    static Matrix from_columns(F field, std::size_t rows, const std::vector<Vector<F>>& cols) {
        Matrix m(field, rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            assert(cols[j].size() == rows);
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    const F& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Element& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Element& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Element* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
    const Element* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }
    const std::vector<Element>& data() const { return data_; }

    Vector<F> row(std::size_t i) const { return Vector<F>(row_ptr(i), row_ptr(i) + cols_); }
    Vector<F> col(std::size_t j) const {
        Vector<F> v(rows_, field_.zero());
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    bool is_zero() const {
        for (const auto& e : data_)
            if (!field_.is_zero(e)) return false;
        return true;
    }
    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!field_.eq((*this)(i, j), i == j ? field_.one() : field_.zero())) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        assert(r0 + nr <= rows_ && c0 + nc <= cols_);
        Matrix b(field_, nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        assert(r0 + b.rows() <= rows_ && c0 + b.cols() <= cols_);
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    Matrix select_columns(const std::vector<std::size_t>& idx) const {
        Matrix m(field_, rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < idx.size(); ++k) m(i, k) = (*this)(i, idx[k]);
        return m;
    }
    Matrix select_rows(const std::vector<std::size_t>& idx) const {
        Matrix m(field_, idx.size(), cols_);
        for (std::size_t k = 0; k < idx.size(); ++k)
            for (std::size_t j = 0; j < cols_; ++j) m(k, j) = (*this)(idx[k], j);
        return m;
    }

    Matrix scaled(const Element& c) const {
        Matrix m = *this;
        for (auto& e : m.data_) e = field_.mul(c, e);
        return m;
    }

    Vector<F> apply(const Vector<F>& v) const {
        assert(v.size() == cols_);
        Vector<F> out(rows_, field_.zero());
        for (std::size_t i = 0; i < rows_; ++i) {
            Element acc = field_.zero();
            const Element* r = row_ptr(i);
            for (std::size_t j = 0; j < cols_; ++j)
                if (!field_.is_zero(v[j])) acc = field_.add(acc, field_.mul(r[j], v[j]));
            out[i] = acc;
        }
        return out;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw InvalidArgument("matrix product: shape mismatch");
        const F& f = a.field_;
        Matrix c(f, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            Element* crow = c.row_ptr(i);
            const Element* arow = a.row_ptr(i);
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Element& aik = arow[k];
                if (f.is_zero(aik)) continue;
                const Element* brow = b.row_ptr(k);
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!f.is_zero(brow[j])) crow[j] = f.add(crow[j], f.mul(aik, brow[j]));
            }
        }
        return c;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("matrix sum: shape mismatch");
        Matrix c = a;
        for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = a.field_.add(a.data_[k], b.data_[k]);
        return c;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("matrix difference: shape mismatch");
        Matrix c = a;
        for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = a.field_.sub(a.data_[k], b.data_[k]);
        return c;
    }

    Matrix operator-() const {
        Matrix c = *this;
        for (auto& e : c.data_) e = field_.neg(e);
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i ? ",[" : "[");
            for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << field_.to_string((*this)(i, j));
            os << "]";
        }
        os << "]";
        return os.str();
    }

private:
    F field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Element> data_;
};

/// Block-diagonal sum of two matrices.
template <class F>
Matrix<F> block_diagonal(const Matrix<F>& a, const Matrix<F>& b) {
    Matrix<F> m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

template <class F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows()) throw InvalidArgument("hstack: row mismatch");
    Matrix<F> m(a.field(), a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

template <class F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.cols() != b.cols()) throw InvalidArgument("vstack: column mismatch");
    Matrix<F> m(a.field(), a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

/// Kronecker product a ⊗ b.
template <class F>
Matrix<F> kronecker(const Matrix<F>& a, const Matrix<F>& b) {
    const F& f = a.field();
    Matrix<F> m(f, a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (f.is_zero(a(i, j))) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    m(i * b.rows() + k, j * b.cols() + l) = f.mul(a(i, j), b(k, l));
        }
    return m;
}

}  // namespace gkt
