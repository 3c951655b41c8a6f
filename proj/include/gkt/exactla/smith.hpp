#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "gkt/errors.hpp"
#include "gkt/exactla/field.hpp"

namespace gkt {

/// Dense integer matrix with arbitrary-precision entries.
class MatZ {
public:
    MatZ(std::size_t rows = 0, std::size_t cols = 0) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static MatZ identity(std::size_t n) {
        MatZ m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static MatZ from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols = 0) {
        std::size_t c = rows.empty() ? cols : rows.front().size();
        MatZ m(rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c) throw InvalidArgument("ragged integer matrix");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    /// row[dst] += k * row[src]
    void add_row(std::size_t dst, std::size_t src, const Integer& k) {
        if (k == 0) return;
        for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
    }
    /// col[dst] += k * col[src]
    void add_col(std::size_t dst, std::size_t src, const Integer& k) {
        if (k == 0) return;
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
    }
    void negate_row(std::size_t r) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
    }

    friend MatZ operator*(const MatZ& a, const MatZ& b) {
        if (a.cols_ != b.rows_) throw InvalidArgument("integer matrix product: shape mismatch");
        MatZ c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }
    friend bool operator==(const MatZ& a, const MatZ& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Integer> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(MatZ m) {
    if (m.rows() != m.cols()) throw InvalidArgument("determinant of a non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

struct SmithForm {
    MatZ u;      // unimodular, rows x rows
    MatZ s;      // diagonal, d1 | d2 | ..., nonnegative
    MatZ v;      // unimodular, cols x cols
    MatZ v_inv;  // inverse of v
};

/// Smith normal form u·m·v = s. Pivot rule: smallest nonzero absolute
/// value in the active submatrix, ties broken row-major.
inline SmithForm smith_normal_form(const MatZ& m) {
    const std::size_t r = m.rows(), c = m.cols();
    SmithForm out{MatZ::identity(r), m, MatZ::identity(c), MatZ::identity(c)};
    MatZ& s = out.s;
    MatZ& u = out.u;
    MatZ& v = out.v;
    MatZ& vi = out.v_inv;

    auto swap_cols = [&](std::size_t a, std::size_t b) {
        s.swap_cols(a, b);
        v.swap_cols(a, b);
        vi.swap_rows(a, b);
    };
    auto swap_rows = [&](std::size_t a, std::size_t b) {
        s.swap_rows(a, b);
        u.swap_rows(a, b);
    };
    // col[dst] += k col[src]; inverse: row[src] -= k row[dst] on v_inv
    auto add_col = [&](std::size_t dst, std::size_t src, const Integer& k) {
        s.add_col(dst, src, k);
        v.add_col(dst, src, k);
        vi.add_row(src, dst, -k);
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const Integer& k) {
        s.add_row(dst, src, k);
        u.add_row(dst, src, k);
    };

    const std::size_t n = std::min(r, c);
    for (std::size_t t = 0; t < n; ++t) {
        while (true) {
            bool found = false;
            std::size_t pi = 0, pj = 0;
            Integer best;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j) {
                    if (s(i, j) == 0) continue;
                    Integer a = abs(s(i, j));
                    if (!found || a < best) {
                        found = true;
                        best = a;
                        pi = i;
                        pj = j;
                    }
                }
            if (!found) goto finished;
            swap_rows(t, pi);
            swap_cols(t, pj);

            bool remainder = false;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (s(i, t) == 0) continue;
                Integer q = s(i, t) / s(t, t);
                add_row(i, t, -q);
                if (s(i, t) != 0) remainder = true;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (s(t, j) == 0) continue;
                Integer q = s(t, j) / s(t, t);
                add_col(j, t, -q);
                if (s(t, j) != 0) remainder = true;
            }
            if (remainder) continue;

            bool divisible = true;
            for (std::size_t i = t + 1; i < r && divisible; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (s(i, j) % s(t, t) != 0) {
                        add_row(t, i, 1);
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (s(t, t) < 0) {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
finished:
    return out;
}

/// Finitely generated abelian group: Z^free_rank ⊕ ⊕ Z/d_i.
struct AbelianGroupDescription {
    std::size_t free_rank = 0;
    std::vector<Integer> invariant_factors;  // each >= 2, d_i | d_{i+1}
    std::vector<std::string> generators;     // one per cyclic factor: torsion first, then free

    bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }

    /// Same isomorphism type (generator labels ignored).
    bool same_group(const AbelianGroupDescription& o) const {
        return free_rank == o.free_rank && invariant_factors == o.invariant_factors;
    }

    std::string to_string() const {
        if (is_trivial()) return "0";
        std::string out;
        for (const auto& d : invariant_factors) out += (out.empty() ? "" : " + ") + ("Z/" + d.str());
        if (free_rank == 1) out += (out.empty() ? "" : " + ") + std::string("Z");
        else if (free_rank > 1) out += std::string(out.empty() ? "" : " + ") + "Z^" + std::to_string(free_rank);
        return out;
    }
    bool operator==(const AbelianGroupDescription&) const = default;
};

namespace detail {
inline std::string linear_combination_label(const std::vector<Integer>& coeffs,
                                            const std::vector<std::string>& labels) {
    std::string out;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        const Integer& k = coeffs[j];
        if (k == 0) continue;
        Integer a = abs(k);
        std::string term = (a == 1 ? std::string() : a.str() + "*") + labels[j];
        if (out.empty()) out = (k < 0 ? "-" : "") + term;
        else out += (k < 0 ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}
}  // namespace detail

/// Cokernel of the relation matrix (rows = relations, columns = generators).
inline AbelianGroupDescription group_from_presentation(const std::vector<std::string>& generators,
                                                       const MatZ& relations) {
    const std::size_t n = generators.size();
    if (relations.rows() > 0 && relations.cols() != n)
        throw InvalidArgument("relation matrix has " + std::to_string(relations.cols()) + " columns for " +
                              std::to_string(n) + " generators");
    MatZ rel = relations.rows() > 0 ? relations : MatZ(0, n);
    SmithForm snf = smith_normal_form(rel);
    AbelianGroupDescription g;
    std::vector<std::size_t> torsion_idx, free_idx;
    for (std::size_t i = 0; i < n; ++i) {
        Integer d = i < std::min(rel.rows(), n) ? snf.s(i, i) : Integer(0);
        if (d == 0) free_idx.push_back(i);
        else if (d != 1) {
            torsion_idx.push_back(i);
            g.invariant_factors.push_back(d);
        }
    }
    g.free_rank = free_idx.size();
    // In coordinates y = x·v the relations become diagonal, so the cyclic
    // factor i is generated by row i of v^{-1}.
    auto label_row = [&](std::size_t i) {
        std::vector<Integer> coeffs(n);
        for (std::size_t j = 0; j < n; ++j) coeffs[j] = snf.v_inv(i, j);
        return detail::linear_combination_label(coeffs, generators);
    };
    for (auto i : torsion_idx) g.generators.push_back(label_row(i));
    for (auto i : free_idx) g.generators.push_back(label_row(i));
    return g;
}

}  // namespace gkt
