#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gkt/exactla/echelon.hpp"
#include "gkt/presentation/quiver.hpp"

namespace gkt {

/// Basis, structure constants and bookkeeping of a finite-dimensional
/// quotient of a path algebra. Basis elements are paths.
template <class F>
struct AlgebraData {
    F field;
    std::string name;
    Quiver quiver;
    std::vector<Relation<F>> relations;
    std::vector<Path> basis;
    std::vector<Vector<F>> table;  // table[i * dim + j] = b_i * b_j
    std::vector<std::size_t> idempotent;                   // e_v -> basis index
    std::vector<std::size_t> arrow_element;                // arrow -> basis index
    bool is_monomial = true;
    std::size_t loewy_length = 0;
    std::size_t nilpotency_index = 0;  // every path of this length lies in the ideal
};

/// Immutable handle on a finite-dimensional algebra together with its
/// opposite. `opposite()` swaps the two, so the double opposite is the
/// original object and modules over it can be used interchangeably.
template <class F>
class Algebra {
public:
    using Element = typename F::Element;

    Algebra() = default;
    Algebra(std::shared_ptr<const AlgebraData<F>> self, std::shared_ptr<const AlgebraData<F>> op)
        : self_(std::move(self)), op_(std::move(op)) {}

    const AlgebraData<F>& data() const { return *self_; }
    const F& field() const { return self_->field; }
    const std::string& name() const { return self_->name; }
    const Quiver& quiver() const { return self_->quiver; }
    std::size_t num_vertices() const { return self_->quiver.num_vertices(); }
    std::size_t num_arrows() const { return self_->quiver.num_arrows(); }
    std::size_t dim() const { return self_->basis.size(); }
    const std::vector<Path>& basis() const { return self_->basis; }
    const Path& basis_path(std::size_t i) const { return self_->basis[i]; }
    const std::vector<Relation<F>>& relations() const { return self_->relations; }
    bool is_monomial() const { return self_->is_monomial; }
    std::size_t loewy_length() const { return self_->loewy_length; }
    std::size_t idempotent(std::size_t v) const { return self_->idempotent.at(v); }
    std::size_t arrow_element(std::size_t a) const { return self_->arrow_element.at(a); }

    const Vector<F>& product(std::size_t i, std::size_t j) const { return self_->table[i * dim() + j]; }

    Vector<F> basis_vector(std::size_t i) const {
        Vector<F> v(dim(), field().zero());
        v[i] = field().one();
        return v;
    }
    Vector<F> zero_element() const { return Vector<F>(dim(), field().zero()); }
    Vector<F> unit() const {
        Vector<F> u = zero_element();
        for (std::size_t v = 0; v < num_vertices(); ++v) u[idempotent(v)] = field().one();
        return u;
    }

    Vector<F> multiply(const Vector<F>& x, const Vector<F>& y) const {
        const F& f = field();
        Vector<F> out = zero_element();
        for (std::size_t i = 0; i < dim(); ++i) {
            if (f.is_zero(x[i])) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (f.is_zero(y[j])) continue;
                auto c = f.mul(x[i], y[j]);
                const auto& p = product(i, j);
                for (std::size_t k = 0; k < dim(); ++k)
                    if (!f.is_zero(p[k])) out[k] = f.add(out[k], f.mul(c, p[k]));
            }
        }
        return out;
    }

    /// Image of an arbitrary path in the algebra.
    Vector<F> path_element(const Path& p) const {
        Vector<F> x = basis_vector(idempotent(p.source));
        for (auto it = p.word.rbegin(); it != p.word.rend(); ++it) x = multiply(basis_vector(arrow_element(*it)), x);
        return x;
    }

    /// Matrix of y -> x*y on the basis.
    Matrix<F> left_multiplication(const Vector<F>& x) const {
        Matrix<F> m(field(), dim(), dim());
        for (std::size_t j = 0; j < dim(); ++j) {
            auto col = multiply(x, basis_vector(j));
            for (std::size_t i = 0; i < dim(); ++i) m(i, j) = col[i];
        }
        return m;
    }

    Algebra opposite() const { return Algebra(op_, self_); }
    bool same_as(const Algebra& o) const { return self_ == o.self_; }
    bool valid() const { return static_cast<bool>(self_); }

    std::string basis_label(std::size_t i) const { return basis_path(i).to_string(quiver()); }

private:
    std::shared_ptr<const AlgebraData<F>> self_;
    std::shared_ptr<const AlgebraData<F>> op_;
};

namespace detail {

template <class F>
std::size_t compute_loewy_length(const AlgebraData<F>& d) {
    const F& f = d.field;
    const std::size_t n = d.basis.size();
    auto mul_basis = [&](const Vector<F>& x, std::size_t j) {
        Vector<F> out(n, f.zero());
        for (std::size_t i = 0; i < n; ++i) {
            if (f.is_zero(x[i])) continue;
            const auto& p = d.table[i * n + j];
            for (std::size_t k = 0; k < n; ++k)
                if (!f.is_zero(p[k])) out[k] = f.add(out[k], f.mul(x[i], p[k]));
        }
        return out;
    };
    std::vector<std::size_t> radical_basis;
    for (std::size_t i = 0; i < n; ++i)
        if (!d.basis[i].is_trivial()) radical_basis.push_back(i);
    if (n == 0) return 0;
    // power = rad^k as a list of spanning vectors kept in echelon form
    Subspace<F> power(f, n);
    for (auto i : radical_basis) {
        Vector<F> v(n, f.zero());
        v[i] = f.one();
        power.insert(v);
    }
    std::size_t k = 1;
    while (power.dim() > 0) {
        Subspace<F> next(f, n);
        for (const auto& row : power.rows())
            for (auto j : radical_basis) next.insert(mul_basis(row, j));
        power = std::move(next);
        ++k;
    }
    return k;
}

template <class F>
void finish_algebra(AlgebraData<F>& d) {
    const std::size_t nv = d.quiver.num_vertices();
    d.idempotent.assign(nv, 0);
    d.arrow_element.assign(d.quiver.num_arrows(), 0);
    std::map<Path, std::size_t> where;
    for (std::size_t i = 0; i < d.basis.size(); ++i) where[d.basis[i]] = i;
    for (std::size_t v = 0; v < nv; ++v) d.idempotent[v] = where.at(Path::trivial(v));
    for (std::size_t a = 0; a < d.quiver.num_arrows(); ++a) d.arrow_element[a] = where.at(Path::from_word(d.quiver, {a}));
    d.loewy_length = compute_loewy_length(d);
}

template <class F>
AlgebraData<F> opposite_data(const AlgebraData<F>& d) {
    AlgebraData<F> o{d.field};
    o.name = d.name + "^op";
    o.quiver = d.quiver.opposite();
    for (const auto& r : d.relations) {
        Relation<F> ro;
        for (const auto& [c, p] : r.terms) {
            Path q{p.target, p.source, std::vector<std::size_t>(p.word.rbegin(), p.word.rend())};
            ro.terms.push_back({c, q});
        }
        o.relations.push_back(std::move(ro));
    }
    for (const auto& p : d.basis) o.basis.push_back(Path{p.target, p.source, std::vector<std::size_t>(p.word.rbegin(), p.word.rend())});
    const std::size_t n = d.basis.size();
    o.table.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) o.table[i * n + j] = d.table[j * n + i];
    o.is_monomial = d.is_monomial;
    o.nilpotency_index = d.nilpotency_index;
    finish_algebra(o);
    return o;
}

// Sparse element of the path space: path index -> coefficient.
template <class F>
using SparsePath = std::map<std::size_t, typename F::Element>;

}  // namespace detail

/// Wraps algebra data and its opposite into a handle.
template <class F>
Algebra<F> make_algebra(AlgebraData<F> data) {
    auto op = std::make_shared<const AlgebraData<F>>(detail::opposite_data(data));
    auto self = std::make_shared<const AlgebraData<F>>(std::move(data));
    return Algebra<F>(self, op);
}

/// kQ/I for the ideal I generated by `relations`. The ideal is saturated
/// inside the span of paths of length <= max_len until every path of some
/// length N lies in it; the basis is the complement spanned by the
/// least surviving paths in canonical order.
template <class F>
Algebra<F> build_algebra(const Quiver& q, const std::vector<Relation<F>>& relations, const F& field,
                         std::size_t max_len = 12, const std::string& name = "A") {
    for (const auto& r : relations) validate_relation(field, q, r);

    // Search for the nilpotency witness N with untruncated products p*r*q.
    std::size_t nil = 0;
    for (std::size_t len = 1; len <= max_len && nil == 0; ++len) {
        std::vector<Path> paths = enumerate_paths(q, len);
        std::map<Path, std::size_t> index;
        for (std::size_t i = 0; i < paths.size(); ++i) index[paths[i]] = i;
        Subspace<F> ideal(field, paths.size());
        for (const auto& r : relations) {
            if (r.max_length() > len) continue;
            std::size_t budget = len - r.max_length();
            for (const auto& left : paths) {
                if (left.source != r.target() || left.length() > budget) continue;
                for (const auto& right : paths) {
                    if (right.target != r.source() || left.length() + right.length() > budget) continue;
                    Vector<F> v(paths.size(), field.zero());
                    for (const auto& [c, p] : r.terms) {
                        auto k = index.at(concat(concat(left, p), right));
                        v[k] = field.add(v[k], c);
                    }
                    ideal.insert(v);
                }
            }
        }
        for (std::size_t n = 1; n <= len; ++n) {
            bool all_in = true;
            for (std::size_t i = 0; i < paths.size() && all_in; ++i) {
                if (paths[i].length() != n) continue;
                Vector<F> e(paths.size(), field.zero());
                e[i] = field.one();
                all_in = ideal.contains(e);
            }
            if (all_in) {
                nil = n;
                break;
            }
        }
    }
    if (nil == 0)
        throw NotAdmissibleWithinBound("some path of length " + std::to_string(max_len) +
                                       " survives outside the ideal; the algebra may be infinite-dimensional "
                                       "or max_len is too small");

    // Quotient of the span of paths of length < nil. Columns are ordered
    // descending so that pivots land on the largest paths.
    std::vector<Path> short_paths = nil >= 1 ? enumerate_paths(q, nil - 1) : std::vector<Path>{};
    const std::size_t m = short_paths.size();
    std::map<Path, std::size_t> column;  // path -> column (descending order)
    for (std::size_t i = 0; i < m; ++i) column[short_paths[i]] = m - 1 - i;
    Subspace<F> ideal(field, m);
    for (const auto& r : relations) {
        if (r.min_length() >= nil) continue;
        std::size_t budget = nil - 1 - r.min_length();
        for (const auto& left : short_paths) {
            if (left.source != r.target() || left.length() > budget) continue;
            for (const auto& right : short_paths) {
                if (right.target != r.source() || left.length() + right.length() > budget) continue;
                Vector<F> v(m, field.zero());
                for (const auto& [c, p] : r.terms) {
                    Path full = concat(concat(left, p), right);
                    if (full.length() >= nil) continue;
                    auto k = column.at(full);
                    v[k] = field.add(v[k], c);
                }
                ideal.insert(v);
            }
        }
    }

    AlgebraData<F> d{field, name, q, relations, {}, {}, {}, {}, true, 0, nil};
    for (const auto& r : relations)
        if (r.terms.size() != 1) d.is_monomial = false;
    auto free_cols = ideal.free_coordinates();
    std::map<std::size_t, std::size_t> basis_of_column;
    for (auto c : free_cols) d.basis.push_back(short_paths[m - 1 - c]);
    std::sort(d.basis.begin(), d.basis.end());
    const std::size_t n = d.basis.size();
    for (std::size_t i = 0; i < n; ++i) basis_of_column[column.at(d.basis[i])] = i;

    // Normal form of any path of length < nil.
    auto normal_form = [&](const Path& p) {
        Vector<F> out(n, field.zero());
        if (p.length() >= nil) return out;
        auto c = column.at(p);
        auto it = basis_of_column.find(c);
        if (it != basis_of_column.end()) {
            out[it->second] = field.one();
            return out;
        }
        const auto& pivots = ideal.pivots();
        auto pos = std::lower_bound(pivots.begin(), pivots.end(), c) - pivots.begin();
        const auto& row = ideal.rows()[pos];
        for (const auto& [col, bi] : basis_of_column)
            if (!field.is_zero(row[col])) out[bi] = field.neg(row[col]);
        return out;
    };

    d.table.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (d.basis[i].source != d.basis[j].target) {
                d.table[i * n + j] = Vector<F>(n, field.zero());
                continue;
            }
            d.table[i * n + j] = normal_form(concat(d.basis[i], d.basis[j]));
        }
    detail::finish_algebra(d);
    return make_algebra(std::move(d));
}

template <class F>
Algebra<F> opposite(const Algebra<F>& a) {
    return a.opposite();
}

/// Tensor product X ⊗ Y over the base field, presented on the product
/// quiver. Vertex (u, v) has index u * |Y_0| + v. Arrows: first every
/// X-arrow a at every Y-vertex v (index a * |Y_0| + v), then every Y-arrow b
/// at every X-vertex u (index |X_1| |Y_0| + u * |Y_1| + b). Basis element
/// (i, j) = x_i ⊗ y_j has index i * dim Y + j.
template <class F>
Algebra<F> tensor_algebra(const Algebra<F>& x, const Algebra<F>& y, const std::string& name = "") {
    const F& f = x.field();
    const Quiver& qx = x.quiver();
    const Quiver& qy = y.quiver();
    const std::size_t nvx = qx.num_vertices(), nvy = qy.num_vertices();
    const std::size_t nax = qx.num_arrows(), nay = qy.num_arrows();
    AlgebraData<F> d{f};
    d.name = name.empty() ? x.name() + "(x)" + y.name() : name;
    for (std::size_t u = 0; u < nvx; ++u)
        for (std::size_t v = 0; v < nvy; ++v) d.quiver.add_vertex(qx.vertex_label(u) + "|" + qy.vertex_label(v));
    auto vid = [&](std::size_t u, std::size_t v) { return u * nvy + v; };
    for (std::size_t a = 0; a < nax; ++a)
        for (std::size_t v = 0; v < nvy; ++v)
            d.quiver.add_arrow(qx.arrow(a).label + "|" + qy.vertex_label(v), vid(qx.arrow(a).source, v),
                               vid(qx.arrow(a).target, v));
    for (std::size_t u = 0; u < nvx; ++u)
        for (std::size_t b = 0; b < nay; ++b)
            d.quiver.add_arrow(qx.vertex_label(u) + "|" + qy.arrow(b).label, vid(u, qy.arrow(b).source),
                               vid(u, qy.arrow(b).target));
    auto xarrow = [&](std::size_t a, std::size_t v) { return a * nvy + v; };
    auto yarrow = [&](std::size_t u, std::size_t b) { return nax * nvy + u * nay + b; };

    // Path of x-part applied after y-part.
    auto lift = [&](const Path& px, const Path& py) {
        Path p;
        p.source = vid(px.source, py.source);
        p.target = vid(px.target, py.target);
        for (auto a : px.word) p.word.push_back(xarrow(a, py.target));
        for (auto b : py.word) p.word.push_back(yarrow(px.source, b));
        return p;
    };

    for (const auto& r : x.relations())
        for (std::size_t v = 0; v < nvy; ++v) {
            Relation<F> lr;
            for (const auto& [c, p] : r.terms) lr.terms.push_back({c, lift(p, Path::trivial(v))});
            d.relations.push_back(std::move(lr));
        }
    for (const auto& r : y.relations())
        for (std::size_t u = 0; u < nvx; ++u) {
            Relation<F> lr;
            for (const auto& [c, p] : r.terms) lr.terms.push_back({c, lift(Path::trivial(u), p)});
            d.relations.push_back(std::move(lr));
        }
    for (std::size_t a = 0; a < nax; ++a)
        for (std::size_t b = 0; b < nay; ++b) {
            const auto& ax = qx.arrow(a);
            const auto& by = qy.arrow(b);
            Path p1 = lift(Path::from_word(qx, {a}), Path::from_word(qy, {b}));  // b first, then a
            Path p2{vid(ax.source, by.source), vid(ax.target, by.target), {yarrow(ax.target, b), xarrow(a, by.source)}};
            Relation<F> comm;
            comm.terms.push_back({f.one(), p1});
            comm.terms.push_back({f.neg(f.one()), p2});
            d.relations.push_back(std::move(comm));
        }

    const std::size_t n = x.dim() * y.dim();
    for (std::size_t i = 0; i < x.dim(); ++i)
        for (std::size_t j = 0; j < y.dim(); ++j) d.basis.push_back(lift(x.basis_path(i), y.basis_path(j)));
    d.table.resize(n * n);
    for (std::size_t i = 0; i < x.dim(); ++i)
        for (std::size_t j = 0; j < y.dim(); ++j)
            for (std::size_t k = 0; k < x.dim(); ++k)
                for (std::size_t l = 0; l < y.dim(); ++l) {
                    const auto& px = x.product(i, k);
                    const auto& py = y.product(j, l);
                    Vector<F> out(n, f.zero());
                    for (std::size_t s = 0; s < x.dim(); ++s) {
                        if (f.is_zero(px[s])) continue;
                        for (std::size_t t = 0; t < y.dim(); ++t)
                            if (!f.is_zero(py[t])) out[s * y.dim() + t] = f.mul(px[s], py[t]);
                    }
                    d.table[(i * y.dim() + j) * n + (k * y.dim() + l)] = std::move(out);
                }
    d.is_monomial = false;
    d.nilpotency_index = x.data().nilpotency_index + y.data().nilpotency_index;
    detail::finish_algebra(d);
    return make_algebra(std::move(d));
}

/// The algebra k: one vertex, no arrows.
template <class F>
Algebra<F> ground_field_algebra(const F& field) {
    Quiver q;
    q.add_vertex("o");
    return build_algebra<F>(q, {}, field, 1, "k");
}

}  // namespace gkt
