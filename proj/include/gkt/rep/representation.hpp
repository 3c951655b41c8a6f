#pragma once

#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "gkt/exactla/echelon.hpp"
#include "gkt/presentation/algebra.hpp"

namespace gkt {

/// A finite-dimensional left module, as a quiver representation: one space
/// per vertex and one matrix per arrow (source space -> target space).
template <class F>
class Representation {
public:
    using Element = typename F::Element;

    Representation() = default;

    Representation(Algebra<F> alg, std::vector<std::size_t> dims, std::vector<Matrix<F>> maps)
        : alg_(std::move(alg)), dims_(std::move(dims)), maps_(std::move(maps)), cache_(std::make_shared<Cache>()) {
        const Quiver& q = alg_.quiver();
        if (dims_.size() != q.num_vertices()) throw InvalidArgument("dimension vector has wrong length");
        if (maps_.size() != q.num_arrows()) throw InvalidArgument("wrong number of arrow matrices");
        for (std::size_t a = 0; a < q.num_arrows(); ++a) {
            const auto& ar = q.arrow(a);
            if (maps_[a].rows() != dims_[ar.target] || maps_[a].cols() != dims_[ar.source])
                throw InvalidArgument("matrix of arrow '" + ar.label + "' has the wrong shape");
        }
        for (const auto& r : alg_.relations()) {
            Matrix<F> sum(field(), dims_[r.target()], dims_[r.source()]);
            for (const auto& [c, p] : r.terms) sum = sum + word_action(p).scaled(c);
            if (!sum.is_zero()) throw InvalidArgument("representation does not satisfy a relation of " + alg_.name());
        }
    }

    static Representation zero(const Algebra<F>& alg) {
        std::vector<Matrix<F>> maps;
        for (std::size_t a = 0; a < alg.num_arrows(); ++a) maps.emplace_back(alg.field(), 0, 0);
        return Representation(alg, std::vector<std::size_t>(alg.num_vertices(), 0), std::move(maps));
    }

    const Algebra<F>& algebra() const { return alg_; }
    const F& field() const { return alg_.field(); }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t dim(std::size_t v) const { return dims_[v]; }
    std::size_t total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0}); }
    bool is_zero() const { return total_dim() == 0; }
    const Matrix<F>& arrow_map(std::size_t a) const { return maps_[a]; }
    const std::vector<Matrix<F>>& arrow_maps() const { return maps_; }

    /// Offset of vertex v in the concatenated coordinates.
    std::size_t offset(std::size_t v) const {
        return std::accumulate(dims_.begin(), dims_.begin() + static_cast<std::ptrdiff_t>(v), std::size_t{0});
    }

    /// Action of an arbitrary path (source space -> target space).
    Matrix<F> word_action(const Path& p) const {
        Matrix<F> m = Matrix<F>::identity(field(), dims_[p.source]);
        for (auto it = p.word.rbegin(); it != p.word.rend(); ++it) m = maps_[*it] * m;
        return m;
    }

    /// Action of basis element i of the algebra.
    const Matrix<F>& basis_action(std::size_t i) const {
        std::call_once(cache_->once, [&] {
            for (const auto& p : alg_.basis()) cache_->actions.push_back(word_action(p));
        });
        return cache_->actions[i];
    }

    /// Action of an algebra element restricted to vertex s -> vertex t.
    Matrix<F> element_action(const Vector<F>& x, std::size_t s, std::size_t t) const {
        Matrix<F> m(field(), dims_[t], dims_[s]);
        for (std::size_t i = 0; i < alg_.dim(); ++i) {
            if (field().is_zero(x[i])) continue;
            const auto& p = alg_.basis_path(i);
            if (p.source != s || p.target != t) continue;
            m = m + basis_action(i).scaled(x[i]);
        }
        return m;
    }

    friend bool operator==(const Representation& a, const Representation& b) {
        return a.alg_.same_as(b.alg_) && a.dims_ == b.dims_ && a.maps_ == b.maps_;
    }

    /// Byte-stable key of the exact data, for caches.
    std::string key() const {
        std::ostringstream os;
        os << static_cast<const void*>(&alg_.data()) << "|";
        for (auto d : dims_) os << d << ",";
        for (const auto& m : maps_) os << "|" << m.to_string();
        return os.str();
    }

    std::string dim_vector_string() const {
        std::string s = "(";
        for (std::size_t v = 0; v < dims_.size(); ++v) s += (v ? "," : "") + std::to_string(dims_[v]);
        return s + ")";
    }

private:
    struct Cache {
        std::once_flag once;
        std::vector<Matrix<F>> actions;
    };
    Algebra<F> alg_;
    std::vector<std::size_t> dims_;
    std::vector<Matrix<F>> maps_;
    std::shared_ptr<Cache> cache_;
};

/// Module homomorphism: one matrix per vertex (codomain x domain).
template <class F>
struct Morphism {
    std::vector<Matrix<F>> comps;

    const Matrix<F>& operator[](std::size_t v) const { return comps[v]; }
    Matrix<F>& operator[](std::size_t v) { return comps[v]; }
    std::size_t num_vertices() const { return comps.size(); }

    bool is_zero() const {
        for (const auto& m : comps)
            if (!m.is_zero()) return false;
        return true;
    }
    bool is_iso() const {
        for (const auto& m : comps)
            if (!is_invertible(m)) return false;
        return true;
    }
    bool is_injective() const {
        for (const auto& m : comps)
            if (rank(m) != m.cols()) return false;
        return true;
    }
    bool is_surjective() const {
        for (const auto& m : comps)
            if (rank(m) != m.rows()) return false;
        return true;
    }
    std::size_t rank_total() const {
        std::size_t r = 0;
        for (const auto& m : comps) r += rank(m);
        return r;
    }

    /// Flattened entries, vertex by vertex, row-major.
    Vector<F> flatten() const {
        Vector<F> out;
        for (const auto& m : comps) out.insert(out.end(), m.data().begin(), m.data().end());
        return out;
    }

    friend Morphism operator*(const Morphism& g, const Morphism& f) {
        Morphism h;
        for (std::size_t v = 0; v < f.comps.size(); ++v) h.comps.push_back(g.comps[v] * f.comps[v]);
        return h;
    }
    friend Morphism operator+(const Morphism& a, const Morphism& b) {
        Morphism h;
        for (std::size_t v = 0; v < a.comps.size(); ++v) h.comps.push_back(a.comps[v] + b.comps[v]);
        return h;
    }
    friend Morphism operator-(const Morphism& a, const Morphism& b) {
        Morphism h;
        for (std::size_t v = 0; v < a.comps.size(); ++v) h.comps.push_back(a.comps[v] - b.comps[v]);
        return h;
    }
    Morphism scaled(const typename F::Element& c) const {
        Morphism h;
        for (const auto& m : comps) h.comps.push_back(m.scaled(c));
        return h;
    }
    friend bool operator==(const Morphism& a, const Morphism& b) { return a.comps == b.comps; }
};

template <class F>
Morphism<F> zero_morphism(const Representation<F>& m, const Representation<F>& n) {
    Morphism<F> f;
    for (std::size_t v = 0; v < m.dims().size(); ++v) f.comps.emplace_back(m.field(), n.dim(v), m.dim(v));
    return f;
}

template <class F>
Morphism<F> identity_morphism(const Representation<F>& m) {
    Morphism<F> f;
    for (std::size_t v = 0; v < m.dims().size(); ++v) f.comps.push_back(Matrix<F>::identity(m.field(), m.dim(v)));
    return f;
}

/// Rebuilds a morphism from its flattened entries.
template <class F>
Morphism<F> unflatten(const Representation<F>& m, const Representation<F>& n, const Vector<F>& x) {
    Morphism<F> f = zero_morphism(m, n);
    std::size_t k = 0;
    for (auto& c : f.comps)
        for (std::size_t i = 0; i < c.rows(); ++i)
            for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) = x[k++];
    return f;
}

template <class F>
bool is_homomorphism(const Representation<F>& m, const Representation<F>& n, const Morphism<F>& f) {
    const Quiver& q = m.algebra().quiver();
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        const auto& ar = q.arrow(a);
        if (!(f[ar.target] * m.arrow_map(a) == n.arrow_map(a) * f[ar.source])) return false;
    }
    return true;
}

template <class F>
void require_same_algebra(const Representation<F>& m, const Representation<F>& n) {
    if (!m.algebra().same_as(n.algebra())) throw AlgebraMismatch("modules over different algebras");
}

/// Direct sum with its canonical inclusions and projections.
template <class F>
struct DirectSum {
    Representation<F> sum;
    std::vector<Morphism<F>> inclusions;
    std::vector<Morphism<F>> projections;
};

template <class F>
DirectSum<F> direct_sum_data(const std::vector<Representation<F>>& parts, const Algebra<F>& alg) {
    const F& f = alg.field();
    const std::size_t nv = alg.num_vertices();
    std::vector<std::size_t> dims(nv, 0);
    for (const auto& p : parts)
        for (std::size_t v = 0; v < nv; ++v) dims[v] += p.dim(v);
    std::vector<Matrix<F>> maps;
    for (std::size_t a = 0; a < alg.num_arrows(); ++a) {
        const auto& ar = alg.quiver().arrow(a);
        Matrix<F> m(f, dims[ar.target], dims[ar.source]);
        std::size_t r = 0, c = 0;
        for (const auto& p : parts) {
            m.set_block(r, c, p.arrow_map(a));
            r += p.dim(ar.target);
            c += p.dim(ar.source);
        }
        maps.push_back(std::move(m));
    }
    DirectSum<F> out{Representation<F>(alg, dims, std::move(maps)), {}, {}};
    std::vector<std::size_t> off(nv, 0);
    for (const auto& p : parts) {
        Morphism<F> inc, proj;
        for (std::size_t v = 0; v < nv; ++v) {
            Matrix<F> i(f, dims[v], p.dim(v));
            for (std::size_t k = 0; k < p.dim(v); ++k) i(off[v] + k, k) = f.one();
            proj.comps.push_back(i.transpose());
            inc.comps.push_back(std::move(i));
            off[v] += p.dim(v);
        }
        out.inclusions.push_back(std::move(inc));
        out.projections.push_back(std::move(proj));
    }
    return out;
}

template <class F>
Representation<F> direct_sum(const std::vector<Representation<F>>& parts, const Algebra<F>& alg) {
    return direct_sum_data(parts, alg).sum;
}

template <class F>
Representation<F> direct_sum(const Representation<F>& a, const Representation<F>& b) {
    require_same_algebra(a, b);
    return direct_sum_data<F>({a, b}, a.algebra()).sum;
}

template <class F>
Representation<F> power(const Representation<F>& m, std::size_t k) {
    return direct_sum(std::vector<Representation<F>>(k, m), m.algebra());
}

/// Submodule spanned per vertex by the columns of `basis[v]` (assumed
/// independent and stable under the arrows), with its inclusion.
template <class F>
std::pair<Representation<F>, Morphism<F>> submodule(const Representation<F>& m, const std::vector<Matrix<F>>& basis) {
    const auto& alg = m.algebra();
    std::vector<std::size_t> dims;
    for (const auto& b : basis) dims.push_back(b.cols());
    std::vector<Matrix<F>> maps;
    for (std::size_t a = 0; a < alg.num_arrows(); ++a) {
        const auto& ar = alg.quiver().arrow(a);
        auto img = m.arrow_map(a) * basis[ar.source];
        auto x = solve_matrix(basis[ar.target], img);
        if (!x) throw InvalidArgument("subspace is not a submodule");
        maps.push_back(std::move(*x));
    }
    return {Representation<F>(alg, std::move(dims), std::move(maps)), Morphism<F>{basis}};
}

/// Smallest submodule containing the given per-vertex generating vectors.
template <class F>
std::vector<Matrix<F>> generated_subspaces(const Representation<F>& m,
                                           const std::vector<std::pair<std::size_t, Vector<F>>>& gens) {
    const auto& alg = m.algebra();
    const F& f = m.field();
    std::vector<Subspace<F>> span;
    for (std::size_t v = 0; v < alg.num_vertices(); ++v) span.emplace_back(f, m.dim(v));
    std::vector<std::pair<std::size_t, Vector<F>>> todo;
    for (const auto& g : gens)
        if (span[g.first].insert(g.second)) todo.push_back(g);
    while (!todo.empty()) {
        auto [v, x] = todo.back();
        todo.pop_back();
        for (std::size_t a = 0; a < alg.num_arrows(); ++a) {
            const auto& ar = alg.quiver().arrow(a);
            if (ar.source != v) continue;
            auto y = m.arrow_map(a).apply(x);
            if (span[ar.target].insert(y)) todo.push_back({ar.target, y});
        }
    }
    std::vector<Matrix<F>> out;
    for (std::size_t v = 0; v < alg.num_vertices(); ++v)
        out.push_back(Matrix<F>::from_columns(f, m.dim(v), span[v].rows()));
    return out;
}

/// Quotient by a submodule given by per-vertex bases, with the projection.
/// Coordinates of the quotient are the free coordinates of the echelon form
/// of the submodule, so the result is determined by the submodule alone.
template <class F>
std::pair<Representation<F>, Morphism<F>> quotient(const Representation<F>& m, const std::vector<Matrix<F>>& sub) {
    const auto& alg = m.algebra();
    const F& f = m.field();
    std::vector<Subspace<F>> spaces;
    for (std::size_t v = 0; v < alg.num_vertices(); ++v) {
        Subspace<F> s(f, m.dim(v));
        for (std::size_t j = 0; j < sub[v].cols(); ++j) s.insert(sub[v].col(j));
        spaces.push_back(std::move(s));
    }
    std::vector<std::size_t> dims;
    Morphism<F> proj;
    for (std::size_t v = 0; v < alg.num_vertices(); ++v) {
        auto free = spaces[v].free_coordinates();
        dims.push_back(free.size());
        Matrix<F> p(f, free.size(), m.dim(v));
        for (std::size_t j = 0; j < m.dim(v); ++j) {
            Vector<F> e(m.dim(v), f.zero());
            e[j] = f.one();
            auto q = spaces[v].quotient_coordinates(e);
            for (std::size_t i = 0; i < q.size(); ++i) p(i, j) = q[i];
        }
        proj.comps.push_back(std::move(p));
    }
    std::vector<Matrix<F>> maps;
    for (std::size_t a = 0; a < alg.num_arrows(); ++a) {
        const auto& ar = alg.quiver().arrow(a);
        // lift free coordinates back to the standard vectors, apply, project
        auto free = spaces[ar.source].free_coordinates();
        Matrix<F> lift(f, m.dim(ar.source), free.size());
        for (std::size_t k = 0; k < free.size(); ++k) lift(free[k], k) = f.one();
        maps.push_back(proj[ar.target] * m.arrow_map(a) * lift);
    }
    return {Representation<F>(alg, std::move(dims), std::move(maps)), std::move(proj)};
}

template <class F>
std::pair<Representation<F>, Morphism<F>> kernel(const Representation<F>& m, const Representation<F>&,
                                                  const Morphism<F>& f) {
    std::vector<Matrix<F>> basis;
    for (std::size_t v = 0; v < m.dims().size(); ++v) basis.push_back(kernel_matrix(f[v]));
    return submodule(m, basis);
}

template <class F>
std::vector<Matrix<F>> image_subspaces(const Morphism<F>& f) {
    std::vector<Matrix<F>> out;
    for (const auto& c : f.comps) out.push_back(column_space_basis(c));
    return out;
}

template <class F>
std::pair<Representation<F>, Morphism<F>> image(const Representation<F>&, const Representation<F>& n,
                                                 const Morphism<F>& f) {
    return submodule(n, image_subspaces(f));
}

template <class F>
std::pair<Representation<F>, Morphism<F>> cokernel(const Representation<F>&, const Representation<F>& n,
                                                    const Morphism<F>& f) {
    return quotient(n, image_subspaces(f));
}

/// Radical: sum of the images of all arrows.
template <class F>
std::vector<Matrix<F>> radical_subspaces(const Representation<F>& m) {
    const auto& alg = m.algebra();
    std::vector<Subspace<F>> span;
    for (std::size_t v = 0; v < alg.num_vertices(); ++v) span.emplace_back(m.field(), m.dim(v));
    for (std::size_t a = 0; a < alg.num_arrows(); ++a) {
        const auto& ar = alg.quiver().arrow(a);
        const auto& mat = m.arrow_map(a);
        for (std::size_t j = 0; j < mat.cols(); ++j) span[ar.target].insert(mat.col(j));
    }
    std::vector<Matrix<F>> out;
    for (std::size_t v = 0; v < alg.num_vertices(); ++v)
        out.push_back(Matrix<F>::from_columns(m.field(), m.dim(v), span[v].rows()));
    return out;
}

template <class F>
Representation<F> radical(const Representation<F>& m) {
    return submodule(m, radical_subspaces(m)).first;
}

template <class F>
Representation<F> top(const Representation<F>& m) {
    return quotient(m, radical_subspaces(m)).first;
}

/// Top generators: per vertex, the standard vectors complementing the radical.
template <class F>
std::vector<std::pair<std::size_t, Vector<F>>> top_generators(const Representation<F>& m) {
    auto rad = radical_subspaces(m);
    std::vector<std::pair<std::size_t, Vector<F>>> out;
    for (std::size_t v = 0; v < m.dims().size(); ++v) {
        Subspace<F> s(m.field(), m.dim(v));
        for (std::size_t j = 0; j < rad[v].cols(); ++j) s.insert(rad[v].col(j));
        for (auto c : s.free_coordinates()) {
            Vector<F> e(m.dim(v), m.field().zero());
            e[c] = m.field().one();
            out.push_back({v, std::move(e)});
        }
    }
    return out;
}

template <class F>
Representation<F> simple(const Algebra<F>& alg, std::size_t v) {
    std::vector<std::size_t> dims(alg.num_vertices(), 0);
    dims[v] = 1;
    std::vector<Matrix<F>> maps;
    for (std::size_t a = 0; a < alg.num_arrows(); ++a) {
        const auto& ar = alg.quiver().arrow(a);
        maps.emplace_back(alg.field(), dims[ar.target], dims[ar.source]);
    }
    return Representation<F>(alg, dims, std::move(maps));
}

/// Basis indices of paths with the given source and target.
template <class F>
std::vector<std::size_t> basis_between(const Algebra<F>& alg, std::size_t source, std::size_t target) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < alg.dim(); ++i)
        if (alg.basis_path(i).source == source && alg.basis_path(i).target == target) out.push_back(i);
    return out;
}

/// The indecomposable projective A e_v: at vertex t, the basis paths v -> t.
template <class F>
Representation<F> projective(const Algebra<F>& alg, std::size_t v) {
    const F& f = alg.field();
    const std::size_t nv = alg.num_vertices();
    std::vector<std::vector<std::size_t>> at(nv);
    std::vector<std::size_t> dims(nv);
    for (std::size_t t = 0; t < nv; ++t) {
        at[t] = basis_between(alg, v, t);
        dims[t] = at[t].size();
    }
    std::vector<Matrix<F>> maps;
    for (std::size_t a = 0; a < alg.num_arrows(); ++a) {
        const auto& ar = alg.quiver().arrow(a);
        Matrix<F> m(f, dims[ar.target], dims[ar.source]);
        for (std::size_t j = 0; j < at[ar.source].size(); ++j) {
            const auto& prod = alg.product(alg.arrow_element(a), at[ar.source][j]);
            for (std::size_t i = 0; i < at[ar.target].size(); ++i) m(i, j) = prod[at[ar.target][i]];
        }
        maps.push_back(std::move(m));
    }
    return Representation<F>(alg, dims, std::move(maps));
}

/// Coordinates of a path-element of e_t A e_v inside projective(v) at vertex t.
template <class F>
Vector<F> projective_coordinates(const Algebra<F>& alg, std::size_t v, std::size_t t, const Vector<F>& x) {
    Vector<F> out;
    for (auto i : basis_between(alg, v, t)) out.push_back(x[i]);
    return out;
}

template <class F>
Representation<F> regular_module(const Algebra<F>& alg) {
    std::vector<Representation<F>> parts;
    for (std::size_t v = 0; v < alg.num_vertices(); ++v) parts.push_back(projective(alg, v));
    return direct_sum(parts, alg);
}

/// Sum of projectives P(v_1) ⊕ ... for a list of vertices.
template <class F>
Representation<F> projective_sum(const Algebra<F>& alg, const std::vector<std::size_t>& vertices) {
    std::vector<Representation<F>> parts;
    for (auto v : vertices) parts.push_back(projective(alg, v));
    return direct_sum(parts, alg);
}

/// The morphism ⊕ P(v_i) -> M sending the generator e_{v_i} to m_i.
template <class F>
Morphism<F> from_projective_sum(const Representation<F>& p, const std::vector<std::size_t>& vertices,
                                const Representation<F>& m, const std::vector<Vector<F>>& images) {
    const auto& alg = m.algebra();
    const F& f = m.field();
    Morphism<F> out = zero_morphism(p, m);
    const std::size_t nv = alg.num_vertices();
    std::vector<std::size_t> col(nv, 0);
    for (std::size_t g = 0; g < vertices.size(); ++g) {
        std::size_t v = vertices[g];
        for (std::size_t t = 0; t < nv; ++t)
            for (auto i : basis_between(alg, v, t)) {
                auto y = m.basis_action(i).apply(images[g]);
                for (std::size_t r = 0; r < y.size(); ++r) out[t](r, col[t]) = y[r];
                ++col[t];
            }
    }
    (void)f;
    return out;
}

/// Right multiplication by a basis path b: s -> t, as the map P(t) -> P(s).
template <class F>
Morphism<F> right_multiplication(const Algebra<F>& alg, std::size_t b) {
    const auto& path = alg.basis_path(b);
    auto pt = projective(alg, path.target);
    auto ps = projective(alg, path.source);
    return from_projective_sum(pt, {path.target}, ps, {projective_coordinates(alg, path.source, path.target, alg.basis_vector(b))});
}

/// The cyclic left module A·b for a basis path b: s -> t, as a submodule
/// of P(s) generated at vertex t.
template <class F>
Representation<F> cyclic_module(const Algebra<F>& alg, std::size_t b) {
    const auto& path = alg.basis_path(b);
    auto p = projective(alg, path.source);
    auto sub = generated_subspaces(p, {{path.target, projective_coordinates(alg, path.source, path.target, alg.basis_vector(b))}});
    return submodule(p, sub).first;
}

/// Basis index of the path with the given arrow labels (written order).
template <class F>
std::size_t basis_index(const Algebra<F>& alg, const std::vector<std::string>& labels) {
    Path p = labels.empty() ? Path::trivial(0) : Path::from_labels(alg.quiver(), labels);
    for (std::size_t i = 0; i < alg.dim(); ++i)
        if (alg.basis_path(i) == p) return i;
    throw InvalidArgument("path is not a basis element");
}

/// Vector-space dual, a module over the opposite algebra.
template <class F>
Representation<F> dual(const Representation<F>& m) {
    auto op = m.algebra().opposite();
    std::vector<Matrix<F>> maps;
    for (const auto& mat : m.arrow_maps()) maps.push_back(mat.transpose());
    return Representation<F>(op, m.dims(), std::move(maps));
}

template <class F>
Morphism<F> dual(const Morphism<F>& f) {
    Morphism<F> out;
    for (const auto& c : f.comps) out.comps.push_back(c.transpose());
    return out;
}

/// Indecomposable injective D(e_v A), a module over the algebra itself.
template <class F>
Representation<F> injective(const Algebra<F>& alg, std::size_t v) {
    return dual(projective(alg.opposite(), v));
}

/// Module with the same data over a different handle of the same algebra.
template <class F>
Representation<F> rebase(const Representation<F>& m, const Algebra<F>& alg) {
    return Representation<F>(alg, m.dims(), m.arrow_maps());
}

}  // namespace gkt
