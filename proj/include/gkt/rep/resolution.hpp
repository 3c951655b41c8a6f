#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "gkt/rep/decompose.hpp"

namespace gkt {

/// Projective cover P -> M with its top generators.
template <class F>
struct ProjectiveCover {
    Representation<F> cover;
    Morphism<F> epi;
    std::vector<std::size_t> vertices;  // generator vertices, cover = ⊕ P(v)
    std::vector<Vector<F>> generators;  // images of the generators in M
};

template <class F>
ProjectiveCover<F> projective_cover(const Representation<F>& m) {
    auto d = detail::cover_data(m);
    return ProjectiveCover<F>{d.cover, d.epi, d.vertices, d.generators};
}

/// One layer of a minimal projective resolution: P_n ->> Ω^n(M), with
/// kernel Ω^{n+1}(M) -> P_n.
template <class F>
struct ResolutionStep {
    ProjectiveCover<F> cover;        // of Ω^n(M)
    Representation<F> syzygy;        // Ω^{n+1}(M)
    Morphism<F> syzygy_inclusion;    // Ω^{n+1}(M) -> P_n
};

template <class F>
struct Resolution {
    Representation<F> module;
    std::vector<ResolutionStep<F>> steps;
    bool finite = false;  // some syzygy vanished: steps.size() - 1 is the projective dimension

    /// Image of generator g of P_n under d_n: P_n -> P_{n-1} (n >= 1), as a
    /// vector of P_{n-1} at the generator's vertex.
    Vector<F> differential_image(std::size_t n, std::size_t g) const {
        const auto& st = steps[n];
        const auto& prev = steps[n - 1];
        return prev.syzygy_inclusion[st.cover.vertices[g]].apply(st.cover.generators[g]);
    }
};

namespace detail {

template <class F>
struct ResolutionCache {
    std::mutex mutex;
    std::map<std::string, std::shared_ptr<Resolution<F>>> entries;
};

template <class F>
ResolutionCache<F>& resolution_cache() {
    static ResolutionCache<F> cache;
    return cache;
}

template <class F>
void extend_resolution(Resolution<F>& r, std::size_t length) {
    while (!r.finite && r.steps.size() < length + 1) {
        const Representation<F>& current = r.steps.empty() ? r.module : r.steps.back().syzygy;
        if (current.is_zero()) {
            r.finite = true;
            break;
        }
        auto cov = projective_cover(current);
        auto [k, inc] = kernel(cov.cover, current, cov.epi);
        r.steps.push_back(ResolutionStep<F>{std::move(cov), std::move(k), std::move(inc)});
        if (r.steps.back().syzygy.is_zero()) r.finite = true;
    }
}

}  // namespace detail

/// Minimal projective resolution with at least `length + 1` projective
/// terms (or all of them, if it is shorter). Results are cached per module.
template <class F>
std::shared_ptr<const Resolution<F>> minimal_resolution(const Representation<F>& m, std::size_t length) {
    auto& cache = detail::resolution_cache<F>();
    std::lock_guard<std::mutex> lock(cache.mutex);
    auto& slot = cache.entries[m.key()];
    if (!slot) slot = std::make_shared<Resolution<F>>(Resolution<F>{m, {}, false});
    if (!slot->finite && slot->steps.size() < length + 1) {
        // copy-on-extend keeps previously handed out pointers immutable
        auto next = std::make_shared<Resolution<F>>(*slot);
        detail::extend_resolution(*next, length);
        slot = next;
    }
    return slot;
}

template <class F>
void clear_resolution_cache() {
    auto& cache = detail::resolution_cache<F>();
    std::lock_guard<std::mutex> lock(cache.mutex);
    cache.entries.clear();
}

template <class F>
Representation<F> syzygy(const Representation<F>& m, std::size_t n = 1) {
    if (n == 0) return m;
    auto r = minimal_resolution(m, n - 1);
    if (r->steps.size() < n) return Representation<F>::zero(m.algebra());
    return r->steps[n - 1].syzygy;
}

/// Projective dimension if it is below `bound`, otherwise nullopt.
template <class F>
std::optional<std::size_t> projective_dimension(const Representation<F>& m, std::size_t bound) {
    if (m.is_zero()) return 0;
    auto r = minimal_resolution(m, bound);
    if (r->finite && r->steps.size() <= bound) return r->steps.size() - 1;
    return std::nullopt;
}

namespace detail {

// Hom(P_n, N) as ⊕_g N_{v_g}; offsets of each generator block.
template <class F>
std::vector<std::size_t> cochain_offsets(const ProjectiveCover<F>& c, const Representation<F>& n) {
    std::vector<std::size_t> off{0};
    for (auto v : c.vertices) off.push_back(off.back() + n.dim(v));
    return off;
}

// Matrix of Hom(P_{k}, N) -> Hom(P_{k+1}, N), φ ↦ φ ∘ d_{k+1}.
template <class F>
Matrix<F> coboundary(const Resolution<F>& r, std::size_t k, const Representation<F>& n) {
    const auto& alg = n.algebra();
    const F& f = n.field();
    const auto& ck = r.steps[k].cover;
    const auto& ck1 = r.steps[k + 1].cover;
    auto off_k = cochain_offsets(ck, n);
    auto off_k1 = cochain_offsets(ck1, n);
    Matrix<F> d(f, off_k1.back(), off_k.back());
    for (std::size_t g = 0; g < ck1.vertices.size(); ++g) {
        const std::size_t t = ck1.vertices[g];
        auto y = r.differential_image(k + 1, g);  // in P_k at vertex t
        std::size_t c = 0;
        for (std::size_t h = 0; h < ck.vertices.size(); ++h)
            for (auto i : basis_between(alg, ck.vertices[h], t)) {
                if (!f.is_zero(y[c])) {
                    const auto& act = n.basis_action(i);  // N_{v_h} -> N_t
                    for (std::size_t a = 0; a < act.rows(); ++a)
                        for (std::size_t b = 0; b < act.cols(); ++b)
                            if (!f.is_zero(act(a, b)))
                                d(off_k1[g] + a, off_k[h] + b) = f.add(d(off_k1[g] + a, off_k[h] + b), f.mul(y[c], act(a, b)));
                }
                ++c;
            }
    }
    return d;
}

}  // namespace detail

template <class F>
struct ExtResult {
    std::size_t degree = 0;
    std::size_t dimension = 0;
    std::vector<Representation<F>> middle_terms;  // degree 1 only, one per basis class
};

/// Ext^1(M, N) in cocycle form: classes are combinations of `basis` (vectors
/// of Hom(P_1, N)); `middle_term` materialises the extension 0 -> N -> E -> M -> 0.
template <class F>
struct Ext1Space {
    Representation<F> m, n;
    std::shared_ptr<const Resolution<F>> res;
    std::vector<Vector<F>> basis;

    std::size_t dim() const { return basis.size(); }

    struct Extension {
        Representation<F> middle;
        Morphism<F> inclusion;   // N -> E
        Morphism<F> projection;  // E -> M
    };

    Vector<F> cocycle(const Vector<F>& coeffs) const {
        const F& f = m.field();
        std::size_t len = basis.empty() ? 0 : basis.front().size();
        Vector<F> x(len, f.zero());
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t k = 0; k < len; ++k) x[k] = f.add(x[k], f.mul(coeffs[i], basis[i][k]));
        return x;
    }

    Extension middle_term(const Vector<F>& coeffs) const { return extension_from_cocycle(cocycle(coeffs)); }

    Extension extension_from_cocycle(const Vector<F>& phi) const {
        const auto& alg = m.algebra();
        const F& f = m.field();
        if (res->steps.size() < 2) {
            // M projective: only the split extension
            auto ds = direct_sum_data<F>({n, m}, alg);
            return {ds.sum, ds.inclusions[0], ds.projections[1]};
        }
        const auto& c0 = res->steps[0].cover;
        const auto& c1 = res->steps[1].cover;
        auto ds = direct_sum_data<F>({c0.cover, n}, alg);
        auto off = detail::cochain_offsets(c1, n);
        std::vector<Vector<F>> images;
        for (std::size_t g = 0; g < c1.vertices.size(); ++g) {
            const std::size_t v = c1.vertices[g];
            auto y = res->differential_image(1, g);
            for (std::size_t k = off[g]; k < off[g + 1]; ++k) y.push_back(f.neg(phi[k]));
            images.push_back(std::move(y));
        }
        auto map = from_projective_sum(c1.cover, c1.vertices, ds.sum, images);
        auto [e, proj] = cokernel(c1.cover, ds.sum, map);
        Morphism<F> inc = proj * ds.inclusions[1];
        // E -> M induced by (epi, 0), through a section of the cokernel map
        Morphism<F> out = zero_morphism(e, m);
        for (std::size_t v = 0; v < alg.num_vertices(); ++v) {
            if (e.dim(v) == 0) continue;
            auto sec = solve_matrix(proj[v], Matrix<F>::identity(f, e.dim(v)));
            out[v] = c0.epi[v] * ds.projections[0][v] * *sec;
        }
        return {e, inc, out};
    }
};

template <class F>
Ext1Space<F> ext1_space(const Representation<F>& m, const Representation<F>& n) {
    require_same_algebra(m, n);
    Ext1Space<F> s{m, n, minimal_resolution(m, 2), {}};
    const auto& r = *s.res;
    if (r.steps.size() < 2 || n.is_zero()) return s;
    const F& f = m.field();
    auto d1 = detail::coboundary(r, 0, n);
    Subspace<F> boundaries(f, d1.rows());
    for (std::size_t j = 0; j < d1.cols(); ++j) boundaries.insert(d1.col(j));
    Matrix<F> d2 = r.steps.size() >= 3 ? detail::coboundary(r, 1, n) : Matrix<F>(f, 0, d1.rows());
    for (const auto& z : rank_kernel(d2).kernel_basis)
        if (boundaries.insert(z)) s.basis.push_back(z);
    return s;
}

template <class F>
ExtResult<F> ext(const Representation<F>& m, const Representation<F>& n, std::size_t degree) {
    require_same_algebra(m, n);
    ExtResult<F> out;
    out.degree = degree;
    if (degree == 0) {
        out.dimension = hom_basis(m, n).dim();
        return out;
    }
    if (degree == 1) {
        auto s = ext1_space(m, n);
        out.dimension = s.dim();
        for (std::size_t i = 0; i < s.dim(); ++i) {
            Vector<F> c(s.dim(), m.field().zero());
            c[i] = m.field().one();
            out.middle_terms.push_back(s.middle_term(c).middle);
        }
        return out;
    }
    auto r = minimal_resolution(m, degree + 1);
    if (r->steps.size() <= degree || n.is_zero()) return out;
    const F& f = m.field();
    auto prev = detail::coboundary(*r, degree - 1, n);
    Matrix<F> next = r->steps.size() > degree + 1 ? detail::coboundary(*r, degree, n)
                                                   : Matrix<F>(f, 0, prev.rows());
    out.dimension = rank_kernel(next).kernel_basis.size() - rank(prev);
    return out;
}

/// M* = Hom_A(M, A) as a left module over the opposite algebra: the vertex-t
/// space is Hom(M, P(t)) and the opposite of an arrow a acts by composing
/// with right multiplication by a.
template <class F>
Representation<F> star(const Representation<F>& m) {
    const auto& alg = m.algebra();
    const F& f = m.field();
    const std::size_t nv = alg.num_vertices();
    std::vector<HomSpace<F>> h;
    std::vector<std::size_t> dims;
    for (std::size_t t = 0; t < nv; ++t) {
        h.push_back(hom_basis(m, projective(alg, t)));
        dims.push_back(h.back().dim());
    }
    std::vector<Matrix<F>> maps;
    for (std::size_t a = 0; a < alg.num_arrows(); ++a) {
        const auto& ar = alg.quiver().arrow(a);
        auto rho = right_multiplication(alg, alg.arrow_element(a));  // P(t) -> P(s)
        Matrix<F> mat(f, dims[ar.source], dims[ar.target]);
        for (std::size_t j = 0; j < dims[ar.target]; ++j) {
            auto c = h[ar.source].coordinates(rho * h[ar.target].basis[j]);
            for (std::size_t i = 0; i < c.size(); ++i) mat(i, j) = c[i];
        }
        maps.push_back(std::move(mat));
    }
    return Representation<F>(alg.opposite(), std::move(dims), std::move(maps));
}

/// Ω^{-1}(M) = star(Ω(star(M))); meaningful on Gorenstein projective modules.
template <class F>
Representation<F> cosyzygy(const Representation<F>& m) {
    return star(syzygy(star(m), 1));
}

}  // namespace gkt
