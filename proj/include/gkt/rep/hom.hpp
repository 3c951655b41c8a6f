#pragma once

#include "gkt/rep/representation.hpp"

namespace gkt {

/// Basis of Hom_A(M, N). Morphisms are parametrised by the images of a
/// fixed set of top generators of M; `coordinates` reads them back.
template <class F>
struct HomSpace {
    Representation<F> domain;
    Representation<F> codomain;
    std::vector<Morphism<F>> basis;

    // parametrisation: generator g of M sits at vertex gen_vertex[g] with
    // vector gen_vector[g]; a morphism is determined by f(gen) in N.
    std::vector<std::size_t> gen_vertex;
    std::vector<Vector<F>> gen_vector;
    std::vector<std::size_t> free_cols;  // coordinate positions inside the image vector

    std::size_t dim() const { return basis.size(); }

    Vector<F> generator_images(const Morphism<F>& f) const {
        Vector<F> out;
        for (std::size_t g = 0; g < gen_vertex.size(); ++g) {
            auto y = f[gen_vertex[g]].apply(gen_vector[g]);
            out.insert(out.end(), y.begin(), y.end());
        }
        return out;
    }

    /// Coordinates of a homomorphism f in `basis`.
    Vector<F> coordinates(const Morphism<F>& f) const {
        auto n = generator_images(f);
        Vector<F> out;
        for (auto c : free_cols) out.push_back(n[c]);
        return out;
    }

    Morphism<F> element(const Vector<F>& coeffs) const {
        const F& fld = domain.field();
        Morphism<F> out = zero_morphism(domain, codomain);
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (!fld.is_zero(coeffs[i])) out = out + basis[i].scaled(coeffs[i]);
        return out;
    }
};

namespace detail {

// Projective cover data used by Hom and by resolutions.
template <class F>
struct CoverData {
    std::vector<std::size_t> vertices;       // one per generator
    std::vector<Vector<F>> generators;       // in M at that vertex
    Representation<F> cover;                 // ⊕ P(v)
    Morphism<F> epi;                         // cover -> M
};

template <class F>
CoverData<F> cover_data(const Representation<F>& m) {
    CoverData<F> d;
    for (auto& [v, x] : top_generators(m)) {
        d.vertices.push_back(v);
        d.generators.push_back(std::move(x));
    }
    d.cover = projective_sum(m.algebra(), d.vertices);
    d.epi = from_projective_sum(d.cover, d.vertices, m, d.generators);
    return d;
}

}  // namespace detail

template <class F>
HomSpace<F> hom_basis(const Representation<F>& m, const Representation<F>& n) {
    require_same_algebra(m, n);
    const auto& alg = m.algebra();
    const F& f = m.field();
    const std::size_t nv = alg.num_vertices();
    HomSpace<F> h{m, n, {}, {}, {}, {}};
    if (m.is_zero() || n.is_zero()) return h;

    auto cov = detail::cover_data(m);
    h.gen_vertex = cov.vertices;
    h.gen_vector = cov.generators;
    const std::size_t ng = cov.vertices.size();
    std::vector<std::size_t> uoff(ng + 1, 0);
    for (std::size_t g = 0; g < ng; ++g) uoff[g + 1] = uoff[g] + n.dim(cov.vertices[g]);
    const std::size_t unknowns = uoff[ng];

    // column layout of the cover at vertex t: (generator, basis path)
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> layout(nv);
    for (std::size_t g = 0; g < ng; ++g)
        for (std::size_t t = 0; t < nv; ++t)
            for (auto i : basis_between(alg, cov.vertices[g], t)) layout[t].push_back({g, i});

    // kernel vectors of the epi must map to zero
    std::vector<Vector<F>> rows;
    for (std::size_t t = 0; t < nv; ++t) {
        if (n.dim(t) == 0) continue;
        auto ker = rank_kernel(cov.epi[t]).kernel_basis;
        for (const auto& k : ker) {
            std::vector<Vector<F>> eq(n.dim(t), Vector<F>(unknowns, f.zero()));
            for (std::size_t c = 0; c < k.size(); ++c) {
                if (f.is_zero(k[c])) continue;
                auto [g, i] = layout[t][c];
                const auto& act = n.basis_action(i);  // N_{v_g} -> N_t
                for (std::size_t r = 0; r < n.dim(t); ++r)
                    for (std::size_t j = 0; j < act.cols(); ++j)
                        if (!f.is_zero(act(r, j))) eq[r][uoff[g] + j] = f.add(eq[r][uoff[g] + j], f.mul(k[c], act(r, j)));
            }
            for (auto& e : eq) rows.push_back(std::move(e));
        }
    }
    Matrix<F> sys(f, rows.size(), unknowns);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < unknowns; ++c) sys(r, c) = rows[r][c];
    auto e = echelon(sys);
    std::vector<bool> piv(unknowns, false);
    for (auto p : e.pivots) piv[p] = true;
    for (std::size_t c = 0; c < unknowns; ++c)
        if (!piv[c]) h.free_cols.push_back(c);
    auto kernel = rank_kernel(sys).kernel_basis;

    // sections of the epi, per vertex
    std::vector<Matrix<F>> section;
    for (std::size_t t = 0; t < nv; ++t) {
        auto s = solve_matrix(cov.epi[t], Matrix<F>::identity(f, m.dim(t)));
        section.push_back(std::move(*s));
    }
    for (const auto& x : kernel) {
        Morphism<F> phi = zero_morphism(m, n);
        for (std::size_t t = 0; t < nv; ++t) {
            if (m.dim(t) == 0 || n.dim(t) == 0) continue;
            Matrix<F> onp(f, n.dim(t), layout[t].size());
            for (std::size_t c = 0; c < layout[t].size(); ++c) {
                auto [g, i] = layout[t][c];
                Vector<F> ng_vec(x.begin() + static_cast<std::ptrdiff_t>(uoff[g]),
                                 x.begin() + static_cast<std::ptrdiff_t>(uoff[g + 1]));
                auto y = n.basis_action(i).apply(ng_vec);
                for (std::size_t r = 0; r < y.size(); ++r) onp(r, c) = y[r];
            }
            phi[t] = onp * section[t];
        }
        h.basis.push_back(std::move(phi));
    }
    return h;
}

/// Hom by the direct commuting-square linear system; independent of the
/// generator parametrisation above (used as a cross-check).
template <class F>
std::vector<Morphism<F>> hom_basis_dense(const Representation<F>& m, const Representation<F>& n) {
    require_same_algebra(m, n);
    const auto& alg = m.algebra();
    const F& f = m.field();
    const std::size_t nv = alg.num_vertices();
    std::vector<std::size_t> off(nv + 1, 0);
    for (std::size_t v = 0; v < nv; ++v) off[v + 1] = off[v] + n.dim(v) * m.dim(v);
    const std::size_t unknowns = off[nv];
    std::vector<Vector<F>> rows;
    for (std::size_t a = 0; a < alg.num_arrows(); ++a) {
        const auto& ar = alg.quiver().arrow(a);
        const std::size_t s = ar.source, t = ar.target;
        const auto& ma = m.arrow_map(a);
        const auto& na = n.arrow_map(a);
        // (f_t M_a - N_a f_s)(i, j) = 0
        for (std::size_t i = 0; i < n.dim(t); ++i)
            for (std::size_t j = 0; j < m.dim(s); ++j) {
                Vector<F> row(unknowns, f.zero());
                for (std::size_t k = 0; k < m.dim(t); ++k)
                    row[off[t] + i * m.dim(t) + k] = f.add(row[off[t] + i * m.dim(t) + k], ma(k, j));
                for (std::size_t k = 0; k < n.dim(s); ++k)
                    row[off[s] + k * m.dim(s) + j] = f.sub(row[off[s] + k * m.dim(s) + j], na(i, k));
                rows.push_back(std::move(row));
            }
    }
    Matrix<F> sys(f, rows.size(), unknowns);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < unknowns; ++c) sys(r, c) = rows[r][c];
    std::vector<Morphism<F>> out;
    for (const auto& x : rank_kernel(sys).kernel_basis) out.push_back(unflatten(m, n, x));
    return out;
}

}  // namespace gkt
