#pragma once

#include <optional>
#include <random>

#include "gkt/gorenstein/gorenstein.hpp"

namespace gkt {

/// Hom(M, N) modulo maps factoring through a projective. Such maps are
/// exactly the ones factoring through the projective cover of N.
template <class F>
struct StableHom {
    HomSpace<F> hom;
    Subspace<F> projective_part;  // in coordinates of hom.basis
    std::vector<std::size_t> kept;  // hom.basis indices spanning the quotient

    std::size_t dim() const { return kept.size(); }
    Morphism<F> basis(std::size_t i) const { return hom.basis[kept[i]]; }

    /// Coordinates of the class of f in the quotient basis.
    Vector<F> reduce(const Morphism<F>& f) const {
        auto r = projective_part.reduce(hom.coordinates(f));
        Vector<F> out;
        for (auto j : kept) out.push_back(r[j]);
        return out;
    }

    bool is_zero(const Morphism<F>& f) const {
        const F& fld = hom.domain.field();
        for (const auto& x : reduce(f))
            if (!fld.is_zero(x)) return false;
        return true;
    }

    bool equal(const Morphism<F>& f, const Morphism<F>& g) const { return is_zero(f - g); }

    Morphism<F> element(const Vector<F>& c) const {
        const F& fld = hom.domain.field();
        Morphism<F> out = zero_morphism(hom.domain, hom.codomain);
        for (std::size_t i = 0; i < kept.size(); ++i)
            if (!fld.is_zero(c[i])) out = out + hom.basis[kept[i]].scaled(c[i]);
        return out;
    }
};

template <class F>
StableHom<F> stable_hom(const Representation<F>& m, const Representation<F>& n) {
    require_same_algebra(m, n);
    auto h = hom_basis(m, n);
    Subspace<F> null(m.field(), h.dim());
    if (h.dim() > 0) {
        auto cov = projective_cover(n);
        for (const auto& g : hom_basis(m, cov.cover).basis) null.insert(h.coordinates(cov.epi * g));
    }
    auto kept = null.free_coordinates();
    return StableHom<F>{std::move(h), std::move(null), std::move(kept)};
}

template <class F>
struct StableEndAlgebra {
    Representation<F> module;
    StableHom<F> hom;
    std::vector<std::vector<Vector<F>>> table;  // table[i][j] = b_i ∘ b_j
    Vector<F> identity;

    std::size_t dim() const { return hom.dim(); }

    Vector<F> multiply(const Vector<F>& x, const Vector<F>& y) const {
        const F& f = module.field();
        Vector<F> out(dim(), f.zero());
        for (std::size_t i = 0; i < dim(); ++i) {
            if (f.is_zero(x[i])) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (f.is_zero(y[j])) continue;
                auto c = f.mul(x[i], y[j]);
                for (std::size_t k = 0; k < dim(); ++k) out[k] = f.add(out[k], f.mul(c, table[i][j][k]));
            }
        }
        return out;
    }
};

template <class F>
StableEndAlgebra<F> stable_end_algebra(const CertifiedGP<F>& g) {
    const auto& m = g.module();
    StableEndAlgebra<F> e{m, stable_hom(m, m), {}, {}};
    const std::size_t d = e.hom.dim();
    e.table.assign(d, std::vector<Vector<F>>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) e.table[i][j] = e.hom.reduce(e.hom.basis(i) * e.hom.basis(j));
    e.identity = e.hom.reduce(identity_morphism(m));
    return e;
}

template <class F>
struct WeakEquivalence {
    bool equivalent = false;
    std::optional<std::pair<Morphism<F>, Morphism<F>>> witness;  // f: M -> N, g: N -> M, stably inverse
    bool witness_search_exhaustive = false;
    bool stripped_isomorphic = false;  // cross-check: M, N minus projective summands are isomorphic
};

namespace detail {

// Given f: M -> N, find g: N -> M with g f = 1 and f g = 1 stably (a linear
// condition on g), if any.
template <class F>
std::optional<Morphism<F>> stable_inverse(const Morphism<F>& f, const StableHom<F>& nm, const StableHom<F>& mm,
                                          const StableHom<F>& nn, const Representation<F>& m,
                                          const Representation<F>& n) {
    const F& fld = m.field();
    const std::size_t k = nm.dim();
    const std::size_t rows = mm.dim() + nn.dim();
    if (rows == 0) return zero_morphism(n, m);
    Matrix<F> sys(fld, rows, k);
    for (std::size_t j = 0; j < k; ++j) {
        auto gj = nm.basis(j);
        auto a = mm.reduce(gj * f);
        auto b = nn.reduce(f * gj);
        for (std::size_t r = 0; r < a.size(); ++r) sys(r, j) = a[r];
        for (std::size_t r = 0; r < b.size(); ++r) sys(a.size() + r, j) = b[r];
    }
    auto rhs_m = mm.reduce(identity_morphism(m));
    auto rhs_n = nn.reduce(identity_morphism(n));
    Vector<F> rhs(rhs_m);
    rhs.insert(rhs.end(), rhs_n.begin(), rhs_n.end());
    auto x = solve(sys, rhs);
    if (!x) return std::nullopt;
    return nm.element(*x);
}

}  // namespace detail

/// Weak equivalence of GP modules: stable isomorphism, found by a witness
/// search in the stable Hom space and cross-checked against stripping
/// projective summands.
template <class F>
WeakEquivalence<F> is_weakly_equivalent(const CertifiedGP<F>& cm, const CertifiedGP<F>& cn, std::uint64_t seed = 0) {
    const auto& m = cm.module();
    const auto& n = cn.module();
    require_same_algebra(m, n);
    WeakEquivalence<F> out;
    auto sm = strip_projectives(m, seed);
    auto sn = strip_projectives(n, seed);
    out.stripped_isomorphic = is_isomorphic(sm, sn, seed).has_value();

    const F& fld = m.field();
    auto mn = stable_hom(m, n);
    auto nm = stable_hom(n, m);
    auto mm = stable_hom(m, m);
    auto nn = stable_hom(n, n);

    auto attempt = [&](const Morphism<F>& f) {
        auto g = detail::stable_inverse(f, nm, mm, nn, m, n);
        if (g) out.witness = std::make_pair(f, *g);
        return g.has_value();
    };

    if (mm.dim() == 0 && nn.dim() == 0) {
        // both stably zero
        out.witness_search_exhaustive = true;
        attempt(zero_morphism(m, n));
    } else if (mm.dim() == 0 || nn.dim() == 0 || mn.dim() == 0) {
        out.witness_search_exhaustive = true;
    } else {
        bool found = false;
        for (std::size_t i = 0; i < mn.dim() && !found; ++i) found = attempt(mn.basis(i));
        std::mt19937_64 rng(seed);
        for (int t = 0; t < 64 && !found; ++t) {
            Vector<F> c(mn.dim());
            for (auto& x : c) x = fld.random(rng);
            found = attempt(mn.element(c));
        }
        if constexpr (F::finite) {
            if (!found && detail::small_end_algebra(fld, mn.dim())) {
                const std::uint64_t q = fld.order();
                std::uint64_t total = 1;
                for (std::size_t i = 0; i < mn.dim(); ++i) total *= q;
                for (std::uint64_t code = 1; code < total && !found; ++code) {
                    Vector<F> c(mn.dim());
                    std::uint64_t x = code;
                    for (auto& ci : c) {
                        ci = fld.element_at(x % q);
                        x /= q;
                    }
                    found = attempt(mn.element(c));
                }
                out.witness_search_exhaustive = true;
            }
        }
    }
    if (out.witness) out.equivalent = true;
    else if (out.witness_search_exhaustive) out.equivalent = false;
    else out.equivalent = out.stripped_isomorphic;
    return out;
}

}  // namespace gkt
