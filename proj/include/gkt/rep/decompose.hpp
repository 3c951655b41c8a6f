#pragma once

#include <cmath>
#include <optional>
#include <random>

#include "gkt/rep/hom.hpp"

namespace gkt {

namespace detail {

template <class F>
Matrix<F> block_matrix(const Morphism<F>& f, const Representation<F>& m) {
    Matrix<F> out(m.field(), m.total_dim(), m.total_dim());
    std::size_t o = 0;
    for (std::size_t v = 0; v < f.num_vertices(); ++v) {
        out.set_block(o, o, f[v]);
        o += f[v].rows();
    }
    return out;
}

template <class F>
Morphism<F> morphism_power(Morphism<F> f, std::size_t e) {
    Morphism<F> result;
    for (const auto& c : f.comps) result.comps.push_back(Matrix<F>::identity(c.field(), c.rows()));
    while (e) {
        if (e & 1) result = result * f;
        f = f * f;
        e >>= 1;
    }
    return result;
}

template <class F>
Matrix<F> matrix_power(Matrix<F> a, std::size_t e) {
    Matrix<F> result = Matrix<F>::identity(a.field(), a.rows());
    while (e) {
        if (e & 1) result = result * a;
        a = a * a;
        e >>= 1;
    }
    return result;
}

// Candidate eigenvalues of a square matrix in the base field: roots of the
// minimal polynomial of a random vector (brute force over small prime
// fields), plus 0 and trace/dim.
template <class F, class Rng>
std::vector<typename F::Element> eigen_candidates(const Matrix<F>& a, Rng& rng) {
    const F& f = a.field();
    const std::size_t n = a.rows();
    std::vector<typename F::Element> out{f.zero()};
    if (n == 0) return out;
    auto add = [&](const typename F::Element& x) {
        for (const auto& y : out)
            if (f.eq(x, y)) return;
        out.push_back(x);
    };
    bool divisible = false;
    if constexpr (F::finite) divisible = (n % f.characteristic() == 0);
    if (!divisible) {
        auto tr = f.zero();
        for (std::size_t i = 0; i < n; ++i) tr = f.add(tr, a(i, i));
        add(f.div(tr, f.from_int(static_cast<std::int64_t>(n))));
    }
    // Krylov minimal polynomial of a random vector
    Vector<F> v(n);
    for (auto& e : v) e = f.random(rng);
    std::vector<Vector<F>> krylov{v};
    std::optional<Vector<F>> coeffs;
    for (std::size_t d = 1; d <= n && !coeffs; ++d) {
        auto next = a.apply(krylov.back());
        auto km = Matrix<F>::from_columns(f, n, krylov);
        auto sol = solve(km, next);
        if (sol) coeffs = sol;  // a^d v = sum c_i a^i v
        else krylov.push_back(std::move(next));
    }
    if (!coeffs) return out;
    // p(x) = x^d - sum c_i x^i
    const std::size_t d = coeffs->size();
    auto eval = [&](const typename F::Element& x) {
        auto acc = f.one();
        for (std::size_t i = d; i-- > 0;) acc = f.sub(f.mul(acc, x), (*coeffs)[i]);
        return acc;
    };
    if constexpr (F::finite) {
        if (f.characteristic() <= 1009) {
            for (std::uint32_t x = 0; x < f.characteristic(); ++x)
                if (f.is_zero(eval(x))) add(x);
            return out;
        }
    }
    // (x - l)^d has x^{d-1} coefficient -d l
    bool d_invertible = true;
    if constexpr (F::finite) d_invertible = (d % f.characteristic() != 0);
    if (d_invertible) {
        auto l = f.div((*coeffs)[d - 1], f.from_int(static_cast<std::int64_t>(d)));
        if (f.is_zero(eval(l))) add(l);
    }
    return out;
}

}  // namespace detail

/// Endomorphism algebra on a Hom basis, with structure constants.
template <class F>
struct EndAlgebra {
    HomSpace<F> hom;
    std::vector<Vector<F>> table;  // table[i * n + j] = coords of basis_i ∘ basis_j

    std::size_t dim() const { return hom.dim(); }
    const Vector<F>& product(std::size_t i, std::size_t j) const { return table[i * dim() + j]; }
};

template <class F>
EndAlgebra<F> end_algebra(const Representation<F>& m) {
    EndAlgebra<F> e{hom_basis(m, m), {}};
    const std::size_t n = e.dim();
    e.table.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) e.table[i * n + j] = e.hom.coordinates(e.hom.basis[i] * e.hom.basis[j]);
    return e;
}

/// An indecomposable summand with its split inclusion and projection.
template <class F>
struct SplitSummand {
    Representation<F> rep;
    Morphism<F> inclusion;   // rep -> M
    Morphism<F> projection;  // M -> rep
};

template <class F>
struct DecomposedPart {
    Representation<F> rep;  // representative of the isomorphism class
    std::size_t multiplicity = 0;
    std::vector<SplitSummand<F>> copies;  // copies[k].rep ≅ rep
};

template <class F>
struct Decomposition {
    std::vector<DecomposedPart<F>> parts;

    std::size_t total_summands() const {
        std::size_t s = 0;
        for (const auto& p : parts) s += p.multiplicity;
        return s;
    }
};

namespace detail {

// Is End(M) local? Certified by a nilpotent two-sided ideal of codimension 1.
// On success `residue` (if given) receives lambda_i with b_i - lambda_i in J.
template <class F, class Rng>
bool certify_local(const Representation<F>& m, const EndAlgebra<F>& e, Rng& rng, Vector<F>* residue = nullptr) {
    const F& f = m.field();
    const std::size_t n = e.dim();
    const std::size_t dm = m.total_dim();
    if (n == 0) return false;
    auto one = e.hom.coordinates(identity_morphism(m));
    if (n == 1) {
        if (residue) *residue = Vector<F>{f.inv(one[0])};
        return true;
    }
    Vector<F> lambdas(n, f.zero());
    Subspace<F> j(f, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto b = block_matrix(e.hom.basis[i], m);
        bool found = false;
        for (const auto& l : eigen_candidates(b, rng)) {
            Matrix<F> g = b;
            for (std::size_t k = 0; k < dm; ++k) g(k, k) = f.sub(g(k, k), l);
            if (matrix_power(g, dm).is_zero()) {
                Vector<F> x(n, f.zero());
                x[i] = f.one();
                for (std::size_t k = 0; k < n; ++k) x[k] = f.sub(x[k], f.mul(l, one[k]));
                j.insert(x);
                lambdas[i] = l;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    if (j.dim() + 1 != n) return false;
    auto mult = [&](const Vector<F>& x, const Vector<F>& y) {
        Vector<F> out(n, f.zero());
        for (std::size_t a = 0; a < n; ++a) {
            if (f.is_zero(x[a])) continue;
            for (std::size_t b = 0; b < n; ++b) {
                if (f.is_zero(y[b])) continue;
                auto c = f.mul(x[a], y[b]);
                const auto& pr = e.product(a, b);
                for (std::size_t k = 0; k < n; ++k)
                    if (!f.is_zero(pr[k])) out[k] = f.add(out[k], f.mul(c, pr[k]));
            }
        }
        return out;
    };
    // two-sided ideal
    for (const auto& x : j.rows())
        for (std::size_t b = 0; b < n; ++b) {
            Vector<F> eb(n, f.zero());
            eb[b] = f.one();
            if (!j.contains(mult(x, eb)) || !j.contains(mult(eb, x))) return false;
        }
    // nilpotent: powers of the ideal shrink to zero
    std::vector<Vector<F>> power = j.rows();
    for (std::size_t k = 0; k <= dm + 1 && !power.empty(); ++k) {
        Subspace<F> next(f, n);
        for (const auto& x : power)
            for (const auto& y : j.rows()) next.insert(mult(x, y));
        power = next.rows();
    }
    if (!power.empty()) return false;
    if (residue) *residue = lambdas;
    return true;
}

template <class F>
std::optional<std::pair<SplitSummand<F>, SplitSummand<F>>> split_by(const Representation<F>& m, const Morphism<F>& g) {
    auto gn = morphism_power(g, m.total_dim());
    std::size_t r = gn.rank_total();
    if (r == 0 || r == m.total_dim()) return std::nullopt;
    auto [kr, ki] = kernel(m, m, gn);
    auto [ir, ii] = image(m, m, gn);
    // projections from the inverse of [ki ii]
    Morphism<F> pk, pi;
    for (std::size_t v = 0; v < m.dims().size(); ++v) {
        auto both = hstack(ki[v], ii[v]);
        auto inv = inverse(both);
        if (!inv) throw Error("Fitting decomposition produced a non-complementary pair");
        pk.comps.push_back(inv->block(0, 0, ki[v].cols(), both.cols()));
        pi.comps.push_back(inv->block(ki[v].cols(), 0, ii[v].cols(), both.cols()));
    }
    return std::make_pair(SplitSummand<F>{kr, ki, pk}, SplitSummand<F>{ir, ii, pi});
}

template <class F, class Rng>
std::optional<std::pair<SplitSummand<F>, SplitSummand<F>>> find_split(const Representation<F>& m, const EndAlgebra<F>& e,
                                                                      Rng& rng) {
    const F& f = m.field();
    std::vector<Morphism<F>> trial = e.hom.basis;
    for (int t = 0; t < 64; ++t) {
        Vector<F> c(e.dim());
        for (auto& x : c) x = f.random(rng);
        trial.push_back(e.hom.element(c));
    }
    for (const auto& g : trial) {
        auto b = block_matrix(g, m);
        for (const auto& l : eigen_candidates(b, rng)) {
            Morphism<F> h = g;
            for (auto& c : h.comps)
                for (std::size_t i = 0; i < c.rows(); ++i) c(i, i) = f.sub(c(i, i), l);
            if (auto s = split_by(m, h)) return s;
        }
    }
    // exhaustive idempotent search on small endomorphism algebras
    if constexpr (F::finite) {
        double size = std::pow(static_cast<double>(f.order()), static_cast<double>(e.dim()));
        if (size <= 65536.0) {
            const std::uint64_t q = f.order();
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < e.dim(); ++i) total *= q;
            for (std::uint64_t code = 0; code < total; ++code) {
                Vector<F> c(e.dim());
                std::uint64_t x = code;
                for (auto& ci : c) {
                    ci = f.element_at(x % q);
                    x /= q;
                }
                auto g = e.hom.element(c);
                if (!(g * g == g)) continue;
                if (auto s = split_by(m, g)) return s;
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

template <class F>
bool small_end_algebra(const F& f, std::size_t dim) {
    if constexpr (F::finite) return std::pow(static_cast<double>(f.order()), static_cast<double>(dim)) <= 65536.0;
    (void)f;
    (void)dim;
    return false;
}

template <class F, class Rng>
void decompose_into(const SplitSummand<F>& piece, std::vector<SplitSummand<F>>& out, Rng& rng) {
    const auto& m = piece.rep;
    if (m.is_zero()) return;
    if (m.total_dim() == 1) {
        out.push_back(piece);
        return;
    }
    auto e = end_algebra(m);
    if (certify_local(m, e, rng)) {
        out.push_back(piece);
        return;
    }
    auto s = find_split(m, e, rng);
    if (!s) {
        if (small_end_algebra(m.field(), e.dim())) {
            // exhaustive search found no idempotent: End(M) is local
            out.push_back(piece);
            return;
        }
        throw FieldUnsupported("could not certify indecomposability of a module of dimension " +
                               std::to_string(m.total_dim()) + " (endomorphism algebra of dimension " +
                               std::to_string(e.dim()) + ")");
    }
    for (const auto& part : {s->first, s->second}) {
        SplitSummand<F> lifted{part.rep, piece.inclusion * part.inclusion, part.projection * piece.projection};
        decompose_into(lifted, out, rng);
    }
}

}  // namespace detail

/// Isomorphism test for modules already known to be indecomposable:
/// the non-isomorphisms form the radical, so some Hom basis element is
/// invertible iff the modules are isomorphic.
template <class F>
std::optional<Morphism<F>> indecomposable_iso(const Representation<F>& m, const Representation<F>& n) {
    if (m.dims() != n.dims()) return std::nullopt;
    auto h = hom_basis(m, n);
    for (const auto& f : h.basis)
        if (f.is_iso()) return f;
    return std::nullopt;
}

/// Krull-Schmidt decomposition, grouped by isomorphism class. Classes are
/// ordered by total dimension, then dimension vector, then first occurrence.
template <class F>
Decomposition<F> decompose(const Representation<F>& m, std::uint64_t seed = 0) {
    std::mt19937_64 rng(seed);
    std::vector<SplitSummand<F>> pieces;
    detail::decompose_into(SplitSummand<F>{m, identity_morphism(m), identity_morphism(m)}, pieces, rng);
    Decomposition<F> d;
    for (auto& p : pieces) {
        bool placed = false;
        for (auto& part : d.parts) {
            if (auto iso = indecomposable_iso(p.rep, part.rep)) {
                // store the copy with the class representative as its module
                auto inv = Morphism<F>{};
                for (const auto& c : iso->comps) inv.comps.push_back(*inverse(c));
                part.copies.push_back(SplitSummand<F>{part.rep, p.inclusion * inv, *iso * p.projection});
                ++part.multiplicity;
                placed = true;
                break;
            }
        }
        if (!placed) d.parts.push_back(DecomposedPart<F>{p.rep, 1, {p}});
    }
    std::stable_sort(d.parts.begin(), d.parts.end(), [](const auto& a, const auto& b) {
        if (a.rep.total_dim() != b.rep.total_dim()) return a.rep.total_dim() < b.rep.total_dim();
        return a.rep.dims() < b.rep.dims();
    });
    return d;
}

template <class F>
bool is_indecomposable(const Representation<F>& m, std::uint64_t seed = 0) {
    auto d = decompose(m, seed);
    return d.total_summands() == 1;
}

/// Isomorphism test with a witness.
template <class F>
std::optional<Morphism<F>> is_isomorphic(const Representation<F>& m, const Representation<F>& n, std::uint64_t seed = 0) {
    require_same_algebra(m, n);
    if (m.dims() != n.dims()) return std::nullopt;
    if (m.is_zero()) return zero_morphism(m, n);
    const F& f = m.field();
    auto h = hom_basis(m, n);
    if (h.dim() == 0) return std::nullopt;
    for (const auto& g : h.basis)
        if (g.is_iso()) return g;
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 64; ++t) {
        Vector<F> c(h.dim());
        for (auto& x : c) x = f.random(rng);
        auto g = h.element(c);
        if (g.is_iso()) return g;
    }
    if constexpr (F::finite) {
        if (detail::small_end_algebra(f, h.dim())) {
            const std::uint64_t q = f.order();
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < h.dim(); ++i) total *= q;
            for (std::uint64_t code = 1; code < total; ++code) {
                Vector<F> c(h.dim());
                std::uint64_t x = code;
                for (auto& ci : c) {
                    ci = f.element_at(x % q);
                    x /= q;
                }
                auto g = h.element(c);
                if (g.is_iso()) return g;
            }
            return std::nullopt;
        }
    }
    // exact fallback: compare Krull-Schmidt decompositions and assemble a witness
    auto dm = decompose(m, seed);
    auto dn = decompose(n, seed);
    if (dm.parts.size() != dn.parts.size()) return std::nullopt;
    Morphism<F> w = zero_morphism(m, n);
    std::vector<bool> used(dn.parts.size(), false);
    for (const auto& pm : dm.parts) {
        bool matched = false;
        for (std::size_t k = 0; k < dn.parts.size() && !matched; ++k) {
            if (used[k] || dn.parts[k].multiplicity != pm.multiplicity) continue;
            auto iso = indecomposable_iso(pm.rep, dn.parts[k].rep);
            if (!iso) continue;
            used[k] = true;
            matched = true;
            for (std::size_t c = 0; c < pm.multiplicity; ++c)
                w = w + dn.parts[k].copies[c].inclusion * *iso * pm.copies[c].projection;
        }
        if (!matched) return std::nullopt;
    }
    return w;
}

/// End(X) -> End(X)/rad = k for an indecomposable X with split local
/// endomorphism ring.
template <class F>
struct ResidueMap {
    Representation<F> module;
    HomSpace<F> end;
    Vector<F> lambda;  // value on each End basis element

    typename F::Element operator()(const Morphism<F>& g) const {
        const F& f = module.field();
        auto c = end.coordinates(g);
        auto out = f.zero();
        for (std::size_t i = 0; i < c.size(); ++i) out = f.add(out, f.mul(c[i], lambda[i]));
        return out;
    }
};

template <class F>
std::optional<ResidueMap<F>> residue_map(const Representation<F>& x, std::uint64_t seed = 0) {
    auto e = end_algebra(x);
    std::mt19937_64 rng(seed);
    Vector<F> lambda;
    if (!detail::certify_local(x, e, rng, &lambda)) return std::nullopt;
    return ResidueMap<F>{x, e.hom, lambda};
}

/// Multiplicity of X as a direct summand of M: rank of the pairing
/// Hom(X, M) x Hom(M, X) -> End(X)/rad.
template <class F>
std::size_t summand_multiplicity(const ResidueMap<F>& x, const Representation<F>& m) {
    if (m.is_zero() || x.module.is_zero()) return 0;
    auto in = hom_basis(x.module, m);
    auto out = hom_basis(m, x.module);
    if (in.dim() == 0 || out.dim() == 0) return 0;
    Matrix<F> pairing(m.field(), in.dim(), out.dim());
    for (std::size_t a = 0; a < in.dim(); ++a)
        for (std::size_t b = 0; b < out.dim(); ++b) pairing(a, b) = x(out.basis[b] * in.basis[a]);
    return rank(pairing);
}

/// Is M projective? Compares with the projective cover dimension.
template <class F>
bool is_projective(const Representation<F>& m) {
    if (m.is_zero()) return true;
    auto gens = top_generators(m);
    std::size_t d = 0;
    for (const auto& [v, x] : gens) d += projective(m.algebra(), v).total_dim();
    return d == m.total_dim();
}

/// M with every projective direct summand removed (up to isomorphism).
template <class F>
Representation<F> strip_projectives(const Representation<F>& m, std::uint64_t seed = 0) {
    auto d = decompose(m, seed);
    std::vector<Representation<F>> keep;
    for (const auto& p : d.parts)
        if (!is_projective(p.rep))
            for (std::size_t k = 0; k < p.multiplicity; ++k) keep.push_back(p.rep);
    return direct_sum(keep, m.algebra());
}

}  // namespace gkt
