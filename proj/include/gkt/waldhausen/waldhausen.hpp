#pragma once

#include <array>
#include <map>
#include <random>
#include <set>

#include "gkt/exactla/smith.hpp"
#include "gkt/stable/stable.hpp"

namespace gkt {

struct WaldhausenOptions {
    std::size_t depth = 2;          // summand multiplicity bound (capped at 4)
    std::size_t dim_factor = 8;     // object total dimension <= dim_factor * dim A
    std::uint64_t exhaustive_hom = 256;  // enumerate Hom(X, Y) fully when q^dim is at most this
    std::size_t samples_per_pair = 32;
    std::uint64_t seed = 0;
    bool alternative_subquotients = false;  // conjugate every cokernel by a random change of basis
};

template <class F>
struct WObject {
    Representation<F> rep;
    std::vector<std::size_t> items;        // multiplicity of each catalog item
    std::vector<std::size_t> projectives;  // multiplicity of each P(v)
    std::string label;
};

/// An S_2 simplex 0 >-> X >-> Y with chosen subquotient Z = Y/X.
template <class F>
struct S2Simplex {
    std::size_t x, y;         // object indices
    Morphism<F> cofibration;  // X -> Y
    Representation<F> quotient;
    Morphism<F> projection;   // Y -> Z
    std::string z_class;      // weak class key of Z
};

template <class F>
struct FiniteWaldhausenData {
    GPCatalog<F> catalog;
    WaldhausenOptions options;
    std::vector<WObject<F>> objects;            // objects[0] is 0
    std::vector<std::string> object_class;      // weak class key per object
    std::vector<S2Simplex<F>> simplices;
    std::size_t dim_bound = 0;
    std::size_t maps_examined = 0;
    std::vector<ResidueMap<F>> residues;  // catalog items, then P(v); for multiplicity counting
};

namespace detail {

// Weak equivalence class: multiplicities of catalog items after stripping
// projective summands.
template <class F>
std::optional<std::vector<std::size_t>> weak_class(const GPCatalog<F>& cat, const Representation<F>& m,
                                                   std::uint64_t seed) {
    std::vector<std::size_t> out(cat.size(), 0);
    if (m.is_zero()) return out;
    for (const auto& p : decompose(m, seed).parts) {
        if (is_projective(p.rep)) continue;
        auto i = cat.find(p.rep);
        if (!i) {
            if (is_gp(p.rep, cat.report, cat.report.bound).is_gp())
                throw CatalogUnknown("GP summand " + p.rep.dim_vector_string() + " outside the catalog");
            return std::nullopt;  // cokernel not GP
        }
        out[*i] += p.multiplicity;
    }
    return out;
}

// Same, counting summands by the residue pairing; falls back to a full
// decomposition when items and projectives do not account for all of M.
template <class F>
std::optional<std::vector<std::size_t>> weak_class(const FiniteWaldhausenData<F>& d, const Representation<F>& m) {
    const auto& cat = d.catalog;
    std::vector<std::size_t> out(cat.size(), 0);
    if (m.is_zero()) return out;
    std::size_t covered = 0;
    for (std::size_t i = 0; i < d.residues.size(); ++i) {
        auto mu = summand_multiplicity(d.residues[i], m);
        covered += mu * d.residues[i].module.total_dim();
        if (i < cat.size()) out[i] = mu;
    }
    if (covered == m.total_dim()) return out;
    return weak_class(cat, m, d.options.seed);
}

inline std::string class_key(const std::vector<std::size_t>& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
    return s + "]";
}

// The same module after a random change of basis at every vertex.
template <class F>
std::pair<Representation<F>, Morphism<F>> conjugate(const Representation<F>& m, std::mt19937_64& rng) {
    const F& f = m.field();
    const auto& q = m.algebra().quiver();
    Morphism<F> iso;
    std::vector<Matrix<F>> inv;
    for (std::size_t v = 0; v < q.num_vertices(); ++v) {
        for (;;) {
            Matrix<F> p(f, m.dim(v), m.dim(v));
            for (std::size_t i = 0; i < p.rows(); ++i)
                for (std::size_t j = 0; j < p.cols(); ++j) p(i, j) = f.random(rng);
            if (auto pi = inverse(p)) {
                inv.push_back(std::move(*pi));
                iso.comps.push_back(std::move(p));
                break;
            }
        }
    }
    std::vector<Matrix<F>> maps;
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        const auto& ar = q.arrow(a);
        maps.push_back(iso[ar.target] * m.arrow_map(a) * inv[ar.source]);
    }
    Representation<F> out(m.algebra(), m.dims(), std::move(maps));
    return {out, iso};  // iso: m -> out
}

template <class F>
bool dims_fit(const Representation<F>& x, const Representation<F>& y) {
    for (std::size_t v = 0; v < x.dims().size(); ++v)
        if (x.dim(v) > y.dim(v)) return false;
    return true;
}

// Is f a weak equivalence, i.e. invertible in the stable category?
template <class F>
bool is_weak_equivalence(const Morphism<F>& f, const Representation<F>& m, const Representation<F>& n) {
    auto nm = stable_hom(n, m);
    auto mm = stable_hom(m, m);
    auto nn = stable_hom(n, n);
    return stable_inverse(f, nm, mm, nn, m, n).has_value();
}

}  // namespace detail

/// Finite model of the Waldhausen category GP(A): objects are direct sums
/// of catalog items and indecomposable projectives, cofibrations are
/// monomorphisms between them with GP cokernel.
template <class F>
FiniteWaldhausenData<F> build_wdata(const GPCatalog<F>& cat, WaldhausenOptions opt = {}) {
    if (cat.verdict == CMVerdict::Unknown) throw CatalogUnknown("Waldhausen data needs a closed catalog");
    if constexpr (!F::finite) throw FieldUnsupported("Waldhausen data needs a finite prime field");
    opt.depth = std::min<std::size_t>(opt.depth, 4);
    const auto& a = cat.algebra;
    const F& f = a.field();
    FiniteWaldhausenData<F> d{cat, opt, {}, {}, {}, opt.dim_factor * a.dim(), 0};

    std::vector<Representation<F>> pieces;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < cat.size(); ++i) {
        pieces.push_back(cat.items[i].module());
        names.push_back("G" + std::to_string(i + 1));
    }
    for (std::size_t v = 0; v < a.num_vertices(); ++v) {
        pieces.push_back(projective(a, v));
        names.push_back("P(" + a.quiver().vertex_label(v) + ")");
    }
    // all multiplicity vectors in [0, depth]^pieces within the dimension bound
    std::vector<std::size_t> mult(pieces.size(), 0);
    for (;;) {
        std::size_t total = 0;
        for (std::size_t i = 0; i < pieces.size(); ++i) total += mult[i] * pieces[i].total_dim();
        if (total <= d.dim_bound) {
            std::vector<Representation<F>> parts;
            std::string label;
            for (std::size_t i = 0; i < pieces.size(); ++i) {
                for (std::size_t k = 0; k < mult[i]; ++k) parts.push_back(pieces[i]);
                if (mult[i]) label += (label.empty() ? "" : "+") + (mult[i] > 1 ? std::to_string(mult[i]) : "") + names[i];
            }
            WObject<F> o{direct_sum(parts, a),
                         std::vector<std::size_t>(mult.begin(), mult.begin() + static_cast<std::ptrdiff_t>(cat.size())),
                         std::vector<std::size_t>(mult.begin() + static_cast<std::ptrdiff_t>(cat.size()), mult.end()),
                         label.empty() ? "0" : label};
            d.object_class.push_back(detail::class_key(o.items));
            d.objects.push_back(std::move(o));
        }
        std::size_t i = 0;
        while (i < mult.size() && mult[i] == opt.depth) mult[i++] = 0;
        if (i == mult.size()) break;
        ++mult[i];
    }

    for (const auto& p : pieces) {
        auto r = residue_map(p, opt.seed);
        if (!r) throw std::logic_error("catalog item or projective with non-local endomorphism ring");
        d.residues.push_back(std::move(*r));
    }

    std::mt19937_64 rng(opt.seed);
    for (std::size_t xi = 0; xi < d.objects.size(); ++xi) {
        for (std::size_t yi = 0; yi < d.objects.size(); ++yi) {
            const auto& x = d.objects[xi].rep;
            const auto& y = d.objects[yi].rep;
            if (!detail::dims_fit(x, y)) continue;
            std::vector<Morphism<F>> candidates;
            if (x.is_zero()) {
                candidates.push_back(zero_morphism(x, y));
            } else {
                auto h = hom_basis(x, y);
                if (h.dim() == 0) continue;
                const double total = std::pow(static_cast<double>(f.order()), static_cast<double>(h.dim()));
                if (total <= static_cast<double>(opt.exhaustive_hom)) {
                    const std::uint64_t q = f.order();
                    for (std::uint64_t code = 1; code < static_cast<std::uint64_t>(total); ++code) {
                        Vector<F> c(h.dim());
                        std::uint64_t t = code;
                        for (auto& ci : c) {
                            ci = f.element_at(t % q);
                            t /= q;
                        }
                        candidates.push_back(h.element(c));
                    }
                } else {
                    candidates = h.basis;
                    for (std::size_t t = 0; t < opt.samples_per_pair; ++t) {
                        Vector<F> c(h.dim());
                        for (auto& ci : c) ci = f.random(rng);
                        candidates.push_back(h.element(c));
                    }
                }
            }
            for (const auto& g : candidates) {
                ++d.maps_examined;
                if (!g.is_injective()) continue;
                auto [z, p] = cokernel(x, y, g);
                if (opt.alternative_subquotients) {
                    auto [z2, iso] = detail::conjugate(z, rng);
                    p = iso * p;
                    z = z2;
                }
                auto cls = detail::weak_class(d, z);
                if (!cls) continue;
                d.simplices.push_back({xi, yi, g, z, p, detail::class_key(*cls)});
            }
        }
    }
    return d;
}

/// (d_2, d_1, d_0) = (X, Y, Y/X) of every S_2 simplex, as weak class keys.
template <class F>
std::vector<std::array<std::string, 3>> s2_faces(const FiniteWaldhausenData<F>& d) {
    std::vector<std::array<std::string, 3>> out;
    for (const auto& s : d.simplices) out.push_back({d.object_class[s.x], d.object_class[s.y], s.z_class});
    return out;
}

/// K0 read off the S_2 data: free on weak classes, one relation per S_2
/// simplex.
template <class F>
AbelianGroupDescription k0_oracle(const FiniteWaldhausenData<F>& d) {
    std::map<std::string, std::size_t> index;
    auto id = [&](const std::string& k) {
        auto it = index.find(k);
        if (it != index.end()) return it->second;
        std::size_t i = index.size();
        index.emplace(k, i);
        return i;
    };
    for (const auto& c : d.object_class) id(c);
    auto faces = s2_faces(d);
    for (const auto& t : faces) id(t[2]);
    std::set<std::vector<std::int64_t>> rows;
    for (const auto& t : faces) {
        std::vector<std::int64_t> r(index.size(), 0);
        r[id(t[1])] += 1;
        r[id(t[0])] -= 1;
        r[id(t[2])] -= 1;
        rows.insert(std::move(r));
    }
    std::vector<std::string> gens(index.size());
    for (const auto& [k, i] : index) gens[i] = k;
    MatZ m(rows.size(), gens.size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        for (std::size_t j = 0; j < r.size(); ++j) m(i, j) = r[j];
        ++i;
    }
    return group_from_presentation(gens, m);
}

/// Re-verify the defining sequence X >-> Y ->> Z of a simplex.
template <class F>
bool simplex_exact(const FiniteWaldhausenData<F>& d, const S2Simplex<F>& s) {
    const auto& x = d.objects[s.x].rep;
    const auto& y = d.objects[s.y].rep;
    if (!is_homomorphism(x, y, s.cofibration) || !is_homomorphism(y, s.quotient, s.projection)) return false;
    if (!s.cofibration.is_injective() || !s.projection.is_surjective()) return false;
    if (!(s.projection * s.cofibration).is_zero()) return false;
    return x.total_dim() + s.quotient.total_dim() == y.total_dim();
}

/// An S_3 simplex C1 >-> C2 >-> C3 with every subquotient C_ij = C_j / C_i.
template <class F>
struct S3Simplex {
    std::array<Representation<F>, 4> c;               // c[0] = 0
    std::map<std::pair<int, int>, Representation<F>> sub;   // (i, j), i < j
    std::map<std::pair<int, int>, Morphism<F>> proj;        // C_j -> C_ij
};

template <class F>
struct S2Data {
    Representation<F> a, b, q;  // a >-> b ->> q
    Morphism<F> incl, proj;
};

namespace detail {

// Map C_ij -> C_ik (j < k) induced by C_j -> C_k.
template <class F>
Morphism<F> induced_on_quotients(const Morphism<F>& pj, const Morphism<F>& pk, const Morphism<F>& jk,
                                 const Representation<F>& qj, const Representation<F>& qk) {
    Morphism<F> out = zero_morphism(qj, qk);
    for (std::size_t v = 0; v < out.comps.size(); ++v) {
        if (qj.dim(v) == 0 || qk.dim(v) == 0) continue;
        auto section = solve_matrix(pj[v], Matrix<F>::identity(qj.field(), qj.dim(v)));
        out[v] = pk[v] * jk[v] * *section;
    }
    return out;
}

}  // namespace detail

/// Build an S_3 simplex from composable cofibrations f: C1 -> C2, g: C2 -> C3.
template <class F>
S3Simplex<F> make_s3(const Representation<F>& c1, const Representation<F>& c2, const Representation<F>& c3,
                     const Morphism<F>& f, const Morphism<F>& g) {
    S3Simplex<F> s;
    s.c = {Representation<F>::zero(c1.algebra()), c1, c2, c3};
    std::map<std::pair<int, int>, Morphism<F>> into;  // C_i -> C_j
    into[{1, 2}] = f;
    into[{2, 3}] = g;
    into[{1, 3}] = g * f;
    for (int j = 1; j <= 3; ++j) {
        s.sub[{0, j}] = s.c[j];
        s.proj[{0, j}] = identity_morphism(s.c[j]);
    }
    for (auto [i, j] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}}) {
        auto [q, p] = cokernel(s.c[i], s.c[j], into[{i, j}]);
        s.sub[{i, j}] = q;
        s.proj[{i, j}] = p;
    }
    return s;
}

/// Face d_k of an S_3 simplex. d_0 re-derives the quotient flag
/// C_12 >-> C_13 and keeps the chosen C_23 as its subquotient.
template <class F>
S2Data<F> s3_face(const S3Simplex<F>& s, int k, const Morphism<F>& f, const Morphism<F>& g) {
    S2Data<F> out;
    switch (k) {
        case 0: {
            out.a = s.sub.at({1, 2});
            out.b = s.sub.at({1, 3});
            out.q = s.sub.at({2, 3});
            out.incl = detail::induced_on_quotients(s.proj.at({1, 2}), s.proj.at({1, 3}), g, out.a, out.b);
            out.proj = detail::induced_on_quotients(s.proj.at({1, 3}), s.proj.at({2, 3}), identity_morphism(s.c[3]),
                                                     out.b, out.q);
            break;
        }
        case 1:
            out = {s.c[2], s.c[3], s.sub.at({2, 3}), g, s.proj.at({2, 3})};
            break;
        case 2:
            out = {s.c[1], s.c[3], s.sub.at({1, 3}), g * f, s.proj.at({1, 3})};
            break;
        default:
            out = {s.c[1], s.c[2], s.sub.at({1, 2}), f, s.proj.at({1, 2})};
    }
    return out;
}

/// Face d_k of an S_2 simplex: d_0 = quotient, d_1 = middle, d_2 = sub.
template <class F>
const Representation<F>& s2_face(const S2Data<F>& s, int k) {
    return k == 0 ? s.q : (k == 1 ? s.b : s.a);
}

struct S3Report {
    std::size_t flags = 0;
    std::vector<std::string> failures;
};

/// Sample 3-flags from composable simplices and check that every face is a
/// short exact sequence and d_i d_j = d_{j-1} d_i (i < j) up to isomorphism.
template <class F>
S3Report s3_check(const FiniteWaldhausenData<F>& d, std::size_t samples, std::uint64_t seed = 0) {
    S3Report rep;
    std::mt19937_64 rng(seed);
    std::map<std::size_t, std::vector<std::size_t>> from;  // simplices by source object
    for (std::size_t i = 0; i < d.simplices.size(); ++i) from[d.simplices[i].x].push_back(i);
    if (d.simplices.empty()) return rep;
    for (std::size_t t = 0; t < samples * 8 && rep.flags < samples; ++t) {
        const auto& s1 = d.simplices[rng() % d.simplices.size()];
        auto it = from.find(s1.y);
        if (it == from.end()) continue;
        const auto& s2 = d.simplices[it->second[rng() % it->second.size()]];
        const auto& c1 = d.objects[s1.x].rep;
        const auto& c2 = d.objects[s1.y].rep;
        const auto& c3 = d.objects[s2.y].rep;
        auto s = make_s3(c1, c2, c3, s1.cofibration, s2.cofibration);
        ++rep.flags;
        std::array<S2Data<F>, 4> faces;
        for (int k = 0; k < 4; ++k) {
            faces[k] = s3_face(s, k, s1.cofibration, s2.cofibration);
            const auto& fc = faces[k];
            bool ok = fc.incl.is_injective() && fc.proj.is_surjective() && (fc.proj * fc.incl).is_zero() &&
                      fc.a.total_dim() + fc.q.total_dim() == fc.b.total_dim() && is_homomorphism(fc.a, fc.b, fc.incl) &&
                      is_homomorphism(fc.b, fc.q, fc.proj);
            if (!ok)
                rep.failures.push_back("face d_" + std::to_string(k) + " of flag " + d.objects[s1.x].label + " > " +
                                       d.objects[s1.y].label + " > " + d.objects[s2.y].label + " is not exact");
        }
        // the chosen C_23 must be a cokernel of the re-derived C_12 >-> C_13
        if (faces[0].incl.is_injective() &&
            !is_isomorphic(cokernel(faces[0].a, faces[0].b, faces[0].incl).first, faces[0].q))
            rep.failures.push_back("C_13 / C_12 is not isomorphic to the chosen C_23 on flag " + d.objects[s1.x].label +
                                   " > " + d.objects[s1.y].label + " > " + d.objects[s2.y].label);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 4; ++j) {
                const auto& lhs = s2_face(faces[j], i);
                const auto& rhs = s2_face(faces[i], j - 1);
                if (!is_isomorphic(lhs, rhs))
                    rep.failures.push_back("d_" + std::to_string(i) + " d_" + std::to_string(j) + " != d_" +
                                           std::to_string(j - 1) + " d_" + std::to_string(i) + " on flag " +
                                           d.objects[s1.x].label + " > " + d.objects[s1.y].label + " > " +
                                           d.objects[s2.y].label);
            }
    }
    return rep;
}

template <class F>
struct Pushout {
    Representation<F> object;
    Morphism<F> from_y, from_z;
    Morphism<F> proj;  // Y + Z -> object
};

/// Pushout of a cofibration f: X -> Y along g: X -> Z, as the cokernel of
/// x -> (f x, -g x).
template <class F>
Pushout<F> pushout(const Representation<F>& x, const Representation<F>& y, const Representation<F>& z,
                   const Morphism<F>& f, const Morphism<F>& g) {
    auto ds = direct_sum_data<F>({y, z}, x.algebra());
    auto h = ds.inclusions[0] * f - ds.inclusions[1] * g;
    auto [po, p] = cokernel(x, ds.sum, h);
    return {po, p * ds.inclusions[0], p * ds.inclusions[1], p};
}

struct GluingReport {
    std::size_t ladders = 0;
    std::vector<std::string> counterexamples;
};

/// Random ladders (X' <- X -> Y over X' <- ... ) with weak-equivalence
/// verticals; the induced map of pushouts must be a weak equivalence and the
/// pushouts must stay in the catalog closure.
template <class F>
GluingReport gluing_check(const FiniteWaldhausenData<F>& d, std::size_t trials, std::uint64_t seed = 0) {
    GluingReport rep;
    const auto& cat = d.catalog;
    const auto& a = cat.algebra;
    const F& f = a.field();
    std::mt19937_64 rng(seed);
    if (d.simplices.empty()) return rep;
    auto random_map = [&](const Representation<F>& m, const Representation<F>& n) {
        auto h = hom_basis(m, n);
        Vector<F> c(h.dim());
        for (auto& ci : c) ci = f.random(rng);
        return h.dim() ? h.element(c) : zero_morphism(m, n);
    };
    auto random_auto = [&](const Representation<F>& m) {
        auto h = hom_basis(m, m);
        for (int t = 0; t < 64; ++t) {
            Vector<F> c(h.dim());
            for (auto& ci : c) ci = f.random(rng);
            auto g = h.element(c);
            if (g.is_iso()) return g;
        }
        return identity_morphism(m);
    };
    auto random_projective = [&]() {
        std::vector<Representation<F>> ps;
        for (std::size_t v = 0; v < a.num_vertices(); ++v)
            if (rng() % 2) ps.push_back(projective(a, v));
        return direct_sum(ps, a);
    };
    for (std::size_t t = 0; t < trials; ++t) {
        const auto& s = d.simplices[rng() % d.simplices.size()];
        const auto& x = d.objects[s.x].rep;
        const auto& y = d.objects[s.y].rep;
        const auto& z = d.objects[rng() % d.objects.size()].rep;
        auto fx = s.cofibration;
        auto gx = random_map(x, z);
        // bottom row: X' = X + P, Y' = Y + P (+ Q swapped in), Z' = Z + R
        auto p = random_projective();
        auto qproj = random_projective();
        auto r = random_projective();
        auto xd = direct_sum_data<F>({x, p}, a);
        auto yd = direct_sum_data<F>({y, p, qproj}, a);
        auto zd = direct_sum_data<F>({z, r}, a);
        auto fb = yd.inclusions[0] * fx * xd.projections[0] + yd.inclusions[1] * xd.projections[1];
        auto c = random_auto(z);
        auto h = random_map(p, r);
        auto gb = zd.inclusions[0] * c * gx * xd.projections[0] + zd.inclusions[1] * h * xd.projections[1];
        auto vx = xd.inclusions[0];
        auto vy = yd.inclusions[0];
        auto vz = zd.inclusions[0] * c;
        ++rep.ladders;
        std::string where = "ladder " + std::to_string(t) + " on " + d.objects[s.x].label + " > " + d.objects[s.y].label;
        if (!(fb * vx == vy * fx) || !(gb * vx == vz * gx)) {
            rep.counterexamples.push_back(where + ": ladder squares do not commute");
            continue;
        }
        if (!fb.is_injective()) {
            rep.counterexamples.push_back(where + ": bottom map is not a cofibration");
            continue;
        }
        auto top = pushout(x, y, z, fx, gx);
        auto bot = pushout(xd.sum, yd.sum, zd.sum, fb, gb);
        // induced map: top.proj * (y + z) -> bot.proj * (vy + vz)
        auto ds = direct_sum_data<F>({y, z}, a);
        auto dsb = direct_sum_data<F>({yd.sum, zd.sum}, a);
        auto v = dsb.inclusions[0] * vy * ds.projections[0] + dsb.inclusions[1] * vz * ds.projections[1];
        auto phi = detail::induced_on_quotients(top.proj, bot.proj, v, top.object, bot.object);
        if (!is_homomorphism(top.object, bot.object, phi)) {
            rep.counterexamples.push_back(where + ": induced pushout map is not a homomorphism");
            continue;
        }
        for (const auto* po : {&top.object, &bot.object}) {
            bool in_closure = true;
            try {
                in_closure = detail::weak_class(d, *po).has_value();
            } catch (const CatalogUnknown&) {
                in_closure = false;
            }
            if (!in_closure) rep.counterexamples.push_back(where + ": pushout " + po->dim_vector_string() + " left GP(A)");
        }
        // Z -> pushout is a cofibration
        if (!top.from_z.is_injective()) rep.counterexamples.push_back(where + ": Z -> pushout is not injective");
        if (!detail::is_weak_equivalence(phi, top.object, bot.object))
            rep.counterexamples.push_back(where + ": induced map of pushouts is not a weak equivalence");
    }
    return rep;
}

}  // namespace gkt
