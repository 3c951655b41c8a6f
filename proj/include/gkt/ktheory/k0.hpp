#pragma once

#include <cmath>
#include <random>
#include <stdexcept>

#include "gkt/exactla/smith.hpp"
#include "gkt/stable/stable.hpp"

namespace gkt {

struct K0Relation {
    std::string description;           // e.g. "0 -> G1 -> E -> G1 -> 0, class (1)"
    std::vector<std::int64_t> row;     // [E] - [X] - [Z] in catalog coordinates
};

struct K0Result {
    AbelianGroupDescription group;
    std::vector<std::string> generators;
    std::vector<K0Relation> relations;
    bool sampled = false;  // some Ext^1 space was too large to enumerate fully

    MatZ relation_matrix() const {
        MatZ m(relations.size(), generators.size());
        for (std::size_t i = 0; i < relations.size(); ++i)
            for (std::size_t j = 0; j < generators.size(); ++j) m(i, j) = relations[i].row[j];
        return m;
    }
};

struct K0Options {
    std::uint64_t exhaustive_limit = 4096;  // enumerate all of Ext^1 when q^dim is at most this
    std::size_t random_classes = 128;
    std::uint64_t seed = 0;
};

/// Class of a module in the free group on catalog items: decompose and
/// drop projective summands.
template <class F>
std::vector<std::int64_t> catalog_class(const GPCatalog<F>& cat, const Representation<F>& m, std::uint64_t seed = 0) {
    std::vector<std::int64_t> out(cat.size(), 0);
    if (m.is_zero()) return out;
    for (const auto& p : decompose(m, seed).parts) {
        if (is_projective(p.rep)) continue;
        auto i = cat.find(p.rep);
        if (!i) throw CatalogUnknown("summand " + p.rep.dim_vector_string() + " is not in the catalog");
        out[*i] += static_cast<std::int64_t>(p.multiplicity);
    }
    return out;
}

namespace detail {

template <class F>
void check_extension(const typename Ext1Space<F>::Extension& e, const Representation<F>& x, const Representation<F>& z) {
    bool ok = e.middle.total_dim() == x.total_dim() + z.total_dim() && e.inclusion.is_injective() &&
              e.projection.is_surjective() && (e.projection * e.inclusion).is_zero() &&
              is_homomorphism(x, e.middle, e.inclusion) && is_homomorphism(e.middle, z, e.projection);
    if (!ok) throw std::logic_error("harvested sequence is not short exact");
}

}  // namespace detail

/// Gorenstein K0: free abelian group on catalog classes modulo
/// [Y] = [X] + [Z] for short exact sequences of GP modules; projectives are 0.
template <class F>
K0Result k0_gorenstein(const GPCatalog<F>& cat, K0Options opt = {}) {
    if (cat.verdict == CMVerdict::Unknown)
        throw CatalogUnknown("K0 needs a closed catalog (verdict " + to_string(cat.verdict) + ")");
    const auto& a = cat.algebra;
    const F& f = a.field();
    K0Result out;
    for (std::size_t i = 0; i < cat.size(); ++i) out.generators.push_back("G" + std::to_string(i + 1));

    struct End {
        std::string label;
        Representation<F> rep;
    };
    std::vector<End> ends;
    for (std::size_t i = 0; i < cat.size(); ++i) ends.push_back({out.generators[i], cat.items[i].module()});
    for (std::size_t v = 0; v < a.num_vertices(); ++v)
        ends.push_back({"P(" + a.quiver().vertex_label(v) + ")", projective(a, v)});

    std::mt19937_64 rng(opt.seed);
    auto add_row = [&](const Representation<F>& e, const End& x, const End& z, const std::string& cls) {
        if (!is_gp(e, cat.report, cat.report.bound).is_gp())
            throw std::logic_error("middle term of a GP extension failed GP certification");
        auto r = catalog_class(cat, e, opt.seed);
        auto rx = catalog_class(cat, x.rep, opt.seed);
        auto rz = catalog_class(cat, z.rep, opt.seed);
        for (std::size_t j = 0; j < r.size(); ++j) r[j] -= rx[j] + rz[j];
        out.relations.push_back({"0 -> " + x.label + " -> E -> " + z.label + " -> 0, class " + cls, std::move(r)});
    };
    auto coeff_string = [&](const Vector<F>& c) {
        std::string s = "(";
        for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + f.to_string(c[i]);
        return s + ")";
    };

    for (const auto& z : ends) {
        for (const auto& x : ends) {
            add_row(direct_sum(x.rep, z.rep), x, z, "split");
            auto sp = ext1_space(z.rep, x.rep);
            const std::size_t d = sp.dim();
            if (d == 0) continue;
            auto harvest = [&](const Vector<F>& c) {
                auto e = sp.middle_term(c);
                detail::check_extension<F>(e, x.rep, z.rep);
                add_row(e.middle, x, z, coeff_string(c));
            };
            const double total = std::pow(static_cast<double>(f.order()), static_cast<double>(d));
            if (total <= static_cast<double>(opt.exhaustive_limit)) {
                const std::uint64_t q = f.order();
                for (std::uint64_t code = 1; code < static_cast<std::uint64_t>(total); ++code) {
                    Vector<F> c(d);
                    std::uint64_t t = code;
                    for (auto& ci : c) {
                        ci = f.element_at(t % q);
                        t /= q;
                    }
                    harvest(c);
                }
            } else {
                out.sampled = true;
                for (std::size_t i = 0; i < d; ++i) {
                    Vector<F> c(d, f.zero());
                    c[i] = f.one();
                    harvest(c);
                }
                for (std::size_t t = 0; t < opt.random_classes; ++t) {
                    Vector<F> c(d);
                    for (auto& ci : c) ci = f.random(rng);
                    harvest(c);
                }
            }
        }
    }
    out.group = group_from_presentation(out.generators, out.relation_matrix());
    return out;
}

}  // namespace gkt
