#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gkt/rep/resolution.hpp"

namespace gkt {

/// A homological dimension that is either known exactly or only bounded
/// below (the computation stopped at `bound`).
struct Bounded {
    std::optional<std::size_t> value;
    std::size_t bound = 0;

    static Bounded exact(std::size_t v) { return Bounded{v, 0}; }
    static Bounded at_least(std::size_t b) { return Bounded{std::nullopt, b}; }
    bool finite() const { return value.has_value(); }
    std::string to_string() const { return value ? std::to_string(*value) : ">=" + std::to_string(bound); }
    bool operator==(const Bounded&) const = default;
};

inline Bounded max_bounded(const std::vector<Bounded>& xs) {
    std::size_t best = 0;
    std::optional<std::size_t> unbounded;
    for (const auto& x : xs) {
        if (!x.finite()) unbounded = std::max(unbounded.value_or(0), x.bound);
        else best = std::max(best, *x.value);
    }
    if (unbounded) return Bounded::at_least(std::max(*unbounded, best));
    return Bounded::exact(best);
}

enum class GorensteinStatus { Yes, NoWithinBound, Unknown };

struct DimensionReport {
    std::vector<Bounded> simple_proj_dims;
    Bounded global_dim;
    Bounded self_inj_dim_left;   // injective dimension of A as a left module
    Bounded self_inj_dim_right;  // injective dimension of A as a right module
    GorensteinStatus gorenstein = GorensteinStatus::Unknown;
    std::size_t gorenstein_dim = 0;  // valid when gorenstein == Yes
    std::size_t bound = 0;

    bool is_gorenstein() const { return gorenstein == GorensteinStatus::Yes; }
    bool is_self_injective() const { return is_gorenstein() && gorenstein_dim == 0; }
};

template <class F>
Bounded bounded_pd(const Representation<F>& m, std::size_t bound) {
    auto pd = projective_dimension(m, bound);
    return pd ? Bounded::exact(*pd) : Bounded::at_least(bound);
}

template <class F>
DimensionReport dimension_report(const Algebra<F>& a, std::size_t bound = 10) {
    if (bound < 1) throw InvalidArgument("dimension_report: bound must be at least 1");
    DimensionReport r;
    r.bound = bound;
    for (std::size_t v = 0; v < a.num_vertices(); ++v) r.simple_proj_dims.push_back(bounded_pd(simple(a, v), bound));
    r.global_dim = max_bounded(r.simple_proj_dims);
    std::vector<Bounded> left, right;
    for (std::size_t v = 0; v < a.num_vertices(); ++v) {
        // id(_A A) = pd over A^op of D(A); id(A_A) = pd over A of D(A_A)
        left.push_back(bounded_pd(dual(projective(a, v)), bound));
        right.push_back(bounded_pd(injective(a, v), bound));
    }
    r.self_inj_dim_left = max_bounded(left);
    r.self_inj_dim_right = max_bounded(right);
    if (r.self_inj_dim_left.finite() && r.self_inj_dim_right.finite()) {
        r.gorenstein = GorensteinStatus::Yes;
        r.gorenstein_dim = std::max(*r.self_inj_dim_left.value, *r.self_inj_dim_right.value);
    } else {
        r.gorenstein = GorensteinStatus::NoWithinBound;
    }
    return r;
}

enum class GPStatus { GorensteinProjective, NotGP, Inconclusive };

struct GPVerdict {
    GPStatus status = GPStatus::Inconclusive;
    std::string criterion;                            // projective | self-injective | ext-vanishing | periodicity
    std::size_t ext_range = 0;                        // Ext^i(M, A) = 0 verified for 1 <= i <= ext_range
    std::optional<std::size_t> witness_degree;        // NotGP: Ext^i(M, A) != 0
    std::optional<std::pair<std::size_t, std::size_t>> period;  // Ω^a ≅ Ω^b

    bool is_gp() const { return status == GPStatus::GorensteinProjective; }
};

template <class F>
GPVerdict is_gp(const Representation<F>& m, const DimensionReport& report, std::size_t bound = 10) {
    GPVerdict v;
    if (is_projective(m)) {
        v.status = GPStatus::GorensteinProjective;
        v.criterion = "projective";
        return v;
    }
    if (report.is_self_injective()) {
        v.status = GPStatus::GorensteinProjective;
        v.criterion = "self-injective";
        return v;
    }
    auto a = regular_module(m.algebra());
    auto ext_vanishes = [&](std::size_t i) { return ext(m, a, i).dimension == 0; };
    if (report.is_gorenstein()) {
        for (std::size_t i = 1; i <= report.gorenstein_dim; ++i) {
            if (!ext_vanishes(i)) {
                v.status = GPStatus::NotGP;
                v.criterion = "ext-vanishing";
                v.witness_degree = i;
                return v;
            }
            v.ext_range = i;
        }
        v.status = GPStatus::GorensteinProjective;
        v.criterion = "ext-vanishing";
        return v;
    }
    // periodicity search: Ω^a ≅ Ω^b with Ext^i(M, A) = 0 for i <= b
    std::vector<Representation<F>> omegas{m};
    for (std::size_t b = 1; b <= bound; ++b) {
        if (!ext_vanishes(b)) {
            v.status = GPStatus::NotGP;
            v.criterion = "ext-vanishing";
            v.witness_degree = b;
            return v;
        }
        v.ext_range = b;
        omegas.push_back(syzygy(m, b));
        for (std::size_t aidx = 0; aidx < b; ++aidx) {
            if (omegas[aidx].is_zero() && omegas[b].is_zero()) continue;
            if (is_isomorphic(omegas[aidx], omegas[b])) {
                v.status = GPStatus::GorensteinProjective;
                v.criterion = "periodicity";
                v.period = std::make_pair(aidx, b);
                return v;
            }
        }
    }
    v.criterion = "periodicity";
    return v;
}

/// A module together with a Gorenstein projective certificate. Only
/// `certify_gp` creates these.
template <class F>
class CertifiedGP {
public:
    const Representation<F>& module() const { return m_; }
    const GPVerdict& verdict() const { return v_; }

    template <class G>
    friend CertifiedGP<G> certify_gp(const Representation<G>&, const DimensionReport&, std::size_t);
    template <class G>
    friend CertifiedGP<G> certify_projective(const Representation<G>&);

private:
    CertifiedGP(Representation<F> m, GPVerdict v) : m_(std::move(m)), v_(std::move(v)) {}
    Representation<F> m_;
    GPVerdict v_;
};

template <class F>
CertifiedGP<F> certify_gp(const Representation<F>& m, const DimensionReport& report, std::size_t bound = 10) {
    auto v = is_gp(m, report, bound);
    if (!v.is_gp())
        throw NotGPInput(std::string("module ") + m.dim_vector_string() + " has no Gorenstein projective certificate (" +
                         (v.status == GPStatus::NotGP ? "Ext^" + std::to_string(*v.witness_degree) + "(M, A) != 0"
                                                      : std::string("inconclusive")) +
                         ")");
    return CertifiedGP<F>(m, v);
}

template <class F>
CertifiedGP<F> certify_projective(const Representation<F>& m) {
    if (!is_projective(m)) throw NotGPInput("module " + m.dim_vector_string() + " is not projective");
    GPVerdict v;
    v.status = GPStatus::GorensteinProjective;
    v.criterion = "projective";
    return CertifiedGP<F>(m, v);
}

enum class CMVerdict { CMFree, CMFinite, Unknown };

inline std::string to_string(CMVerdict v) {
    switch (v) {
        case CMVerdict::CMFree: return "CMFree";
        case CMVerdict::CMFinite: return "CMFinite";
        default: return "Unknown";
    }
}

template <class F>
struct GPCatalog {
    Algebra<F> algebra;
    DimensionReport report;
    std::vector<CertifiedGP<F>> items;
    CMVerdict verdict = CMVerdict::Unknown;
    std::vector<std::string> notes;  // caps hit, inconclusive certificates
    std::size_t rounds = 0;

    std::size_t size() const { return items.size(); }

    /// Index of the catalog item isomorphic to an indecomposable m, if any.
    std::optional<std::size_t> find(const Representation<F>& m) const {
        for (std::size_t i = 0; i < items.size(); ++i)
            if (indecomposable_iso(m, items[i].module())) return i;
        return std::nullopt;
    }
};

struct CatalogOptions {
    std::size_t dim_cap = 0;   // 0: 64 * dim A
    std::size_t iter_cap = 32;
    std::size_t bound = 10;
    std::size_t probe_depth = 4;  // seed depth when the algebra is not known to be Gorenstein
    std::uint64_t seed = 0;
};

/// Indecomposable non-projective Gorenstein projective modules reachable
/// from Ω^d of the simples under Ω, Ω^{-1} and direct summands.
template <class F>
GPCatalog<F> gp_catalog(const Algebra<F>& a, CatalogOptions opt = {}) {
    if constexpr (!F::finite) throw FieldUnsupported("gp_catalog needs a finite prime field");
    if (opt.dim_cap == 0) opt.dim_cap = 64 * a.dim();
    GPCatalog<F> cat{a, dimension_report(a, opt.bound), {}, CMVerdict::Unknown, {}, 0};
    const std::size_t depth = cat.report.is_gorenstein() ? cat.report.gorenstein_dim : opt.probe_depth;
    bool capped = false, inconclusive = false;

    std::vector<Representation<F>> frontier;
    for (std::size_t v = 0; v < a.num_vertices(); ++v) frontier.push_back(syzygy(simple(a, v), depth));

    auto absorb = [&](const Representation<F>& m, std::vector<Representation<F>>& fresh) {
        if (m.total_dim() > opt.dim_cap) {
            capped = true;
            cat.notes.push_back("module of dimension " + std::to_string(m.total_dim()) + " exceeds dim_cap " +
                                std::to_string(opt.dim_cap));
            return;
        }
        auto d = decompose(m, opt.seed);
        for (const auto& part : d.parts) {
            if (is_projective(part.rep)) continue;
            if (cat.find(part.rep)) continue;
            auto verdict = is_gp(part.rep, cat.report, opt.bound);
            if (verdict.status == GPStatus::NotGP) continue;
            if (verdict.status == GPStatus::Inconclusive) {
                inconclusive = true;
                cat.notes.push_back("inconclusive GP certificate for a summand of dimension vector " +
                                    part.rep.dim_vector_string());
                continue;
            }
            cat.items.push_back(certify_gp(part.rep, cat.report, opt.bound));
            fresh.push_back(part.rep);
        }
    };

    std::vector<Representation<F>> fresh;
    for (const auto& m : frontier) absorb(m, fresh);
    while (!fresh.empty()) {
        if (++cat.rounds > opt.iter_cap) {
            capped = true;
            cat.notes.push_back("iter_cap " + std::to_string(opt.iter_cap) + " reached");
            break;
        }
        std::vector<Representation<F>> next;
        for (const auto& g : fresh) {
            absorb(syzygy(g, 1), next);
            absorb(cosyzygy(g), next);
        }
        fresh = std::move(next);
    }
    if (capped || inconclusive) cat.verdict = CMVerdict::Unknown;
    else cat.verdict = cat.items.empty() ? CMVerdict::CMFree : CMVerdict::CMFinite;
    return cat;
}

}  // namespace gkt
