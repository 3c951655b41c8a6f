// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <iostream>
#include <numeric>
#include <sstream>

#include "gkt/morita/morita.hpp"
#include "gkt/waldhausen/waldhausen.hpp"
#include "support.hpp"

using namespace gkt;
using namespace testalg;
using PF = PrimeField;

namespace {

struct Criterion {
    bool ok = true;
    std::ostringstream notes;

    void check(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes << " [failed: " << what << "]";
        }
    }
};

AbelianGroupDescription cyclic(std::int64_t n) {
    AbelianGroupDescription g;
    if (n > 1) g.invariant_factors.push_back(Integer(n));
    return g;
}

AbelianGroupDescription integers() {
    AbelianGroupDescription g;
    g.free_rank = 1;
    return g;
}

void report(int n, const std::string& title, const Criterion& c, int& failures) {
    std::cout << "criterion " << n << ": " << (c.ok ? "PASS" : "FAIL") << "  " << title << c.notes.str() << std::endl;
    if (!c.ok) ++failures;
}

// Leibniz expansion, independent of the elimination in whitehead_reduce
Vector<PF> leibniz_det(const CommRing<PF>& r, const RingMatrix<PF>& m) {
    const std::size_t n = m.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Vector<PF> out = r.zero();
    do {
        std::size_t inv = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        Vector<PF> t = r.one();
        for (std::size_t i = 0; i < n; ++i) t = r.mul(t, m[i][perm[i]]);
        out = inv % 2 ? r.sub(out, t) : r.add(out, t);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

Criterion criterion1() {
    Criterion c;
    PF f(5);
    auto a = example61A(f);
    auto rep = dimension_report(a);
    c.check(rep.is_gorenstein(), "Gorenstein");
    c.check(rep.self_inj_dim_left == Bounded::exact(2), "left self-injective dimension " + rep.self_inj_dim_left.to_string());
    c.check(rep.self_inj_dim_right == Bounded::exact(2), "right self-injective dimension " + rep.self_inj_dim_right.to_string());
    auto cat = gp_catalog(a);
    c.check(cat.verdict == CMVerdict::CMFinite, "verdict " + to_string(cat.verdict));
    c.check(cat.size() == 1, "catalog size " + std::to_string(cat.size()));
    if (cat.size() == 1) {
        auto g = cyclic_module(a, basis_index(a, {"beta", "alpha"}));
        auto w = is_weakly_equivalent(cat.items[0], certify_gp(g, cat.report));
        c.check(w.equivalent && w.witness.has_value(), "stable iso to the module generated by beta*alpha");
    }
    c.notes << " (inj.dims " << rep.self_inj_dim_left.to_string() << "/" << rep.self_inj_dim_right.to_string()
            << ", catalog " << cat.size() << ")";
    return c;
}

Criterion criterion2() {
    Criterion c;
    std::string k0s;
    for (std::uint32_t q : {3u, 5u, 7u}) {
        PF f(q);
        for (auto a : {example61A(f), example61B(f)}) {
            auto cat = gp_catalog(a);
            if (q == 5) {
                auto k0 = k0_gorenstein(cat).group;
                k0s += " " + a.name() + ": K0 = " + k0.to_string() + ";";
                c.check(k0.same_group(integers()), a.name() + " K0 = Z (got " + k0.to_string() + ")");
                if (cat.size() == 1)
                    c.check(stable_end_algebra(cat.items[0]).dim() == 1, a.name() + " stable End(G) has dimension 1");
                else
                    c.check(false, a.name() + " catalog size");
            }
            auto k1 = k1_gorenstein(cat);
            c.check(k1.group.same_group(cyclic(q - 1)),
                    a.name() + " K1 over GF(" + std::to_string(q) + ") = " + k1.group.to_string());
        }
    }
    c.notes << " (" << k0s << " K1 cyclic of order q-1 checked for q = 3, 5, 7)";
    return c;
}

Criterion criterion3() {
    Criterion c;
    PF f(3);
    for (auto a : {example62A(f), example62B(f)}) {
        auto cat = gp_catalog(a);
        c.check(cat.report.global_dim.finite(), a.name() + " global dimension " + cat.report.global_dim.to_string());
        c.check(cat.verdict == CMVerdict::CMFree, a.name() + " verdict " + to_string(cat.verdict));
        c.check(k0_gorenstein(cat).group.is_trivial(), a.name() + " K0 trivial");
        c.check(k1_gorenstein(cat).group.is_trivial(), a.name() + " K1 trivial");
        c.notes << " (" << a.name() << " gl.dim " << cat.report.global_dim.to_string() << ")";
    }
    return c;
}

Criterion criterion4() {
    Criterion c;
    PF f3(3), f5(5);
    for (auto a : {example61A(f5), example62A(f3), kx2(f3), semisimple2(f5)}) {
        auto cat = gp_catalog(a);
        auto ext = k0_gorenstein(cat).group;
        auto oracle = k0_oracle(build_wdata(cat));
        c.check(ext.same_group(oracle), a.name() + ": " + ext.to_string() + " vs oracle " + oracle.to_string());
        if (a.name() == "kx2") {
            c.check(ext.same_group(cyclic(2)), "kx2 K0 = Z/2");
            c.check(oracle.same_group(cyclic(2)), "kx2 oracle = Z/2");
        }
        c.notes << " (" << a.name() << ": " << ext.to_string() << ")";
    }
    return c;
}

Criterion criterion5() {
    Criterion c;
    PF f(3);
    std::vector<Algebra<PF>> algebras{kx2(f), example61A(f), example61B(f)};
    std::vector<GPCatalog<PF>> cats;
    for (const auto& a : algebras) cats.push_back(gp_catalog(a));
    std::mt19937_64 rng(20240);
    std::size_t disagreements = 0, equivalent = 0, expected_mismatch = 0;
    for (int t = 0; t < 200; ++t) {
        const auto& cat = cats[t % cats.size()];
        const auto& a = cat.algebra;
        auto build = [&](const std::vector<std::size_t>& mult) {
            std::vector<Representation<PF>> parts;
            for (std::size_t i = 0; i < cat.size(); ++i)
                for (std::size_t k = 0; k < mult[i]; ++k) parts.push_back(cat.items[i].module());
            for (std::size_t v = 0; v < a.num_vertices(); ++v)
                for (std::size_t k = rng() % 2; k > 0; --k) parts.push_back(projective(a, v));
            if (parts.empty()) parts.push_back(projective(a, rng() % a.num_vertices()));
            return direct_sum(parts, a);
        };
        std::vector<std::size_t> mx(cat.size()), my(cat.size());
        for (auto& m : mx) m = rng() % 3;
        my = mx;
        if (rng() % 2)
            for (auto& m : my) m = rng() % 3;
        auto x = build(mx), y = build(my);
        auto w = is_weakly_equivalent(certify_gp(x, cat.report), certify_gp(y, cat.report), t);
        bool by_witness = w.witness.has_value();
        if (by_witness != w.stripped_isomorphic) ++disagreements;
        if (by_witness != (mx == my)) ++expected_mismatch;
        if (by_witness) ++equivalent;
    }
    c.check(disagreements == 0, std::to_string(disagreements) + " witness/stripping disagreements");
    c.check(expected_mismatch == 0, std::to_string(expected_mismatch) + " disagreements with the construction");
    c.notes << " (200 pairs, " << equivalent << " equivalent, " << disagreements << " disagreements)";
    return c;
}

Criterion criterion6() {
    Criterion c;
    PF f5(5), f3(3);
    std::vector<CommRing<PF>> rings{CommRing<PF>::ground_field(f5), CommRing<PF>::from_algebra(kx2(f3))};
    std::size_t failures = 0;
    for (const auto& r : rings) {
        c.check(r.is_commutative() && r.is_local(), r.name() + " commutative local");
        std::mt19937_64 rng(404);
        const auto& f = r.field();
        for (int t = 0; t < 100; ++t) {
            auto m = random_invertible(r, 3, rng);
            auto n = random_invertible(r, 3, rng);
            auto cm = whitehead_reduce(r, m).unit;
            auto cn = whitehead_reduce(r, n).unit;
            if (whitehead_reduce(r, ring_mul(r, m, n)).unit != r.mul(cm, cn)) ++failures;
            if (cm != leibniz_det(r, m)) ++failures;
            std::size_t i = rng() % 3, j = (i + 1 + rng() % 2) % 3;
            auto x = r.zero();
            for (auto& xi : x) xi = f.random(rng);
            auto e = elementary(r, 3, i, j, x);
            if (whitehead_reduce(r, ring_mul(r, e, m)).unit != cm) ++failures;
            if (whitehead_reduce(r, ring_mul(r, m, e)).unit != cm) ++failures;
        }
    }
    c.check(failures == 0, std::to_string(failures) + " failures");
    c.notes << " (2 x 100 matrices, " << failures << " failures)";
    return c;
}

Criterion criterion7() {
    Criterion c;
    PF f3(3), f5(5);
    for (auto a : {kx2(f3), example61A(f5)}) {
        auto d = build_wdata(gp_catalog(a));
        auto g = gluing_check(d, 100, 5);
        c.check(g.ladders == 100 && g.counterexamples.empty(),
                a.name() + ": " + std::to_string(g.counterexamples.size()) + " gluing counterexamples");
        auto s = s3_check(d, 40, 9);
        c.check(s.flags > 0 && s.failures.empty(), a.name() + ": " + std::to_string(s.failures.size()) + " S3 failures");
        c.notes << " (" << a.name() << ": " << g.ladders << " ladders, " << s.flags << " flags)";
    }
    return c;
}

Criterion criterion8() {
    Criterion c;
    PF f3(3), f5(5);
    // Morita identity
    {
        auto a = example61A(f5);
        auto reg = regular_bimodule(a);
        auto s = check_semt(reg, reg);
        c.check(s.passed() && s.p().is_zero() && s.q().is_zero(), "Morita identity pair");
        std::vector<Representation<PF>> xs;
        for (std::size_t v = 0; v < a.num_vertices(); ++v) xs.push_back(simple(a, v));
        auto u = check_unit_counit_pd(reg, reg, xs, xs);
        c.check(u.passed(), "unit/counit on the Morita identity pair");
    }
    // k[x]/(x^2) with regular bimodules, then with a free summand added
    {
        auto a = kx2(f3);
        auto reg = regular_bimodule(a);
        auto s = check_semt(reg, reg);
        c.check(s.passed() && s.p().is_zero() && s.q().is_zero(), "kx2 regular pair with zero complement");
        std::vector<Representation<PF>> xs{simple(a, 0), projective(a, 0)};
        c.check(check_unit_counit_pd(reg, reg, xs, xs).passed(), "unit/counit on kx2 regular pair");
        auto env = envelope(a, a);
        Bimodule<PF> m{a, a, direct_sum(reg.rep, projective(env, 0))};
        auto u = check_unit_counit_pd(m, m, xs, xs);
        bool nonzero_projective = u.passed();
        for (const auto& x : u.units) nonzero_projective = nonzero_projective && x.projective && x.dim > 0;
        c.check(nonzero_projective, "unit cokernels projective for A + A(x)A");
    }
    for (auto pair : {std::make_pair(example61A(f5), example61B(f5)), std::make_pair(example62A(f3), example62B(f3))}) {
        auto cmp = compare_invariants(pair.first, pair.second);
        c.check(cmp.all_equal(), pair.first.name() + " vs " + pair.second.name() + " invariants");
        c.notes << " (" << pair.first.name() << "/" << pair.second.name() << ": K0 " << cmp.a.k0.group.to_string() << "/"
                << cmp.b.k0.group.to_string() << ", K1 " << cmp.a.k1.group.to_string() << "/"
                << cmp.b.k1.group.to_string() << ")";
    }
    return c;
}

}  // namespace

int main() {
    int failures = 0;
    const std::vector<std::pair<std::string, Criterion (*)()>> all{
        {"example61A: Gorenstein of dimension 2, one GP class generated by beta*alpha", criterion1},
        {"example61A and example61B: K0 = Z, K1 cyclic of order q-1, stable End(G) = k", criterion2},
        {"example62A and example62B over GF(3): finite global dimension, CM-free, trivial K-groups", criterion3},
        {"Waldhausen oracle equals the Ext presentation of K0", criterion4},
        {"weak equivalence by witness agrees with projective stripping", criterion5},
        {"Whitehead reduction is multiplicative and elementary-invariant", criterion6},
        {"gluing axiom and S_3 face identities", criterion7},
        {"Morita-type checks and invariants across stably equivalent pairs", criterion8},
    };
    for (std::size_t i = 0; i < all.size(); ++i) {
        Criterion c;
        try {
            c = all[i].second();
        } catch (const std::exception& e) {
            c.ok = false;
            c.notes << " [exception: " << e.what() << "]";
        }
        report(static_cast<int>(i + 1), all[i].first, c, failures);
    }
    std::cout << (all.size() - failures) << "/" << all.size() << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
