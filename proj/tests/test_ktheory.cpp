#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "gkt/ktheory/k1.hpp"
#include "support.hpp"

using namespace gkt;
using namespace testalg;
using PF = PrimeField;

namespace {

AbelianGroupDescription cyclic(std::int64_t n) {
    AbelianGroupDescription g;
    if (n > 1) g.invariant_factors.push_back(Integer(n));
    return g;
}

// Leibniz determinant over a commutative ring; independent of the
// elimination in whitehead_reduce.
Vector<PF> leibniz_det(const CommRing<PF>& r, const RingMatrix<PF>& m) {
    const std::size_t n = m.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Vector<PF> out = r.zero();
    do {
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Vector<PF> term = r.one();
        for (std::size_t i = 0; i < n; ++i) term = r.mul(term, m[i][perm[i]]);
        out = inversions % 2 ? r.sub(out, term) : r.add(out, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// GF(9) as GF(3)[t]/(t^2 + 1)
CommRing<PF> gf9() {
    PF f(3);
    using E = Vector<PF>;
    std::vector<std::vector<E>> t{{E{1, 0}, E{0, 1}}, {E{0, 1}, E{2, 0}}};
    return CommRing<PF>(f, t, E{1, 0}, "GF(9)");
}

}  // namespace

TEST_CASE("Gorenstein K0", "[ktheory]") {
    SECTION("example61A: the sequence 0 -> G -> P -> G -> 0 forces 2[G] = 0") {
        PF f(5);
        auto a = example61A(f);
        auto cat = gp_catalog(a);
        auto k = k0_gorenstein(cat);
        CHECK(k.group.same_group(cyclic(2)));
        CHECK_FALSE(k.sampled);
        // the relation comes from the syzygy sequence of G, whose middle term is projective
        auto g = cat.items[0].module();
        auto cov = projective_cover(g);
        REQUIRE(is_isomorphic(syzygy(g, 1), g));
        CHECK(cov.cover.total_dim() == 2 * g.total_dim());
        bool found = false;
        for (const auto& r : k.relations) found = found || r.row == std::vector<std::int64_t>{-2};
        CHECK(found);
    }
    SECTION("example61B agrees with A") {
        PF f(5);
        CHECK(k0_gorenstein(gp_catalog(example61B(f))).group.same_group(cyclic(2)));
    }
    SECTION("example62 and semisimple: trivial") {
        PF f(3);
        for (auto a : {example62A(f), example62B(f), semisimple2(f)}) {
            auto k = k0_gorenstein(gp_catalog(a));
            CHECK(k.group.is_trivial());
            CHECK(k.generators.empty());
        }
    }
    SECTION("k[x]/(x^2): Z/2") {
        PF f(3);
        CHECK(k0_gorenstein(gp_catalog(kx2(f))).group.same_group(cyclic(2)));
    }
    SECTION("presentation does not depend on the order of relations or generators") {
        PF f(5);
        auto k = k0_gorenstein(gp_catalog(example61A(f)));
        auto m = k.relation_matrix();
        std::mt19937_64 rng(7);
        for (int t = 0; t < 10; ++t) {
            std::vector<std::size_t> rows(m.rows()), cols(m.cols());
            std::iota(rows.begin(), rows.end(), 0);
            std::iota(cols.begin(), cols.end(), 0);
            std::shuffle(rows.begin(), rows.end(), rng);
            std::shuffle(cols.begin(), cols.end(), rng);
            MatZ p(m.rows(), m.cols());
            std::vector<std::string> gens(m.cols());
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) p(i, j) = m(rows[i], cols[j]);
            for (std::size_t j = 0; j < m.cols(); ++j) gens[j] = k.generators[cols[j]];
            CHECK(group_from_presentation(gens, p).same_group(k.group));
        }
    }
    SECTION("sampling policy kicks in above the enumeration limit") {
        PF f(3);
        K0Options opt;
        opt.exhaustive_limit = 1;
        opt.random_classes = 4;
        auto k = k0_gorenstein(gp_catalog(kx2(f)), opt);
        CHECK(k.sampled);
        CHECK(k.group.same_group(cyclic(2)));
    }
    SECTION("an open catalog is refused") {
        PF f(5);
        CatalogOptions opt;
        opt.dim_cap = 1;
        auto cat = gp_catalog(example61A(f), opt);
        CHECK_THROWS_AS(k0_gorenstein(cat), CatalogUnknown);
        CHECK_THROWS_AS(k1_gorenstein(cat), CatalogUnknown);
    }
}

TEST_CASE("commutative rings", "[ktheory]") {
    SECTION("k[t]/(t^2)") {
        PF f(3);
        auto r = CommRing<PF>::from_algebra(kx2(f));
        CHECK(r.is_commutative());
        CHECK(r.is_local());
        CHECK(r.nilradical().dim() == 1);
        CHECK(r.residue_degree() == 1);
        auto u = unit_group(r);
        CHECK(u.order == 6);
        CHECK(u.group.same_group(cyclic(6)));
        PF f5(5);
        CHECK(unit_group(CommRing<PF>::from_algebra(kx2(f5))).group.same_group(cyclic(20)));
    }
    SECTION("GF(9)") {
        auto r = gf9();
        CHECK(r.is_local());
        CHECK(r.residue_degree() == 2);
        CHECK(unit_group(r).group.same_group(cyclic(8)));
    }
    SECTION("k x k is not local") {
        PF f(5);
        auto r = CommRing<PF>::from_algebra(semisimple2(f));
        CHECK(r.residue_field_count() == 2);
        auto u = unit_group(r);
        CHECK(u.group.invariant_factors == std::vector<Integer>{4, 4});
        CHECK_THROWS_AS(whitehead_reduce(r, ring_identity(r, 2)), UnsupportedRing);
    }
    SECTION("noncommutative input") {
        PF f(5);
        auto r = CommRing<PF>::from_algebra(a2(f));
        CHECK_FALSE(r.is_commutative());
        CHECK_THROWS_AS(whitehead_reduce(r, ring_identity(r, 2)), UnsupportedRing);
        CHECK_THROWS_AS(unit_group(r), NoncommutativeStableEnd);
    }
}

TEST_CASE("Whitehead reduction", "[ktheory]") {
    PF f5(5), f3(3);
    std::vector<CommRing<PF>> rings{CommRing<PF>::ground_field(f5), CommRing<PF>::from_algebra(kx2(f3)), gf9()};
    for (const auto& r : rings) {
        DYNAMIC_SECTION("ring " << r.name() << " over GF(" << r.field().characteristic() << ")") {
            std::mt19937_64 rng(2024);
            const auto& f = r.field();
            auto rand_elem = [&] {
                auto x = r.zero();
                for (auto& c : x) c = f.random(rng);
                return x;
            };
            auto rand_unit = [&] {
                for (;;) {
                    auto x = rand_elem();
                    if (r.is_unit(x)) return x;
                }
            };
            auto u = rand_unit(), v = rand_unit();
            CHECK(whitehead_reduce(r, ring_diagonal(r, {u, r.one()})).unit == u);
            CHECK(whitehead_reduce(r, ring_diagonal(r, {u, v})).unit == r.mul(u, v));
            CHECK(whitehead_reduce(r, elementary(r, 3, 0, 2, rand_elem())).unit == r.one());
            for (int t = 0; t < 100; ++t) {
                auto m = random_invertible(r, 3, rng);
                auto n = random_invertible(r, 3, rng);
                auto cm = whitehead_reduce(r, m);
                auto cn = whitehead_reduce(r, n);
                REQUIRE(cm.unit == leibniz_det(r, m));
                REQUIRE(whitehead_reduce(r, ring_mul(r, m, n)).unit == r.mul(cm.unit, cn.unit));
                std::size_t i = rng() % 3, j = (i + 1 + rng() % 2) % 3;
                auto e = elementary(r, 3, i, j, rand_elem());
                REQUIRE(whitehead_reduce(r, ring_mul(r, e, m)).unit == cm.unit);
                REQUIRE(whitehead_reduce(r, ring_mul(r, m, e)).unit == cm.unit);
            }
            auto singular = ring_identity(r, 2);
            singular[1][1] = r.zero();
            CHECK_THROWS_AS(whitehead_reduce(r, singular), NotInvertible);
        }
    }
    SECTION("a matrix needing a pivot fix over k[t]/(t^2)") {
        auto r = CommRing<PF>::from_algebra(kx2(f3));
        auto t = r.sub(r.scalar(f3.one()), r.one());  // zero
        Vector<PF> x = r.zero();
        for (std::size_t i = 0; i < r.dim(); ++i)
            if (!kx2(f3).basis_path(i).is_trivial()) x[i] = f3.one();
        // [[t, 1], [1, 0]] has non-unit pivot t
        RingMatrix<PF> m{{x, r.one()}, {r.one(), t}};
        auto c = whitehead_reduce(r, m);
        CHECK(c.unit == leibniz_det(r, m));
    }
}

TEST_CASE("Gorenstein K1", "[ktheory]") {
    for (std::uint32_t q : {3u, 5u, 7u}) {
        PF f(q);
        auto k = k1_gorenstein(gp_catalog(example61A(f)));
        CHECK(k.lambda_dim == 1);
        CHECK(k.order == q - 1);
        CHECK(k.group.same_group(cyclic(q - 1)));
        CHECK(k1_gorenstein(gp_catalog(example61B(f))).group.same_group(cyclic(q - 1)));
    }
    PF f3(3);
    CHECK(k1_gorenstein(gp_catalog(example62A(f3))).group.is_trivial());
    CHECK(k1_gorenstein(gp_catalog(example62B(f3))).group.is_trivial());
    CHECK(k1_gorenstein(gp_catalog(kx2(f3))).group.same_group(cyclic(2)));
}
