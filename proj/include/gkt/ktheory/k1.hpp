#pragma once

#include <cmath>
#include <random>

#include "gkt/exactla/smith.hpp"
#include "gkt/ktheory/k0.hpp"

namespace gkt {

/// A finite-dimensional commutative algebra Λ over F given by structure
/// constants; elements are coordinate vectors.
template <class F>
class CommRing {
public:
    using Elem = Vector<F>;

    CommRing(F field, std::vector<std::vector<Elem>> table, Elem one, std::string name = "Lambda")
        : f_(std::move(field)), table_(std::move(table)), one_(std::move(one)), name_(std::move(name)) {
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                if (table_[i][j] != table_[j][i]) commutative_ = false;
    }

    static CommRing from_algebra(const Algebra<F>& a) {
        std::vector<std::vector<Elem>> t(a.dim(), std::vector<Elem>(a.dim()));
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j) t[i][j] = a.product(i, j);
        return CommRing(a.field(), std::move(t), a.unit(), a.name());
    }

    static CommRing from_stable_end(const StableEndAlgebra<F>& e) {
        return CommRing(e.module.field(), e.table, e.identity, "End(G)");
    }

    static CommRing ground_field(const F& f) { return CommRing(f, {{Elem{f.one()}}}, Elem{f.one()}, "k"); }

    const F& field() const { return f_; }
    std::size_t dim() const { return one_.size(); }
    const std::string& name() const { return name_; }
    bool is_commutative() const { return commutative_; }

    Elem zero() const { return Elem(dim(), f_.zero()); }
    const Elem& one() const { return one_; }
    Elem scalar(typename F::Element c) const {
        Elem out = one_;
        for (auto& x : out) x = f_.mul(x, c);
        return out;
    }
    Elem add(const Elem& x, const Elem& y) const {
        Elem out(dim());
        for (std::size_t i = 0; i < dim(); ++i) out[i] = f_.add(x[i], y[i]);
        return out;
    }
    Elem sub(const Elem& x, const Elem& y) const {
        Elem out(dim());
        for (std::size_t i = 0; i < dim(); ++i) out[i] = f_.sub(x[i], y[i]);
        return out;
    }
    Elem mul(const Elem& x, const Elem& y) const {
        Elem out = zero();
        for (std::size_t i = 0; i < dim(); ++i) {
            if (f_.is_zero(x[i])) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (f_.is_zero(y[j])) continue;
                auto c = f_.mul(x[i], y[j]);
                for (std::size_t k = 0; k < dim(); ++k) out[k] = f_.add(out[k], f_.mul(c, table_[i][j][k]));
            }
        }
        return out;
    }
    Elem pow(Elem x, std::uint64_t e) const {
        Elem r = one_;
        while (e) {
            if (e & 1) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }
    bool is_zero(const Elem& x) const {
        for (const auto& c : x)
            if (!f_.is_zero(c)) return false;
        return true;
    }

    Matrix<F> multiplication_matrix(const Elem& x) const {
        Matrix<F> m(f_, dim(), dim());
        for (std::size_t j = 0; j < dim(); ++j) {
            Elem e = zero();
            e[j] = f_.one();
            auto c = mul(x, e);
            for (std::size_t i = 0; i < dim(); ++i) m(i, j) = c[i];
        }
        return m;
    }
    bool is_unit(const Elem& x) const { return is_invertible(multiplication_matrix(x)); }
    Elem inv(const Elem& x) const {
        auto y = solve(multiplication_matrix(x), one_);
        if (!y) throw NotInvertible("element of " + name_ + " is not a unit");
        return *y;
    }

    /// Nilradical of a commutative Λ over GF(p): kernel of a high power of
    /// Frobenius (which is linear in characteristic p).
    Subspace<F> nilradical() const {
        if constexpr (!F::finite) {
            throw UnsupportedRing("radical computation needs a finite prime field");
        } else {
            if (!commutative_) throw UnsupportedRing(name_ + " is not commutative");
            const std::uint64_t p = f_.characteristic();
            std::uint64_t e = p;
            while (e < dim()) e *= p;
            Matrix<F> frob(f_, dim(), dim());
            for (std::size_t j = 0; j < dim(); ++j) {
                Elem b = zero();
                b[j] = f_.one();
                auto c = pow(b, e);
                for (std::size_t i = 0; i < dim(); ++i) frob(i, j) = c[i];
            }
            // x -> x^e is additive; its kernel is the nilradical
            Subspace<F> n(f_, dim());
            for (const auto& k : rank_kernel(frob).kernel_basis) n.insert(k);
            return n;
        }
    }

    /// Number of residue fields of Λ (1 iff local).
    std::size_t residue_field_count() const {
        if constexpr (!F::finite) {
            if (dim() == 1) return 1;
            throw UnsupportedRing("locality test needs a finite prime field");
        } else {
            auto n = nilradical();
            // {x : x^p - x in N} has dimension dim N + (number of residue fields)
            const std::uint64_t p = f_.characteristic();
            std::vector<Elem> rows;
            Matrix<F> m(f_, dim(), dim());
            for (std::size_t j = 0; j < dim(); ++j) {
                Elem b = zero();
                b[j] = f_.one();
                auto c = n.reduce(sub(pow(b, p), b));
                for (std::size_t i = 0; i < dim(); ++i) m(i, j) = c[i];
            }
            return rank_kernel(m).kernel_basis.size() - n.dim();
        }
    }

    bool is_local() const { return residue_field_count() == 1; }

    /// Degree r of the residue field GF(p^r) of a local Λ.
    std::size_t residue_degree() const { return dim() - nilradical().dim(); }

private:
    F f_;
    std::vector<std::vector<Elem>> table_;
    Elem one_;
    std::string name_;
    bool commutative_ = true;
};

template <class F>
using RingMatrix = std::vector<std::vector<Vector<F>>>;

template <class F>
RingMatrix<F> ring_identity(const CommRing<F>& r, std::size_t n) {
    RingMatrix<F> m(n, std::vector<Vector<F>>(n, r.zero()));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = r.one();
    return m;
}

template <class F>
RingMatrix<F> ring_mul(const CommRing<F>& r, const RingMatrix<F>& a, const RingMatrix<F>& b) {
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    RingMatrix<F> out(n, std::vector<Vector<F>>(m, r.zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t t = 0; t < k; ++t) out[i][j] = r.add(out[i][j], r.mul(a[i][t], b[t][j]));
    return out;
}

/// e_ij(λ): identity plus λ in position (i, j), i != j.
template <class F>
RingMatrix<F> elementary(const CommRing<F>& r, std::size_t n, std::size_t i, std::size_t j, const Vector<F>& lambda) {
    if (i == j) throw InvalidArgument("elementary matrix needs i != j");
    auto m = ring_identity(r, n);
    m[i][j] = lambda;
    return m;
}

template <class F>
RingMatrix<F> ring_diagonal(const CommRing<F>& r, const std::vector<Vector<F>>& d) {
    auto m = ring_identity(r, d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
    return m;
}

/// Invertibility over commutative Λ: the F-linear map on Λ^n is invertible.
template <class F>
bool ring_matrix_invertible(const CommRing<F>& r, const RingMatrix<F>& m) {
    const std::size_t n = m.size(), d = r.dim();
    Matrix<F> big(r.field(), n * d, n * d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) big.set_block(i * d, j * d, r.multiplication_matrix(m[i][j]));
    return is_invertible(big);
}

template <class F>
RingMatrix<F> random_invertible(const CommRing<F>& r, std::size_t n, std::mt19937_64& rng) {
    const F& f = r.field();
    for (;;) {
        RingMatrix<F> m(n, std::vector<Vector<F>>(n));
        for (auto& row : m)
            for (auto& x : row) {
                x = r.zero();
                for (auto& c : x) c = f.random(rng);
            }
        if (ring_matrix_invertible(r, m)) return m;
    }
}

/// Class in K1(Λ) = Λ^× of an invertible matrix over a commutative local Λ.
template <class F>
struct K1Class {
    Vector<F> unit;
    std::size_t elementary_steps = 0;
    bool operator==(const K1Class& o) const { return unit == o.unit; }
};

/// Row and column operations bring the matrix to diag(u_1, ..., u_n); by
/// the Whitehead lemma this is diag(u_1 ... u_n, 1, ..., 1) modulo E(Λ).
template <class F>
K1Class<F> whitehead_reduce(const CommRing<F>& r, RingMatrix<F> m) {
    if (!r.is_commutative()) throw UnsupportedRing(r.name() + " is not commutative");
    if (!r.is_local()) throw UnsupportedRing(r.name() + " is neither local nor a field");
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw InvalidArgument("whitehead_reduce needs a square matrix");
    if (!ring_matrix_invertible(r, m)) throw NotInvertible("matrix is not invertible over " + r.name());
    K1Class<F> out;
    for (std::size_t j = 0; j < n; ++j) {
        if (!r.is_unit(m[j][j])) {
            // non-unit + unit is a unit in a local ring
            std::size_t i = j + 1;
            while (i < n && !r.is_unit(m[i][j])) ++i;
            if (i == n) throw NotInvertible("no unit pivot in column " + std::to_string(j));
            for (std::size_t k = j; k < n; ++k) m[j][k] = r.add(m[j][k], m[i][k]);
            ++out.elementary_steps;
        }
        auto uinv = r.inv(m[j][j]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j || r.is_zero(m[i][j])) continue;
            auto c = r.mul(m[i][j], uinv);
            for (std::size_t k = j; k < n; ++k) m[i][k] = r.sub(m[i][k], r.mul(c, m[j][k]));
            ++out.elementary_steps;
        }
        for (std::size_t k = j + 1; k < n; ++k) {
            if (r.is_zero(m[j][k])) continue;
            m[j][k] = r.zero();  // column op: col_k -= col_j * u^{-1} m[j][k]; column j is zero off row j
            ++out.elementary_steps;
        }
    }
    out.unit = r.one();
    for (std::size_t j = 0; j < n; ++j) out.unit = r.mul(out.unit, m[j][j]);
    return out;
}

namespace detail {

inline std::vector<std::pair<std::uint64_t, std::size_t>> factor(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, std::size_t>> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        std::size_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

}  // namespace detail

struct UnitGroup {
    Integer order = 1;
    AbelianGroupDescription group;  // valid when structure_known
    bool structure_known = false;
};

/// Λ^× for a commutative Λ over GF(p). The structure comes from counting
/// solutions of x^(l^k) = 1 among all units, for each prime l dividing the
/// order; Λ must have at most `max_elements` elements.
template <class F>
UnitGroup unit_group(const CommRing<F>& r, std::uint64_t max_elements = 1u << 20) {
    if (!r.is_commutative()) throw NoncommutativeStableEnd(r.name() + " is not commutative");
    UnitGroup out;
    if constexpr (!F::finite) {
        throw UnsupportedRing("unit group needs a finite field");
    } else {
        const F& f = r.field();
        const std::uint64_t p = f.order();
        const double size = std::pow(static_cast<double>(p), static_cast<double>(r.dim()));
        if (r.is_local()) {
            std::size_t rd = r.residue_degree();
            Integer q = 1, rad = 1;
            for (std::size_t i = 0; i < rd; ++i) q *= p;
            for (std::size_t i = rd; i < r.dim(); ++i) rad *= p;
            out.order = (q - 1) * rad;
        }
        if (size > static_cast<double>(max_elements)) return out;
        std::vector<Vector<F>> units;
        const std::uint64_t total = static_cast<std::uint64_t>(size);
        for (std::uint64_t code = 0; code < total; ++code) {
            Vector<F> x(r.dim());
            std::uint64_t t = code;
            for (auto& c : x) {
                c = f.element_at(t % p);
                t /= p;
            }
            if (r.is_unit(x)) units.push_back(std::move(x));
        }
        out.order = units.size();
        std::vector<Integer> cyclic;
        for (auto [l, e] : detail::factor(units.size())) {
            // c_k = #{x : x^(l^k) = 1} = l^(sum_i min(k, e_i))
            std::vector<std::size_t> logc{0};
            std::uint64_t lk = 1;
            for (std::size_t k = 1; k <= e; ++k) {
                lk *= l;
                std::uint64_t c = 0;
                for (const auto& x : units)
                    if (r.pow(x, lk) == r.one()) ++c;
                std::size_t lg = 0;
                while (c > 1) {
                    c /= l;
                    ++lg;
                }
                logc.push_back(lg);
                if (logc[k] == logc[k - 1]) break;
            }
            // #{i : e_i >= k} = logc[k] - logc[k-1]
            std::vector<std::size_t> atleast;
            for (std::size_t k = 1; k < logc.size(); ++k) atleast.push_back(logc[k] - logc[k - 1]);
            atleast.push_back(0);
            for (std::size_t k = 0; k + 1 < atleast.size(); ++k) {
                std::size_t exactly = atleast[k] - atleast[k + 1];
                Integer pe = 1;
                for (std::size_t t = 0; t <= k; ++t) pe *= l;
                for (std::size_t t = 0; t < exactly; ++t) cyclic.push_back(pe);
            }
        }
        std::vector<std::string> gens;
        MatZ rel(cyclic.size(), cyclic.size());
        for (std::size_t i = 0; i < cyclic.size(); ++i) {
            gens.push_back("u" + std::to_string(i + 1));
            rel(i, i) = cyclic[i];
        }
        out.group = group_from_presentation(gens, rel);
        out.structure_known = true;
        return out;
    }
}

struct K1Result {
    AbelianGroupDescription group;
    Integer order = 1;
    std::size_t lambda_dim = 0;       // dimension of the stable endomorphism algebra
    std::size_t residue_degree = 0;   // Λ local: residue field GF(p^r)
    std::size_t radical_dim = 0;
    bool structure_known = true;
};

/// Gorenstein K1 = K1(Λ) with Λ the stable endomorphism algebra of the
/// sum of the catalog items; for commutative Λ this is Λ^×.
template <class F>
K1Result k1_gorenstein(const GPCatalog<F>& cat) {
    if (cat.verdict == CMVerdict::Unknown)
        throw CatalogUnknown("K1 needs a closed catalog (verdict " + to_string(cat.verdict) + ")");
    K1Result out;
    if (cat.items.empty()) return out;
    std::vector<Representation<F>> items;
    for (const auto& it : cat.items) items.push_back(it.module());
    auto g = certify_gp(direct_sum(items, cat.algebra), cat.report, cat.report.bound);
    auto e = stable_end_algebra(g);
    out.lambda_dim = e.dim();
    if (e.dim() == 0) return out;
    auto ring = CommRing<F>::from_stable_end(e);
    if (!ring.is_commutative())
        throw NoncommutativeStableEnd("stable endomorphism algebra of dimension " + std::to_string(e.dim()) +
                                      " is not commutative");
    out.radical_dim = ring.nilradical().dim();
    if (ring.is_local()) out.residue_degree = ring.residue_degree();
    auto u = unit_group(ring);
    out.order = u.order;
    out.structure_known = u.structure_known;
    out.group = u.group;
    return out;
}

}  // namespace gkt
