#pragma once

// Small algebras used across the test suites, built directly from quivers.

#include "gkt/presentation/algebra.hpp"

namespace testalg {

using namespace gkt;

template <class F>
Relation<F> monomial(const F& f, const Quiver& q, std::vector<std::string> word) {
    Relation<F> r;
    r.terms.push_back({f.one(), Path::from_labels(q, word)});
    return r;
}

template <class F>
Relation<F> binomial(const F& f, const Quiver& q, std::vector<std::string> a, std::vector<std::string> b) {
    Relation<F> r;
    r.terms.push_back({f.one(), Path::from_labels(q, a)});
    r.terms.push_back({f.neg(f.one()), Path::from_labels(q, b)});
    return r;
}

// 1 <-> 2, beta*alpha*beta*alpha = 0
template <class F>
Algebra<F> example61A(const F& f) {
    Quiver q;
    q.add_vertex("1");
    q.add_vertex("2");
    q.add_arrow("alpha", "1", "2");
    q.add_arrow("beta", "2", "1");
    return build_algebra<F>(q, {monomial(f, q, {"beta", "alpha", "beta", "alpha"})}, f, 12, "example61A");
}

// x: 1 -> 2, y: 2 -> 1, loop z at 2; yx = zx = yz = z^2 - xy = 0
template <class F>
Algebra<F> example61B(const F& f) {
    Quiver q;
    q.add_vertex("1");
    q.add_vertex("2");
    q.add_arrow("x", "1", "2");
    q.add_arrow("y", "2", "1");
    q.add_arrow("z", "2", "2");
    return build_algebra<F>(q,
                            {monomial(f, q, {"y", "x"}), monomial(f, q, {"z", "x"}), monomial(f, q, {"y", "z"}),
                             binomial(f, q, {"z", "z"}, {"x", "y"})},
                            f, 12, "example61B");
}

// 3-cycle 1 -alpha-> 2 -beta-> 3 -gamma-> 1; gamma*beta*alpha = beta*alpha*gamma*beta = 0
template <class F>
Algebra<F> example62A(const F& f) {
    Quiver q;
    for (auto v : {"1", "2", "3"}) q.add_vertex(v);
    q.add_arrow("alpha", "1", "2");
    q.add_arrow("beta", "2", "3");
    q.add_arrow("gamma", "3", "1");
    return build_algebra<F>(
        q, {monomial(f, q, {"gamma", "beta", "alpha"}), monomial(f, q, {"beta", "alpha", "gamma", "beta"})}, f, 12,
        "example62A");
}

// 1 <-rho/rho'-> 2 <-delta/delta'-> 3
// delta*rho = rho'*rho = rho'*delta' = rho*rho' - delta'*delta = 0
template <class F>
Algebra<F> example62B(const F& f) {
    Quiver q;
    for (auto v : {"1", "2", "3"}) q.add_vertex(v);
    q.add_arrow("rho", "1", "2");
    q.add_arrow("rho'", "2", "1");
    q.add_arrow("delta", "2", "3");
    q.add_arrow("delta'", "3", "2");
    return build_algebra<F>(q,
                            {monomial(f, q, {"delta", "rho"}), monomial(f, q, {"rho'", "rho"}),
                             monomial(f, q, {"rho'", "delta'"}), binomial(f, q, {"rho", "rho'"}, {"delta'", "delta"})},
                            f, 12, "example62B");
}

// k[x]/(x^2)
template <class F>
Algebra<F> kx2(const F& f) {
    Quiver q;
    q.add_vertex("o");
    q.add_arrow("x", "o", "o");
    return build_algebra<F>(q, {monomial(f, q, {"x", "x"})}, f, 12, "kx2");
}

// k x k
template <class F>
Algebra<F> semisimple2(const F& f) {
    Quiver q;
    q.add_vertex("1");
    q.add_vertex("2");
    return build_algebra<F>(q, {}, f, 12, "semisimple2");
}

// 1 -> 2, no relations
template <class F>
Algebra<F> a2(const F& f) {
    Quiver q;
    q.add_vertex("1");
    q.add_vertex("2");
    q.add_arrow("a", "1", "2");
    return build_algebra<F>(q, {}, f, 12, "A2");
}

}  // namespace testalg
