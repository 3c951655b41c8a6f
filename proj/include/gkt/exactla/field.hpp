#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>
#include <string>

#include "gkt/errors.hpp"

namespace gkt {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Base field descriptor: characteristic 0 means QQ, otherwise GF(p).
struct FieldSpec {
    std::uint32_t characteristic = 0;

    FieldSpec() = default;
    explicit FieldSpec(std::uint32_t c) : characteristic(c) {
        if (c != 0 && !is_prime(c))
            throw InvalidArgument("field characteristic " + std::to_string(c) + " is not prime");
    }
    bool is_rational() const { return characteristic == 0; }
    std::string to_string() const {
        return is_rational() ? std::string("QQ") : "GF(" + std::to_string(characteristic) + ")";
    }
    bool operator==(const FieldSpec&) const = default;
};

/// GF(p) with canonical residues in [0, p). p must be a prime below 2^31.
class PrimeField {
public:
    using Element = std::uint32_t;
    static constexpr bool finite = true;

    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (!is_prime(p) || p >= (1u << 31))
            throw InvalidArgument("GF(p) requires a prime p < 2^31, got " + std::to_string(p));
    }

    std::uint32_t characteristic() const { return p_; }
    std::uint64_t order() const { return p_; }
    FieldSpec spec() const { return FieldSpec(p_); }

    Element zero() const { return 0; }
    Element one() const { return 1; }
    Element from_int(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<Element>(r);
    }
    Element from_integer(const Integer& v) const {
        Integer r = v % p_;
        if (r < 0) r += p_;
        return static_cast<Element>(r);
    }

    Element add(Element a, Element b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
    Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
    Element mul(Element a, Element b) const {
        return static_cast<Element>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    Element inv(Element a) const {
        if (a == 0) throw DomainError("inverse of zero in " + spec().to_string());
        // extended Euclid on (a, p)
        std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            std::int64_t tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        if (t < 0) t += p_;
        return static_cast<Element>(t);
    }
    Element div(Element a, Element b) const { return mul(a, inv(b)); }
    Element pow(Element a, std::uint64_t e) const {
        Element r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    bool is_zero(Element a) const { return a == 0; }
    bool is_one(Element a) const { return a == 1; }
    bool eq(Element a, Element b) const { return a == b; }

    template <class Rng>
    Element random(Rng& rng) const {
        return std::uniform_int_distribution<std::uint32_t>(0, p_ - 1)(rng);
    }

    /// Element with index i in 0..p-1, for exhaustive enumeration.
    Element element_at(std::uint64_t i) const { return static_cast<Element>(i % p_); }

    std::string to_string(Element a) const { return std::to_string(a); }
    std::int64_t to_signed(Element a) const { return a; }

    bool operator==(const PrimeField&) const = default;

private:
    std::uint32_t p_;
};

/// The rationals, exact.
class RationalField {
public:
    using Element = Rational;
    static constexpr bool finite = false;

    std::uint32_t characteristic() const { return 0; }
    FieldSpec spec() const { return FieldSpec(0); }

    Element zero() const { return Element(0); }
    Element one() const { return Element(1); }
    Element from_int(std::int64_t v) const { return Element(v); }
    Element from_integer(const Integer& v) const { return Element(v); }

    Element add(const Element& a, const Element& b) const { return a + b; }
    Element sub(const Element& a, const Element& b) const { return a - b; }
    Element neg(const Element& a) const { return -a; }
    Element mul(const Element& a, const Element& b) const { return a * b; }
    Element inv(const Element& a) const {
        if (a == 0) throw DomainError("inverse of zero in QQ");
        return Element(1) / a;
    }
    Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

    bool is_zero(const Element& a) const { return a == 0; }
    bool is_one(const Element& a) const { return a == 1; }
    bool eq(const Element& a, const Element& b) const { return a == b; }

    // Small integers are enough for randomized searches over QQ.
    template <class Rng>
    Element random(Rng& rng) const {
        return Element(std::uniform_int_distribution<int>(-3, 3)(rng));
    }

    std::string to_string(const Element& a) const { return a.str(); }

    bool operator==(const RationalField&) const = default;
};

template <class F>
inline constexpr bool is_finite_field_v = F::finite;

}  // namespace gkt
