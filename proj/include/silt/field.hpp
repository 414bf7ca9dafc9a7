#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "silt/errors.hpp"

namespace silt {

/* Coefficient fields. Every scalar of a computation lives in exactly one field
 * object; matrices and algebras carry the field and check compatibility.
 *
 * PrimeField: F_p with runtime prime modulus. Elements are canonical
 * representatives in [0, p).
 * RationalField: arbitrary-precision rationals (GMP), always normalized.
 */

class PrimeField {
public:
    using Elem = std::uint64_t;
    static constexpr bool is_rational = false;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (!is_prime(p)) throw Error("PrimeField: modulus " + std::to_string(p) + " is not prime");
        if (p >= (1ull << 31)) throw Error("PrimeField: modulus too large");
    }

    std::uint64_t modulus() const { return p_; }
    std::uint64_t characteristic() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p_; }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    Elem add(const Elem& a, const Elem& b) const {
        Elem s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem neg(const Elem& a) const { return a == 0 ? 0 : p_ - a; }
    Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
    Elem mul(const Elem& a, const Elem& b) const { return (a * b) % p_; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw Error("PrimeField: inverse of zero");
        // extended Euclid on (a, p)
        std::int64_t t = 0, newt = 1;
        std::int64_t r = static_cast<std::int64_t>(p_), newr = static_cast<std::int64_t>(a);
        while (newr != 0) {
            std::int64_t q = r / newr;
            std::int64_t tmp = t - q * newt;
            t = newt;
            newt = tmp;
            tmp = r - q * newr;
            r = newr;
            newr = tmp;
        }
        if (t < 0) t += static_cast<std::int64_t>(p_);
        return static_cast<Elem>(t);
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    Elem from_int(long long v) const {
        long long m = v % static_cast<long long>(p_);
        if (m < 0) m += static_cast<long long>(p_);
        return static_cast<Elem>(m);
    }

    Elem parse(const std::string& s) const {
        auto slash = s.find('/');
        if (slash == std::string::npos) return parse_int(s);
        Elem num = parse_int(s.substr(0, slash));
        Elem den = parse_int(s.substr(slash + 1));
        if (den == 0) throw ParseError("PrimeField: denominator divisible by " + std::to_string(p_));
        return div(num, den);
    }

    std::string to_string(const Elem& a) const { return std::to_string(a); }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

    std::string name() const { return "F" + std::to_string(p_); }

    static bool is_prime(std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    Elem parse_int(const std::string& s) const {
        mpz_class z;
        if (z.set_str(s, 10) != 0) throw ParseError("PrimeField: bad integer '" + s + "'");
        mpz_class m = z % static_cast<unsigned long>(p_);
        if (m < 0) m += static_cast<unsigned long>(p_);
        return static_cast<Elem>(m.get_ui());
    }

    std::uint64_t p_;
};

class RationalField {
public:
    using Elem = mpq_class;
    static constexpr bool is_rational = true;

    std::uint64_t characteristic() const { return 0; }

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    bool is_zero(const Elem& a) const { return sgn(a) == 0; }
    bool eq(const Elem& a, const Elem& b) const { return cmp(a, b) == 0; }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const {
        if (sgn(a) == 0) throw Error("RationalField: inverse of zero");
        return 1 / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return a / inv_guard(b); }

    Elem from_int(long long v) const { return Elem(static_cast<long>(v)); }

    Elem parse(const std::string& s) const {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw ParseError("RationalField: bad rational '" + s + "'");
        if (q.get_den() == 0) throw ParseError("RationalField: zero denominator in '" + s + "'");
        q.canonicalize();
        return q;
    }

    std::string to_string(const Elem& a) const { return a.get_str(); }

    bool operator==(const RationalField&) const { return true; }
    bool operator!=(const RationalField&) const { return false; }

    std::string name() const { return "Q"; }

private:
    const Elem& inv_guard(const Elem& b) const {
        if (sgn(b) == 0) throw Error("RationalField: division by zero");
        return b;
    }
};

/* Runtime field selector, as it appears in input files. */
struct FieldSpec {
    // 0 = rationals, otherwise the prime p
    std::uint64_t p = 0;
    static FieldSpec rationals() { return FieldSpec{0}; }
    static FieldSpec prime(std::uint64_t p) {
        if (!PrimeField::is_prime(p)) throw Error("FieldSpec: not a prime");
        return FieldSpec{p};
    }
    bool is_rational() const { return p == 0; }
    std::string name() const { return p == 0 ? "Q" : "F" + std::to_string(p); }
};

}  // namespace silt
