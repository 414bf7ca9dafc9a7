#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "silt/linalg.hpp"

namespace silt {

/* Dense univariate polynomials; coefficient of x^i at index i, no trailing
 * zeros. Used for characteristic/minimal polynomials and the finite-field
 * factor splitting behind idempotent lifting.
 */
template <class F>
struct Poly {
    using Elem = typename F::Elem;
    F f;
    std::vector<Elem> c;

    explicit Poly(F fld) : f(fld) {}
    Poly(F fld, std::vector<Elem> cs) : f(fld), c(std::move(cs)) { normalize(); }

    void normalize() {
        while (!c.empty() && f.is_zero(c.back())) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    long deg() const { return static_cast<long>(c.size()) - 1; }
    Elem lead() const { return c.back(); }

    static Poly x(F f) { return Poly(f, {f.zero(), f.one()}); }
    static Poly constant(F f, Elem e) { return Poly(f, {e}); }

    Elem coeff(std::size_t i) const { return i < c.size() ? c[i] : f.zero(); }

    Poly operator+(const Poly& o) const {
        Poly r(f);
        r.c.resize(std::max(c.size(), o.c.size()), f.zero());
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = f.add(coeff(i), o.coeff(i));
        r.normalize();
        return r;
    }
    Poly operator-(const Poly& o) const {
        Poly r(f);
        r.c.resize(std::max(c.size(), o.c.size()), f.zero());
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = f.sub(coeff(i), o.coeff(i));
        r.normalize();
        return r;
    }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly(f);
        Poly r(f);
        r.c.assign(c.size() + o.c.size() - 1, f.zero());
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < o.c.size(); ++j)
                r.c[i + j] = f.add(r.c[i + j], f.mul(c[i], o.c[j]));
        r.normalize();
        return r;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        Poly r(f);
        auto li = f.inv(lead());
        r.c.resize(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = f.mul(li, c[i]);
        return r;
    }

    bool operator==(const Poly& o) const {
        if (c.size() != o.c.size()) return false;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (!f.eq(c[i], o.c[i])) return false;
        return true;
    }
};

template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& a, const Poly<F>& b) {
    if (b.is_zero()) throw Error("poly divmod by zero");
    const F& f = a.f;
    Poly<F> q(f), r = a;
    q.c.assign(a.c.size(), f.zero());
    auto linv = f.inv(b.lead());
    while (!r.is_zero() && r.deg() >= b.deg()) {
        auto k = static_cast<std::size_t>(r.deg() - b.deg());
        auto coef = f.mul(r.lead(), linv);
        q.c[k] = f.add(q.c[k], coef);
        for (std::size_t i = 0; i < b.c.size(); ++i)
            r.c[i + k] = f.sub(r.c[i + k], f.mul(coef, b.c[i]));
        r.normalize();
    }
    q.normalize();
    return {q, r};
}

template <class F>
Poly<F> poly_gcd(Poly<F> a, Poly<F> b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/* g = gcd(a,b) = s a + t b */
template <class F>
void poly_xgcd(const Poly<F>& a, const Poly<F>& b, Poly<F>& g, Poly<F>& s, Poly<F>& t) {
    const F& f = a.f;
    Poly<F> r0 = a, r1 = b;
    Poly<F> s0 = Poly<F>::constant(f, f.one()), s1(f);
    Poly<F> t0(f), t1 = Poly<F>::constant(f, f.one());
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = r1;
        r1 = r;
        auto ns = s0 - q * s1;
        s0 = s1;
        s1 = ns;
        auto nt = t0 - q * t1;
        t0 = t1;
        t1 = nt;
    }
    if (!r0.is_zero()) {
        auto li = f.inv(r0.lead());
        auto scale = Poly<F>::constant(f, li);
        r0 = r0 * scale;
        s0 = s0 * scale;
        t0 = t0 * scale;
    }
    g = r0;
    s = s0;
    t = t0;
}

template <class F>
Poly<F> derivative(const Poly<F>& a) {
    Poly<F> r(a.f);
    if (a.deg() < 1) return r;
    r.c.resize(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i) {
        typename F::Elem k = a.f.zero();
        for (std::size_t t = 0; t < i; ++t) k = a.f.add(k, a.f.one());
        r.c[i - 1] = a.f.mul(k, a.c[i]);
    }
    r.normalize();
    return r;
}

template <class F>
Poly<F> mulmod(const Poly<F>& a, const Poly<F>& b, const Poly<F>& m) {
    return divmod(a * b, m).second;
}

template <class F>
Poly<F> powmod(Poly<F> base, std::uint64_t e, const Poly<F>& m) {
    Poly<F> r = Poly<F>::constant(base.f, base.f.one());
    base = divmod(base, m).second;
    while (e) {
        if (e & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

/* evaluate at a square matrix (Horner) */
template <class F>
Matrix<F> poly_eval(const Poly<F>& p, const Matrix<F>& a) {
    const F& f = p.f;
    Matrix<F> r(f, a.rows(), a.rows());
    for (std::size_t i = p.c.size(); i-- > 0;) {
        r = r * a;
        for (std::size_t d = 0; d < a.rows(); ++d) r(d, d) = f.add(r(d, d), p.c[i]);
    }
    return r;
}

/* Characteristic polynomial of det(lambda I - A), Samuelson-Berkowitz
 * (division-free, any commutative coefficient ring).
 */
template <class F>
Poly<F> char_poly(const Matrix<F>& a) {
    const F& f = a.field();
    const std::size_t n = a.rows();
    if (a.cols() != n) throw Error("char_poly: square matrix required");
    // v holds coefficients in descending degree, v[0] = 1
    std::vector<typename F::Elem> v{f.one()};
    for (std::size_t k = 0; k < n; ++k) {
        // principal (k+1)x(k+1) block; R = row, C = col, M = leading k x k block
        std::vector<typename F::Elem> t(k + 2, f.zero());
        t[0] = f.one();
        t[1] = f.neg(a(k, k));
        if (k > 0) {
            Matrix<F> R(f, 1, k), C(f, k, 1), M(f, k, k);
            for (std::size_t j = 0; j < k; ++j) {
                R(0, j) = a(k, j);
                C(j, 0) = a(j, k);
                for (std::size_t i = 0; i < k; ++i) M(j, i) = a(j, i);
            }
            Matrix<F> w = C;
            for (std::size_t j = 0; j + 2 < t.size(); ++j) {
                Matrix<F> s = R * w;
                t[j + 2] = f.neg(s(0, 0));
                w = M * w;
            }
        }
        std::vector<typename F::Elem> nv(v.size() + 1, f.zero());
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j)
                if (i + j < nv.size()) nv[i + j] = f.add(nv[i + j], f.mul(t[i], v[j]));
        v = std::move(nv);
    }
    // convert to ascending coefficient order
    std::vector<typename F::Elem> asc(v.rbegin(), v.rend());
    return Poly<F>(f, std::move(asc));
}

/* m-th elementary symmetric function of the eigenvalues of A */
template <class F>
typename F::Elem elem_symmetric(const Poly<F>& chi, std::size_t n, std::size_t m) {
    const F& f = chi.f;
    if (m > n) return f.zero();
    auto c = chi.coeff(n - m);  // chi = sum c_i x^i, c_{n-m} = (-1)^m e_m
    return (m % 2 == 0) ? c : f.neg(c);
}

/* Minimal polynomial of a square matrix via Krylov ascent on vec(A^k). */
template <class F>
Poly<F> min_poly(const Matrix<F>& a) {
    const F& f = a.field();
    const std::size_t n = a.rows();
    Matrix<F> pw = Matrix<F>::identity(f, n);
    Matrix<F> kry(f, n * n, 0);
    std::vector<Matrix<F>> cols;
    for (std::size_t d = 0;; ++d) {
        auto v = pw.vec();
        if (d > 0 && span_contains(kry, v)) {
            auto x = solve_linear(kry, v);
            Poly<F> m(f);
            m.c.assign(d + 1, f.zero());
            for (std::size_t i = 0; i < d; ++i) m.c[i] = f.neg((*x)(i, 0));
            m.c[d] = f.one();
            return m;
        }
        kry = Matrix<F>::hcat(kry, v);
        pw = pw * a;
        if (d > n) throw Error("min_poly: no relation found");  // unreachable
    }
}

/* ---- finite-field factor splitting (used for idempotent construction) ---- */

inline Poly<PrimeField> pth_root(const Poly<PrimeField>& m) {
    const auto& f = m.f;
    auto p = f.modulus();
    Poly<PrimeField> r(f);
    r.c.assign(m.c.size() / p + 1, f.zero());
    for (std::size_t i = 0; i < m.c.size(); ++i) {
        if (f.is_zero(m.c[i])) continue;
        if (i % p != 0) throw Error("pth_root: not a p-th power");
        r.c[i / p] = m.c[i];  // Frobenius is the identity on the prime field
    }
    r.normalize();
    return r;
}

/* squarefree polynomial with the same irreducible factors */
inline Poly<PrimeField> poly_radical(Poly<PrimeField> m) {
    m = m.monic();
    if (m.deg() <= 1) return m;
    auto d = derivative(m);
    if (d.is_zero()) return poly_radical(pth_root(m));
    auto g = poly_gcd(m, d);
    if (g.deg() == 0) return m;
    auto w = divmod(m, g).first;
    auto r = poly_radical(g);
    auto common = poly_gcd(w, r);
    return (w * divmod(r, common).first).monic();
}

inline Poly<PrimeField> frobenius_power_x(const Poly<PrimeField>& m, std::size_t k) {
    auto y = Poly<PrimeField>::x(m.f);
    for (std::size_t i = 0; i < k; ++i) y = powmod(y, m.f.modulus(), m);
    return y;
}

/* A factorization m = u v with gcd(u,v) = 1 and both proper, if one exists.
 * Deterministic distinct-degree pass, then seeded Cantor-Zassenhaus for the
 * equal-degree case. nullopt means m is a power of a single irreducible.
 */
inline std::optional<std::pair<Poly<PrimeField>, Poly<PrimeField>>> coprime_split(
    const Poly<PrimeField>& m_in, std::uint64_t seed = 1) {
    const auto& f = m_in.f;
    auto m = m_in.monic();
    if (m.deg() <= 1) return std::nullopt;
    auto r = poly_radical(m);
    if (r.deg() == 1) return std::nullopt;  // primary
    auto x = Poly<PrimeField>::x(f);

    auto lift = [&](const Poly<PrimeField>& ur) {
        // pull the full multiplicity of the chosen factors out of m
        auto u = ur;
        Poly<PrimeField> acc = poly_gcd(m, u);
        for (;;) {
            auto nxt = poly_gcd(divmod(m, acc).first, u);
            if (nxt.deg() == 0) break;
            acc = acc * nxt;
        }
        auto v = divmod(m, acc).first;
        return std::make_pair(acc.monic(), v.monic());
    };

    std::size_t equal_deg = 0;
    for (std::size_t k = 1; k < static_cast<std::size_t>(r.deg()); ++k) {
        auto g = poly_gcd(r, frobenius_power_x(r, k) - x);
        if (g.deg() > 0 && g.deg() < r.deg()) return lift(g);
        if (g.deg() == r.deg()) {
            equal_deg = k;
            break;
        }
    }
    if (equal_deg == 0) return std::nullopt;  // irreducible
    // equal-degree case: all factors of r have degree equal_deg
    std::mt19937_64 rng(seed);
    auto p = f.modulus();
    for (int attempt = 0; attempt < 200; ++attempt) {
        Poly<PrimeField> u(f);
        u.c.resize(static_cast<std::size_t>(r.deg()), f.zero());
        for (auto& e : u.c) e = rng() % p;
        u.normalize();
        if (u.deg() < 1) continue;
        Poly<PrimeField> g(f);
        if (p == 2) {
            // trace map sum u^{2^i}
            Poly<PrimeField> t(f), w = divmod(u, r).second;
            for (std::size_t i = 0; i < equal_deg; ++i) {
                t = t + w;
                w = mulmod(w, w, r);
            }
            g = poly_gcd(r, t);
        } else {
            std::uint64_t e = 1;
            for (std::size_t i = 0; i < equal_deg; ++i) e *= p;
            auto h = powmod(u, (e - 1) / 2, r);
            g = poly_gcd(r, h - Poly<PrimeField>::constant(f, f.one()));
        }
        if (g.deg() > 0 && g.deg() < r.deg()) return lift(g);
    }
    return std::nullopt;  // budget exhausted; caller treats as inconclusive
}

}  // namespace silt
