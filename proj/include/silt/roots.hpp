#pragma once

#include <algorithm>
#include <vector>

#include "silt/poly.hpp"

namespace silt {

/* Distinct roots of a polynomial in the prime field: split off the
 * linear-factor part with gcd(chi, x^p - x), then split it completely.
 */
inline std::vector<std::uint64_t> fp_roots(const Poly<PrimeField>& chi, std::uint64_t seed = 7) {
    const auto& f = chi.f;
    std::vector<std::uint64_t> out;
    if (chi.deg() < 1) return out;
    auto x = Poly<PrimeField>::x(f);
    auto lin = poly_gcd(chi, frobenius_power_x(chi.monic(), 1) - x);
    std::vector<Poly<PrimeField>> work{lin};
    while (!work.empty()) {
        auto g = work.back();
        work.pop_back();
        if (g.deg() < 1) continue;
        if (g.deg() == 1) {
            out.push_back(f.neg(f.mul(g.c[0], f.inv(g.c[1]))));
            continue;
        }
        auto s = coprime_split(g, seed);
        if (s) {
            work.push_back(s->first);
            work.push_back(s->second);
            continue;
        }
        // g is a power of one linear factor
        auto r = poly_radical(g);
        if (r.deg() == 1) out.push_back(f.neg(f.mul(r.c[0], f.inv(r.c[1]))));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace detail {
inline void divisors_bounded(mpz_class n, std::vector<mpz_class>& out) {
    n = abs(n);
    if (n == 0) return;
    std::vector<std::pair<mpz_class, unsigned>> fac;
    for (mpz_class d = 2; d * d <= n && d < 1000000; ++d)
        if (n % d == 0) {
            unsigned e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            fac.emplace_back(d, e);
        }
    if (n > 1) fac.emplace_back(n, 1);
    out = {mpz_class(1)};
    for (auto& [p, e] : fac) {
        std::vector<mpz_class> next;
        mpz_class pk(1);
        for (unsigned k = 0; k <= e; ++k) {
            for (auto& d : out) {
                next.push_back(d * pk);
                if (next.size() > 20000) return;  // budget; callers tolerate missing roots
            }
            pk *= p;
        }
        out = std::move(next);
    }
}
}  // namespace detail

/* Rational roots by the integer root test (candidates num/den with num
 * dividing the constant and den the leading coefficient).
 */
inline std::vector<mpq_class> rational_roots(const Poly<RationalField>& chi) {
    std::vector<mpq_class> out;
    if (chi.deg() < 1) return out;
    RationalField q;
    // clear denominators
    mpz_class l(1);
    for (const auto& c : chi.c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<mpz_class> ic;
    for (const auto& c : chi.c) ic.push_back(mpq_class(c * l).get_num());
    std::size_t low = 0;
    while (low < ic.size() && ic[low] == 0) ++low;
    if (low > 0) out.push_back(mpq_class(0));
    if (low >= ic.size()) return out;
    std::vector<mpz_class> nums, dens;
    detail::divisors_bounded(ic[low], nums);
    detail::divisors_bounded(ic.back(), dens);
    auto eval = [&](const mpq_class& v) {
        mpq_class acc(0);
        for (std::size_t i = chi.c.size(); i-- > 0;) acc = acc * v + chi.c[i];
        return sgn(acc) == 0;
    };
    for (const auto& n : nums)
        for (const auto& d : dens)
            for (int sign : {1, -1}) {
                mpq_class cand(sign * n, d);
                cand.canonicalize();
                if (eval(cand)) out.push_back(cand);
            }
    std::sort(out.begin(), out.end(), [](const mpq_class& a, const mpq_class& b) { return cmp(a, b) < 0; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const mpq_class& a, const mpq_class& b) { return cmp(a, b) == 0; }),
              out.end());
    return out;
}

template <class F>
std::vector<typename F::Elem> field_roots(const Poly<F>& chi, std::uint64_t seed = 7) {
    if constexpr (F::is_rational) {
        return rational_roots(chi);
    } else {
        std::vector<typename F::Elem> out;
        for (auto r : fp_roots(chi, seed)) out.push_back(r);
        return out;
    }
}

}  // namespace silt
