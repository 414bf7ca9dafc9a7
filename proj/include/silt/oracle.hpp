#pragma once

#include <cmath>
#include <cstdlib>
#include <map>

#include "silt/resolution.hpp"

namespace silt {

/* Brute-force ground truth over a small prime field: enumerate all modules
 * up to a total dimension bound by assigning matrices to a generating set
 * (the idempotents act as block projectors; generators are basis lifts of
 * rad/rad^2), filter by the structure constants, dedupe by isomorphism, and
 * keep certified indecomposables. Deterministic: dimension vectors and
 * matrix assignments are enumerated lexicographically.
 */
struct EnumerationConfig {
    std::size_t max_total_dim = 4;
    std::uint64_t work_bound = 0;  // 0: use SILT_WORK_BOUND or the default
    std::uint64_t seed = 1;

    std::uint64_t effective_work_bound() const {
        if (work_bound) return work_bound;
        if (const char* e = std::getenv("SILT_WORK_BOUND")) {
            auto v = std::strtoull(e, nullptr, 10);
            if (v > 0) return v;
        }
        return 1ull << 24;
    }
};

namespace detail {

/* generators of rad/rad^2 (as basis indices); requires a split basic algebra
 * in the sense that every non-radical basis element is an idempotent
 */
template <class F>
std::vector<std::size_t> radical_generators(const BasedAlgebra<F>& a) {
    std::vector<bool> is_rad(a.dim, false);
    for (auto r : a.radical) is_rad[r] = true;
    for (std::size_t k = 0; k < a.dim; ++k) {
        bool idem = std::find(a.idem.begin(), a.idem.end(), k) != a.idem.end();
        if (!is_rad[k] && !idem)
            throw WorkBoundExceeded("enumeration needs a split basic algebra presentation");
    }
    // rad^2 span
    const F& f = a.field;
    Matrix<F> rad2(f, a.dim, 0);
    for (auto r1 : a.radical)
        for (auto r2 : a.radical) {
            auto p = a.mul(a.basis_elem(r1), a.basis_elem(r2));
            if (!p.is_zero()) rad2 = Matrix<F>::hcat(rad2, p);
        }
    rad2 = column_space_basis(rad2);
    std::vector<std::size_t> gens;
    Matrix<F> accum = rad2;
    for (auto r : a.radical) {
        auto v = a.basis_elem(r);
        if (span_contains(accum, v)) continue;
        accum = Matrix<F>::hcat(accum, v);
        gens.push_back(r);
    }
    return gens;
}

/* expression of every basis element as a linear combination of words in the
 * generators (words in application order; empty word = idempotent)
 */
template <class F>
struct GeneratorExpressions {
    std::vector<std::size_t> gens;
    // per basis element: list of (coefficient, word over gens, class if word empty)
    std::vector<std::vector<std::pair<typename F::Elem, std::vector<std::size_t>>>> expr;
};

template <class F>
GeneratorExpressions<F> generator_expressions(const BasedAlgebra<F>& a) {
    const F& f = a.field;
    GeneratorExpressions<F> ge;
    ge.gens = radical_generators(a);
    // collect words and their algebra values until the span stabilizes
    std::vector<std::pair<std::vector<std::size_t>, Matrix<F>>> words;
    for (std::size_t i = 0; i < a.nclasses; ++i)
        words.push_back({{}, a.basis_elem(a.idem[i])});  // empty word per class (slot i)
    std::size_t level_begin = 0, level_end = words.size();
    Matrix<F> span(f, a.dim, 0);
    for (auto& w : words) span = Matrix<F>::hcat(span, w.second);
    for (std::size_t len = 1; len <= a.dim; ++len) {
        bool grew = false;
        for (std::size_t i = level_begin; i < level_end; ++i)
            for (auto g : ge.gens) {
                // new word: apply the existing word first, then g
                auto val = a.mul(a.basis_elem(g), words[i].second);
                if (val.is_zero()) continue;
                auto w = words[i].first;
                w.push_back(g);
                words.push_back({std::move(w), val});
                if (!span_contains(span, val)) {
                    span = Matrix<F>::hcat(span, val);
                    grew = true;
                }
            }
        level_begin = level_end;
        level_end = words.size();
        if (!grew) break;
    }
    // express each basis element in the word values
    Matrix<F> wmat(f, a.dim, words.size());
    for (std::size_t c = 0; c < words.size(); ++c)
        for (std::size_t r = 0; r < a.dim; ++r) wmat(r, c) = words[c].second(r, 0);
    ge.expr.resize(a.dim);
    for (std::size_t k = 0; k < a.dim; ++k) {
        auto sol = solve_linear(wmat, a.basis_elem(k));
        if (!sol) throw Error("generator_expressions: basis element outside generated span");
        for (std::size_t c = 0; c < words.size(); ++c)
            if (!f.is_zero((*sol)(c, 0))) ge.expr[k].push_back({(*sol)(c, 0), words[c].first});
    }
    // idempotent slots carry the class in expr through the empty word position:
    // the empty word value used above is e_{slot}, so expressions are exact.
    return ge;
}

}  // namespace detail

/* all valid modules with the given dimension vector, one per matrix
 * assignment that satisfies the structure constants
 */
template <class F, class Sink>
void enumerate_modules_with_vdim(const AlgebraHandle<F>& a,
                                 const detail::GeneratorExpressions<F>& ge,
                                 const std::vector<std::size_t>& vdim, std::uint64_t work_bound,
                                 Sink&& sink) {
    static_assert(!F::is_rational, "enumeration is finite-field only");
    const F& f = a->field;
    const std::uint64_t p = f.modulus();
    std::size_t total_entries = 0;
    for (auto g : ge.gens) {
        auto [t, s] = a->grade[g];
        total_entries += vdim[t] * vdim[s];
    }
    double logcount = static_cast<double>(total_entries) * std::log2(static_cast<double>(p));
    if (logcount > std::log2(static_cast<double>(work_bound)))
        throw WorkBoundExceeded("enumeration work bound exceeded at a dimension vector");
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < total_entries; ++i) count *= p;

    std::size_t d = 0;
    for (auto v : vdim) d += v;
    std::vector<std::size_t> off(vdim.size() + 1, 0);
    for (std::size_t i = 0; i < vdim.size(); ++i) off[i + 1] = off[i] + vdim[i];
    std::map<std::size_t, std::size_t> gen_slot;
    for (std::size_t i = 0; i < ge.gens.size(); ++i) gen_slot[ge.gens[i]] = i;

    for (std::uint64_t code = 0; code < count; ++code) {
        // decode generator matrices (lexicographic)
        std::vector<Matrix<F>> gm;
        std::uint64_t c = code;
        for (auto g : ge.gens) {
            auto [t, s] = a->grade[g];
            Matrix<F> m(f, d, d);
            for (std::size_t i = 0; i < vdim[t]; ++i)
                for (std::size_t j = 0; j < vdim[s]; ++j) {
                    m(off[t] + i, off[s] + j) = static_cast<typename F::Elem>(c % p);
                    c /= p;
                }
            gm.push_back(std::move(m));
        }
        // evaluate the stored expressions to get all basis actions
        Module<F> mod;
        mod.alg = a;
        mod.vdim = vdim;
        mod.act.reserve(a->dim);
        for (std::size_t k = 0; k < a->dim; ++k) {
            Matrix<F> acc(f, d, d);
            for (const auto& [coef, word] : ge.expr[k]) {
                Matrix<F> val(f, d, d);
                if (word.empty()) {
                    std::size_t cls = a->grade[k].first;
                    for (std::size_t i = 0; i < vdim[cls]; ++i)
                        val(off[cls] + i, off[cls] + i) = f.one();
                } else {
                    val = gm[gen_slot[word[0]]];
                    for (std::size_t i = 1; i < word.size(); ++i) val = gm[gen_slot[word[i]]] * val;
                }
                acc = acc + val.scaled(coef);
            }
            mod.act.push_back(std::move(acc));
        }
        // structure-constant check
        bool ok = true;
        for (std::size_t i = 0; i < a->dim && ok; ++i)
            for (std::size_t j = 0; j < a->dim && ok; ++j) {
                auto prod = a->mul(a->basis_elem(i), a->basis_elem(j));
                if (mod.act[i] * mod.act[j] != mod.action_of(prod)) ok = false;
            }
        if (ok) sink(mod);
    }
}

/* cheap iso-invariant fingerprint to cut the pairwise iso tests */
template <class F>
std::string module_fingerprint(const Module<F>& m) {
    std::string s;
    for (auto v : m.vdim) s += std::to_string(v) + ",";
    s += "|";
    for (std::size_t k = 0; k < m.alg->dim; ++k) s += std::to_string(rank(m.act[k])) + ",";
    s += "|" + std::to_string(radical_subspace(m).cols());
    s += "|" + std::to_string(dim_hom(m, m));
    return s;
}

/* iso-class representatives of all indecomposables of total dimension at most
 * the configured bound; exhaustive, deterministic
 */
template <class F>
std::vector<Module<F>> enumerate_indecomposables(const AlgebraHandle<F>& a,
                                                 const EnumerationConfig& cfg) {
    const F& f = a->field;
    if (f.modulus() * cfg.max_total_dim * cfg.max_total_dim > cfg.effective_work_bound())
        throw WorkBoundExceeded("p * (max dim)^2 exceeds the work bound");
    auto ge = detail::generator_expressions(*a);
    std::vector<Module<F>> reps;          // one per iso class seen (any decomposability)
    std::vector<bool> keep;               // reps[i] is a certified indecomposable
    std::map<std::string, std::vector<std::size_t>> buckets;

    std::vector<std::size_t> vdim(a->nclasses, 0);
    auto advance = [&]() {
        for (std::size_t i = vdim.size(); i-- > 0;) {
            std::size_t rest = std::accumulate(vdim.begin(), vdim.end(), std::size_t{0}) - vdim[i];
            if (rest + vdim[i] + 1 <= cfg.max_total_dim) {
                ++vdim[i];
                for (std::size_t j = i + 1; j < vdim.size(); ++j) vdim[j] = 0;
                return true;
            }
            vdim[i] = 0;
        }
        return false;
    };
    while (advance()) {
        enumerate_modules_with_vdim(a, ge, vdim, cfg.effective_work_bound(), [&](Module<F>& mod) {
            auto fp = module_fingerprint(mod);
            auto& bucket = buckets[fp];
            for (auto idx : bucket)
                if (is_iso(reps[idx], mod, cfg.seed)) return;
            bool indec = false;
            try {
                auto dec = decompose(mod, cfg.seed);
                indec = dec.parts.size() == 1 && dec.certified;
            } catch (const DecompositionInconclusive&) {
                indec = false;  // honest: never report an uncertified candidate
            }
            bucket.push_back(reps.size());
            reps.push_back(mod);
            keep.push_back(indec);
        });
    }
    std::vector<Module<F>> out;
    for (std::size_t i = 0; i < reps.size(); ++i)
        if (keep[i]) out.push_back(reps[i]);
    return out;
}

/* the tau_n-rigid members of the enumeration */
template <class F>
std::vector<Module<F>> classify_tau_n_rigid(const AlgebraHandle<F>& a, const EnumerationConfig& cfg,
                                            std::size_t n) {
    std::vector<Module<F>> out;
    for (auto& m : enumerate_indecomposables(a, cfg))
        if (is_tau_n_rigid(m, n).holds()) out.push_back(m);
    return out;
}

/* max certified-finite projective dimension over the enumerated
 * indecomposables: a lower bound for the finitistic dimension
 */
template <class F>
std::size_t findim_lower_bound(const AlgebraHandle<F>& a, const EnumerationConfig& cfg,
                               std::size_t pd_bound) {
    std::size_t best = 0;
    for (auto& m : enumerate_indecomposables(a, cfg)) {
        auto pd = pd_up_to(m, pd_bound);
        if (pd.finite) best = std::max(best, pd.value);
    }
    return best;
}

}  // namespace silt
