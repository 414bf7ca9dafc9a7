#pragma once

#include <map>
#include <sstream>

#include "silt/module.hpp"

namespace silt {

/* ------------- maps between explicit sums of projectives ------------- */

/* extract, from a module map between projective sums, the algebra-element
 * block a_{c,d} in e_{cls(c)} A e_{cls(d)} with phi|summand c = right
 * multiplication into summand d
 */
template <class F>
std::vector<std::vector<Matrix<F>>> proj_map_blocks(const ModuleMap<F>& phi, const ProjSum<F>& src,
                                                    const ProjSum<F>& tgt) {
    const F& f = phi.mat.field();
    const auto& a = *src.mod.alg;
    std::vector<std::vector<Matrix<F>>> blocks(
        src.classes.size(), std::vector<Matrix<F>>(tgt.classes.size(), a.zero_elem()));
    for (std::size_t c = 0; c < src.classes.size(); ++c) {
        // image of the generator e_{i_c}
        Matrix<F> img(f, phi.mat.rows(), 1);
        for (std::size_t r = 0; r < phi.mat.rows(); ++r) img(r, 0) = phi.mat(r, src.gen_pos[c]);
        for (std::size_t d = 0; d < tgt.classes.size(); ++d) {
            auto elem = a.zero_elem();
            for (std::size_t j = 0; j < tgt.coords[d].size(); ++j)
                elem(tgt.basis_elem_idx[d][j], 0) = img(tgt.coords[d][j], 0);
            blocks[c][d] = std::move(elem);
        }
    }
    return blocks;
}

/* the reverse: assemble the module map given the algebra-element blocks */
template <class F>
ModuleMap<F> proj_map_from_blocks(const ProjSum<F>& src, const ProjSum<F>& tgt,
                                  const std::vector<std::vector<Matrix<F>>>& blocks) {
    const F& f = src.mod.field();
    const auto& a = *src.mod.alg;
    Matrix<F> mat(f, tgt.mod.dim(), src.mod.dim());
    for (std::size_t c = 0; c < src.classes.size(); ++c)
        for (std::size_t j = 0; j < src.coords[c].size(); ++j) {
            auto x = a.basis_elem(src.basis_elem_idx[c][j]);
            for (std::size_t d = 0; d < tgt.classes.size(); ++d) {
                if (blocks[c][d].is_zero()) continue;
                auto prod = a.mul(x, blocks[c][d]);
                for (std::size_t j2 = 0; j2 < tgt.coords[d].size(); ++j2) {
                    const auto& v = prod(tgt.basis_elem_idx[d][j2], 0);
                    if (!f.is_zero(v))
                        mat(tgt.coords[d][j2], src.coords[c][j]) = f.add(mat(tgt.coords[d][j2], src.coords[c][j]), v);
                }
            }
        }
    return ModuleMap<F>{src.mod, tgt.mod, std::move(mat)};
}

/* ---------------------------- projective covers ---------------------------- */

template <class F>
struct Cover {
    ProjSum<F> proj;
    ModuleMap<F> map;  // proj.mod -> target, surjective, kernel inside rad
};

template <class F>
Cover<F> projective_cover(const Module<F>& m) {
    const F& f = m.field();
    const auto& alg = m.alg;
    auto t = top(m);
    std::vector<std::size_t> classes;
    std::vector<ModuleMap<F>> chosen;
    Matrix<F> covered(f, t.mod.dim(), 0);
    for (std::size_t i = 0; i < alg->nclasses; ++i) {
        auto pi = projective(alg, i);
        for (auto& h : hom(pi, m)) {
            auto timg = column_space_basis(t.proj.mat * h.mat);
            if (timg.cols() == 0 || span_contains(covered, timg)) continue;
            covered = span_sum(covered, timg);
            classes.push_back(i);
            chosen.push_back(h);
        }
    }
    if (covered.cols() != t.mod.dim()) throw Error("projective_cover: top not covered");
    auto ps = proj_sum(alg, classes);
    Matrix<F> mat(f, m.dim(), ps.mod.dim());
    for (std::size_t c = 0; c < chosen.size(); ++c) {
        // summand c includes into ps via its coordinate list
        for (std::size_t j = 0; j < ps.coords[c].size(); ++j)
            for (std::size_t r = 0; r < m.dim(); ++r)
                mat(r, ps.coords[c][j]) = f.add(mat(r, ps.coords[c][j]), chosen[c].mat(r, j));
    }
    ModuleMap<F> cmap{ps.mod, m, std::move(mat)};
    Cover<F> cov{std::move(ps), std::move(cmap)};
    if (!cov.map.is_surjective()) throw Error("projective_cover: not surjective");
    if (!span_contains(radical_subspace(cov.proj.mod), nullspace(cov.map.mat)))
        throw Error("projective_cover: kernel not inside the radical");
    return cov;
}

/* ------------------------------ resolutions ------------------------------ */

/* minimal projective resolution P^0 <- ... <- P^{-depth} together with all
 * syzygies and their inclusions
 */
template <class F>
struct MinResolution {
    Module<F> m;
    std::size_t depth = 0;
    std::vector<ProjSum<F>> terms;      // terms[i] = P^{-i}; may be fewer than depth+1 if 0
    std::vector<ModuleMap<F>> maps;     // maps[0]: P^0 -> M; maps[i]: P^{-i} -> P^{-i+1}
    std::vector<Module<F>> syzygies;    // syzygies[i] = Omega^i, i = 0..depth+1 (while nonzero)
    std::vector<ModuleMap<F>> syz_incl; // syz_incl[i]: Omega^i -> P^{-i+1}.mod, i >= 1

    const ProjSum<F>& term(std::size_t i) const { return terms[i]; }
    bool term_is_zero(std::size_t i) const { return i >= terms.size() || terms[i].classes.empty(); }

    Module<F> syzygy(std::size_t i) const {
        if (i < syzygies.size()) return syzygies[i];
        return zero_module(m.alg);
    }

    std::string shape(const std::string& sep = " <- ") const {
        std::ostringstream os;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (i) os << sep;
            std::map<std::size_t, std::size_t> mult;
            for (auto c : terms[i].classes) ++mult[c];
            bool first = true;
            if (mult.empty()) os << "0";
            for (auto& [cls, k] : mult) {
                if (!first) os << "+";
                first = false;
                std::string nm = m.alg->quiver ? m.alg->quiver->vertices[cls]
                                               : std::to_string(cls + 1);
                os << "P(" << nm << ")";
                if (k > 1) os << "^" << k;
            }
        }
        return os.str();
    }
};

template <class F>
MinResolution<F> min_resolution(const Module<F>& m, std::size_t depth) {
    MinResolution<F> res;
    res.m = m;
    res.depth = depth;
    res.syzygies.push_back(m);
    for (std::size_t i = 0; i <= depth; ++i) {
        const Module<F>& cur = res.syzygies.back();
        if (cur.is_zero()) break;
        auto cov = projective_cover(cur);
        if (i == 0)
            res.maps.push_back(cov.map);
        else
            res.maps.push_back(compose(res.syz_incl.back(), cov.map));
        auto ker = kernel(cov.map);
        res.terms.push_back(std::move(cov.proj));
        res.syzygies.push_back(ker.mod);
        res.syz_incl.push_back(ModuleMap<F>{ker.mod, res.terms.back().mod, ker.incl.mat});
    }
    return res;
}

template <class F>
Module<F> syzygy(const Module<F>& m, std::size_t i) {
    if (i == 0) return m;
    return min_resolution(m, i - 1).syzygy(i);
}

/* ------------------------------ Nakayama ------------------------------ */

/* nu(P(i)) = I(i) with the identification D(P_op); on maps this transports
 * right multiplication to a transposed left multiplication
 */
template <class F>
ProjSum<F> op_proj_sum(const ProjSum<F>& ps) {
    return proj_sum(opposite(ps.mod.alg), ps.classes);
}

template <class F>
Module<F> nakayama_of_sum(const ProjSum<F>& ps) {
    return dual(op_proj_sum(ps).mod);
}

template <class F>
ModuleMap<F> nakayama_map(const ModuleMap<F>& phi, const ProjSum<F>& src, const ProjSum<F>& tgt) {
    auto blocks = proj_map_blocks(phi, src, tgt);
    auto src_op = op_proj_sum(src);
    auto tgt_op = op_proj_sum(tgt);
    // phi* : tgt_op -> src_op has block (d -> c) the same algebra element
    std::vector<std::vector<Matrix<F>>> opblocks(
        tgt.classes.size(), std::vector<Matrix<F>>(src.classes.size(), src.mod.alg->zero_elem()));
    for (std::size_t c = 0; c < src.classes.size(); ++c)
        for (std::size_t d = 0; d < tgt.classes.size(); ++d) opblocks[d][c] = blocks[c][d];
    auto star = proj_map_from_blocks(tgt_op, src_op, opblocks);
    // dualize: D reverses again
    return ModuleMap<F>{nakayama_of_sum(src), nakayama_of_sum(tgt), star.mat.transpose()};
}

/* nu on an arbitrary projective module: recognized via its cover splitting */
template <class F>
Module<F> nakayama(const Module<F>& p) {
    auto cov = projective_cover(p);
    if (kernel(cov.map).mod.dim() != 0) throw NotProjective("nakayama: module is not projective");
    return nakayama_of_sum(cov.proj);
}

/* ------------------------------- tau, tau_n ------------------------------- */

/* tau(M) = Ker nu(pi^{-1}); tau_n(M) = tau(Omega^{n-1} M) read off the fixed
 * minimal resolution
 */
template <class F>
Module<F> tau_n(const Module<F>& m, std::size_t n) {
    if (n < 1) throw PreconditionViolated("tau_n: n >= 1");
    auto res = min_resolution(m, n);
    if (res.term_is_zero(n)) return zero_module(m.alg);  // pd < n: minimal presentation ends
    auto nu = nakayama_map(res.maps[n], res.term(n), res.term(n - 1));
    return kernel(nu).mod;
}

template <class F>
Module<F> tau(const Module<F>& m) {
    return tau_n(m, 1);
}

/* ---------------------------------- Ext ---------------------------------- */

namespace detail {

/* Hom(P^{-i}, N) with Yoneda coordinates, plus the induced cochain maps */
template <class F>
struct ExtComplex {
    std::vector<std::size_t> dims;    // dims[i] = dim Hom(P^{-i}, N)
    std::vector<Matrix<F>> d;         // d[i]: Hom(P^{-i}, N) -> Hom(P^{-i-1}, N)
};

template <class F>
ExtComplex<F> ext_complex(const MinResolution<F>& res, const Module<F>& n, std::size_t upto) {
    const F& f = n.field();
    ExtComplex<F> ec;
    auto hom_dim = [&](std::size_t i) {
        std::size_t d = 0;
        if (i < res.terms.size())
            for (auto cls : res.terms[i].classes) d += n.vdim[cls];
        return d;
    };
    for (std::size_t i = 0; i <= upto; ++i) ec.dims.push_back(hom_dim(i));
    for (std::size_t i = 0; i + 1 <= upto; ++i) {
        Matrix<F> mat(f, ec.dims[i + 1], ec.dims[i]);
        if (i + 1 < res.terms.size()) {
            const auto& src = res.terms[i + 1];  // P^{-i-1}
            const auto& tgt = res.terms[i];      // P^{-i}
            auto blocks = proj_map_blocks(res.maps[i + 1], src, tgt);
            // Hom(tgt, N) -> Hom(src, N): per summand pair, n |-> rho_N(a) n
            std::vector<std::size_t> roff(src.classes.size() + 1, 0);
            for (std::size_t c = 0; c < src.classes.size(); ++c)
                roff[c + 1] = roff[c] + n.vdim[src.classes[c]];
            std::vector<std::size_t> coff(tgt.classes.size() + 1, 0);
            for (std::size_t d2 = 0; d2 < tgt.classes.size(); ++d2)
                coff[d2 + 1] = coff[d2] + n.vdim[tgt.classes[d2]];
            for (std::size_t c = 0; c < src.classes.size(); ++c)
                for (std::size_t d2 = 0; d2 < tgt.classes.size(); ++d2) {
                    const auto& a = blocks[c][d2];
                    if (a.is_zero()) continue;
                    auto actm = n.action_of(a);
                    // block rows e_{src cls}, cols e_{tgt cls}
                    std::size_t sc = src.classes[c], tc = tgt.classes[d2];
                    for (std::size_t r = 0; r < n.vdim[sc]; ++r)
                        for (std::size_t q = 0; q < n.vdim[tc]; ++q)
                            mat(roff[c] + r, coff[d2] + q) =
                                f.add(mat(roff[c] + r, coff[d2] + q),
                                      actm(n.offset(sc) + r, n.offset(tc) + q));
                }
        }
        ec.d.push_back(std::move(mat));
    }
    return ec;
}

}  // namespace detail

template <class F>
struct ExtResult {
    std::size_t dim;
    Matrix<F> cocycles;  // representative cocycles (Yoneda coordinates on P^{-i})
};

template <class F>
ExtResult<F> ext_with_cocycles(const Module<F>& m, const Module<F>& n, std::size_t i) {
    if (m.alg.get() != n.alg.get()) throw AlgebraMismatch("ext: different algebras");
    const F& f = m.field();
    auto res = min_resolution(m, i + 1);
    auto ec = detail::ext_complex(res, n, i + 1);
    if (i == 0) {
        auto z = nullspace(ec.d[0]);
        return ExtResult<F>{z.cols(), z};
    }
    auto z = nullspace(ec.d[i]);
    auto b = column_space_basis(ec.d[i - 1]);
    // dim ext = dim Z - dim B; representatives: extend B to Z
    Matrix<F> reps(f, z.rows(), 0);
    Matrix<F> accum = b;
    for (std::size_t c = 0; c < z.cols(); ++c) {
        if (span_contains(accum, z.col(c))) continue;
        accum = Matrix<F>::hcat(accum, z.col(c));
        reps = Matrix<F>::hcat(reps, z.col(c));
    }
    return ExtResult<F>{reps.cols(), reps};
}

template <class F>
std::size_t ext(const Module<F>& m, const Module<F>& n, std::size_t i) {
    return ext_with_cocycles(m, n, i).dim;
}

/* ------------------------- projective dimension ------------------------- */

struct PdResult {
    bool finite = false;
    std::size_t value = 0;  // valid when finite
    // syzygy periodicity witness Omega^i = Omega^j certifying pd = infinity
    bool periodic = false;
    std::size_t period_i = 0, period_j = 0;

    std::string to_string() const {
        if (finite) return "pd = " + std::to_string(value);
        if (periodic)
            return "pd exceeds bound; periodic: Omega^" + std::to_string(period_i) +
                   " = Omega^" + std::to_string(period_j) + " (pd = infinity)";
        return "pd exceeds bound";
    }
};

template <class F>
PdResult pd_up_to(const Module<F>& m, std::size_t bound) {
    auto res = min_resolution(m, bound);
    PdResult r;
    // first zero syzygy <= bound+1 gives pd = that index - 1
    for (std::size_t i = 1; i <= bound + 1; ++i) {
        if (res.syzygy(i).is_zero()) {
            r.finite = true;
            r.value = i - 1;
            return r;
        }
    }
    // periodicity scan
    for (std::size_t i = 0; i < res.syzygies.size() && !r.periodic; ++i)
        for (std::size_t j = i + 1; j < res.syzygies.size() && !r.periodic; ++j) {
            if (res.syzygies[i].is_zero() || res.syzygies[j].is_zero()) continue;
            if (res.syzygies[i].vdim != res.syzygies[j].vdim) continue;
            if (is_iso(res.syzygies[i], res.syzygies[j])) {
                r.periodic = true;
                r.period_i = i;
                r.period_j = j;
            }
        }
    return r;
}

/* ------------------------ tau_n-perpendicular tests ------------------------ */

/* N in M^{perp tau_n}: Hom(N, tau_n M) = 0 and Ext^i(M, N) = 0, 1 <= i <= n-1 */
template <class F>
bool in_perp_tau_n(const Module<F>& n, const Module<F>& m, std::size_t nn) {
    if (nn < 1) throw PreconditionViolated("in_perp_tau_n: n >= 1");
    if (dim_hom(n, tau_n(m, nn)) != 0) return false;
    for (std::size_t i = 1; i + 1 <= nn; ++i)
        if (ext(m, n, i) != 0) return false;
    return true;
}

template <class F>
Verdict is_tau_n_rigid(const Module<F>& m, std::size_t n) {
    if (n < 1) throw PreconditionViolated("is_tau_n_rigid: n >= 1");
    auto t = tau_n(m, n);
    auto h = dim_hom(m, t);
    if (h != 0)
        return Verdict::no("Hom(M, tau_" + std::to_string(n) + " M) has dimension " + std::to_string(h),
                           "module-route");
    for (std::size_t i = 1; i + 1 <= n; ++i) {
        auto e = ext(m, m, i);
        if (e != 0)
            return Verdict::no("Ext^" + std::to_string(i) + "(M, M) has dimension " + std::to_string(e),
                               "module-route");
    }
    return Verdict::yes("all tau_n-perpendicular vanishing conditions verified", "module-route");
}

/* Given tau_{n+1}-rigidity, tau_n-rigidity is equivalent to the vanishing of
 * Hom(P^{-n-1}(M), M).
 */
template <class F>
Verdict descend_rigidity(const Module<F>& m, std::size_t n) {
    if (n < 1) throw PreconditionViolated("descend_rigidity: n >= 1");
    if (!is_tau_n_rigid(m, n + 1).holds())
        throw PreconditionViolated("descend_rigidity: M is not tau_{n+1}-rigid");
    auto res = min_resolution(m, n + 1);
    if (res.term_is_zero(n + 1))
        return Verdict::yes("P^{-n-1}(M) = 0 (pd <= n)", "descend");
    auto h = dim_hom(res.term(n + 1).mod, m);
    if (h == 0) return Verdict::yes("Hom(P^{-n-1}(M), M) = 0", "descend");
    return Verdict::no("Hom(P^{-n-1}(M), M) has dimension " + std::to_string(h), "descend");
}

}  // namespace silt
