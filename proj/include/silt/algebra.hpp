#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "silt/linalg.hpp"
#include "silt/radical.hpp"

namespace silt {

/* Quiver presentation of an algebra: kQ / (I + R^L), where I is generated by
 * the listed relations and R is the arrow ideal. Paths are stored in
 * application order (first arrow applied first); the usual composition
 * notation "ba" therefore reads ["a","b"] here.
 */
struct Arrow {
    std::string name;
    std::size_t src, tgt;
};

template <class F>
struct Relation {
    struct Term {
        typename F::Elem coeff;
        std::vector<std::size_t> arrows;  // application order
    };
    std::vector<Term> terms;
};

template <class F>
struct QuiverPresentation {
    F field;
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<Relation<F>> relations;
    std::size_t nilpotency_bound = 2;  // L
};

struct QuiverInfo {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    // factorization of each basis element as an arrow word (application order);
    // empty word = trivial path at grade.src
    std::vector<std::vector<std::size_t>> words;
};

/* Finite-dimensional algebra with a fixed homogeneous basis: every basis
 * element lies in a single Peirce block e_t A e_s of the complete orthogonal
 * idempotent set e_0..e_{r-1}, and rad(A) is spanned by a subset of the basis.
 */
template <class F>
struct BasedAlgebra {
    using Elem = typename F::Elem;

    F field;
    std::size_t dim = 0;
    std::size_t nclasses = 0;
    std::vector<std::string> names;
    std::vector<std::size_t> idem;                           // idem[i]: basis index of e_i
    std::vector<std::pair<std::size_t, std::size_t>> grade;  // basis k in e_{tgt} A e_{src}
    std::vector<Matrix<F>> lmul;   // lmul[k] column j = coords of b_k * b_j
    std::vector<std::size_t> radical;  // basis indices spanning rad(A)
    std::optional<QuiverInfo> quiver;

    // filled by finalize(): block[t][s] = basis indices in e_t A e_s
    std::vector<std::vector<std::vector<std::size_t>>> block;

    // memoized opposite algebra (weak: lifetime follows the holders)
    mutable std::weak_ptr<const BasedAlgebra<F>> op_memo;

    explicit BasedAlgebra(F f) : field(f) {}

    void finalize() {
        block.assign(nclasses, std::vector<std::vector<std::size_t>>(nclasses));
        for (std::size_t k = 0; k < dim; ++k) block[grade[k].first][grade[k].second].push_back(k);
    }

    Matrix<F> zero_elem() const { return Matrix<F>(field, dim, 1); }
    Matrix<F> basis_elem(std::size_t k) const {
        auto v = zero_elem();
        v(k, 0) = field.one();
        return v;
    }
    Matrix<F> unit() const {
        auto v = zero_elem();
        for (auto e : idem) v(e, 0) = field.one();
        return v;
    }

    Matrix<F> mul(const Matrix<F>& x, const Matrix<F>& y) const {
        Matrix<F> r(field, dim, 1);
        for (std::size_t k = 0; k < dim; ++k) {
            if (field.is_zero(x(k, 0))) continue;
            r = r + (lmul[k] * y).scaled(x(k, 0));
        }
        return r;
    }

    /* left-multiplication matrix of an arbitrary element */
    Matrix<F> lmul_of(const Matrix<F>& x) const {
        Matrix<F> r(field, dim, dim);
        for (std::size_t k = 0; k < dim; ++k) {
            if (field.is_zero(x(k, 0))) continue;
            r = r + lmul[k].scaled(x(k, 0));
        }
        return r;
    }
    Matrix<F> rmul_of(const Matrix<F>& y) const {
        Matrix<F> r(field, dim, dim);
        for (std::size_t j = 0; j < dim; ++j) {
            auto col = mul(basis_elem(j), y);
            for (std::size_t i = 0; i < dim; ++i) r(i, j) = col(i, 0);
        }
        return r;
    }

    Matrix<F> radical_span() const {
        Matrix<F> r(field, dim, radical.size());
        for (std::size_t j = 0; j < radical.size(); ++j) r(radical[j], j) = field.one();
        return r;
    }

    std::size_t class_of_basis(std::size_t k) const { return grade[k].first; }

    /* exhaustive checks of the structural invariants; used in tests */
    void check_invariants() const {
        // associativity on basis triples
        for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = 0; b < dim; ++b) {
                auto ab = mul(basis_elem(a), basis_elem(b));
                for (std::size_t c = 0; c < dim; ++c) {
                    auto left = mul(ab, basis_elem(c));
                    auto right = mul(basis_elem(a), mul(basis_elem(b), basis_elem(c)));
                    if (left != right) throw Error("associativity fails on basis triple");
                }
            }
        // idempotents: orthogonal, sum to 1
        for (std::size_t i = 0; i < nclasses; ++i)
            for (std::size_t j = 0; j < nclasses; ++j) {
                auto p = mul(basis_elem(idem[i]), basis_elem(idem[j]));
                auto want = (i == j) ? basis_elem(idem[i]) : zero_elem();
                if (p != want) throw Error("idempotents not orthogonal");
            }
        auto u = unit();
        for (std::size_t k = 0; k < dim; ++k) {
            if (mul(u, basis_elem(k)) != basis_elem(k) || mul(basis_elem(k), u) != basis_elem(k))
                throw Error("unit axiom fails");
        }
        // homogeneity: e_t b e_s = b
        for (std::size_t k = 0; k < dim; ++k) {
            auto [t, s] = grade[k];
            auto b = basis_elem(k);
            if (mul(basis_elem(idem[t]), mul(b, basis_elem(idem[s]))) != b)
                throw Error("basis element not homogeneous");
        }
        // radical: two-sided ideal, nilpotent
        auto rs = radical_span();
        for (std::size_t k = 0; k < dim; ++k)
            for (std::size_t j = 0; j < radical.size(); ++j) {
                auto v = basis_elem(radical[j]);
                if (!span_contains(rs, mul(basis_elem(k), v)) ||
                    !span_contains(rs, mul(v, basis_elem(k))))
                    throw Error("radical is not an ideal");
            }
        Matrix<F> pw = rs;
        for (std::size_t it = 0; it < dim + 1 && pw.cols() > 0; ++it) {
            Matrix<F> next(field, dim, 0);
            for (std::size_t a = 0; a < pw.cols(); ++a)
                for (std::size_t j = 0; j < radical.size(); ++j)
                    next = Matrix<F>::hcat(next, mul(basis_elem(radical[j]), pw.col(a)));
            pw = column_space_basis(next);
            if (pw.cols() == 0) break;
        }
        if (pw.cols() != 0) throw Error("radical is not nilpotent");
        // radical is the true radical (semisimple quotient): compare with the
        // representation-theoretic computation
        std::vector<Matrix<F>> rep(dim, Matrix<F>(field, dim, dim));
        for (std::size_t k = 0; k < dim; ++k) rep[k] = lmul[k];
        auto rad2 = matrix_algebra_radical(rep);
        if (rad2.cols() != radical.size() || !span_contains(rs, rad2))
            throw Error("declared radical disagrees with computed radical");
    }
};

template <class F>
using AlgebraHandle = std::shared_ptr<const BasedAlgebra<F>>;

template <class F>
bool structural_equal(const BasedAlgebra<F>& a, const BasedAlgebra<F>& b) {
    if (a.field != b.field || a.dim != b.dim || a.nclasses != b.nclasses) return false;
    if (a.idem != b.idem || a.grade != b.grade || a.radical != b.radical) return false;
    for (std::size_t k = 0; k < a.dim; ++k)
        if (a.lmul[k] != b.lmul[k]) return false;
    return true;
}

/* ---------------- construction from a quiver presentation ---------------- */

namespace detail {

struct PathRec {
    std::size_t src, tgt;
    std::vector<std::size_t> word;  // application order
};

inline std::vector<PathRec> enumerate_paths(std::size_t nv, const std::vector<Arrow>& arrows,
                                            std::size_t maxlen) {
    std::vector<PathRec> out;
    for (std::size_t v = 0; v < nv; ++v) out.push_back({v, v, {}});
    std::size_t level_begin = 0, level_end = out.size();
    for (std::size_t len = 1; len <= maxlen; ++len) {
        for (std::size_t i = level_begin; i < level_end; ++i)
            for (std::size_t a = 0; a < arrows.size(); ++a) {
                if (arrows[a].src != out[i].tgt) continue;
                PathRec p = out[i];
                p.word.push_back(a);
                p.tgt = arrows[a].tgt;
                out.push_back(std::move(p));
            }
        level_begin = level_end;
        level_end = out.size();
        if (level_begin == level_end) break;
    }
    return out;
}

}  // namespace detail

/* Build kQ/(I + R^L). For length-homogeneous relations (each generator's
 * paths share one length) this equals kQ/I whenever the admissibility check
 * passes; the check requires every path of length L to lie in the ideal
 * modulo R^{L+1}.
 */
template <class F>
AlgebraHandle<F> build_algebra(const QuiverPresentation<F>& q) {
    const F f = q.field;
    const std::size_t nv = q.vertices.size();
    if (nv == 0) throw EmptyQuiver("quiver has no vertices");
    const std::size_t L = q.nilpotency_bound;
    if (L < 2) throw Error("nilpotency bound must be >= 2");
    for (const auto& a : q.arrows)
        if (a.src >= nv || a.tgt >= nv) throw Error("arrow endpoint out of range");
    for (const auto& rel : q.relations) {
        if (rel.terms.empty()) throw Error("empty relation");
        std::size_t s = 0, t = 0;
        bool first = true;
        for (const auto& term : rel.terms) {
            if (term.arrows.size() < 2) throw Error("relation path of length < 2");
            std::size_t ts = q.arrows[term.arrows.front()].src;
            std::size_t tt = q.arrows[term.arrows.back()].tgt;
            for (std::size_t i = 0; i + 1 < term.arrows.size(); ++i)
                if (q.arrows[term.arrows[i]].tgt != q.arrows[term.arrows[i + 1]].src)
                    throw Error("relation path is not composable");
            if (first) {
                s = ts;
                t = tt;
                first = false;
            } else if (ts != s || tt != t) {
                throw Error("relation mixes source/target");
            }
        }
    }

    // paths of length <= L; prefix of length < L is the ambient space of the algebra
    auto paths = detail::enumerate_paths(nv, q.arrows, L);
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> path_index;
    for (std::size_t i = 0; i < paths.size(); ++i)
        path_index[{paths[i].src, paths[i].word}] = i;
    std::size_t n_short = 0;
    while (n_short < paths.size() && paths[n_short].word.size() < L) ++n_short;

    // ideal span: p.g.q truncated to length <= L (working modulo R^{L+1})
    Matrix<F> ideal_le(f, paths.size(), 0);
    for (const auto& rel : q.relations) {
        std::size_t gs = q.arrows[rel.terms[0].arrows.front()].src;
        std::size_t gt = q.arrows[rel.terms[0].arrows.back()].tgt;
        for (const auto& right : paths) {  // applied first
            if (right.tgt != gs) continue;
            for (const auto& left : paths) {  // applied last
                if (left.src != gt) continue;
                Matrix<F> v(f, paths.size(), 1);
                bool any = false;
                for (const auto& term : rel.terms) {
                    std::size_t total = right.word.size() + term.arrows.size() + left.word.size();
                    if (total > L) continue;
                    std::vector<std::size_t> w = right.word;
                    w.insert(w.end(), term.arrows.begin(), term.arrows.end());
                    w.insert(w.end(), left.word.begin(), left.word.end());
                    auto idx = path_index.at({right.src, w});
                    v(idx, 0) = f.add(v(idx, 0), term.coeff);
                    any = true;
                }
                if (any && !v.is_zero()) ideal_le = Matrix<F>::hcat(ideal_le, v);
            }
        }
    }

    // admissibility: every path of length exactly L reduces to zero
    for (std::size_t i = n_short; i < paths.size(); ++i) {
        Matrix<F> v(f, paths.size(), 1);
        v(i, 0) = f.one();
        if (!span_contains(ideal_le, v))
            throw AdmissibilityFailure("path of length " + std::to_string(L) +
                                       " does not reduce to zero (bound too small or ideal not admissible)");
    }

    // restrict the ideal span to paths of length < L
    Matrix<F> ideal(f, n_short, 0);
    {
        auto basis_le = column_space_basis(ideal_le);
        for (std::size_t c = 0; c < basis_le.cols(); ++c) {
            Matrix<F> v(f, n_short, 1);
            bool in_short = true;
            for (std::size_t i = 0; i < paths.size(); ++i) {
                if (i < n_short)
                    v(i, 0) = basis_le(i, c);
                else if (!f.is_zero(basis_le(i, c)))
                    in_short = in_short;  // long part is zero in the algebra (R^L)
            }
            ideal = Matrix<F>::hcat(ideal, v);
        }
        ideal = column_space_basis(ideal);
    }

    // choose the complement basis: the path coordinates outside the pivot set
    std::vector<bool> in_ideal_pivot(n_short, false);
    {
        auto e = rref(ideal.transpose());
        for (auto p : e.pivots) in_ideal_pivot[p] = true;
    }
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < n_short; ++i)
        if (!in_ideal_pivot[i]) chosen.push_back(i);

    auto out = std::make_shared<BasedAlgebra<F>>(f);
    out->dim = chosen.size();
    out->nclasses = nv;
    std::vector<std::size_t> chosen_pos(n_short, SIZE_MAX);
    for (std::size_t k = 0; k < chosen.size(); ++k) chosen_pos[chosen[k]] = k;

    QuiverInfo qi;
    qi.vertices = q.vertices;
    qi.arrows = q.arrows;
    for (std::size_t k = 0; k < chosen.size(); ++k) {
        const auto& p = paths[chosen[k]];
        out->grade.emplace_back(p.tgt, p.src);
        qi.words.push_back(p.word);
        if (p.word.empty()) {
            out->idem.push_back(k);
            out->names.push_back("e" + q.vertices[p.src]);
        } else if (p.word.size() == 1) {
            out->names.push_back(q.arrows[p.word[0]].name);
            out->radical.push_back(k);
        } else {
            std::string nm;
            for (auto it = p.word.rbegin(); it != p.word.rend(); ++it) {
                if (!nm.empty()) nm += "*";
                nm += q.arrows[*it].name;
            }
            out->names.push_back(nm);
            out->radical.push_back(k);
        }
    }
    if (out->idem.size() != nv) throw Error("internal: lost a trivial path");

    // reduction of any short path to the chosen basis: solve [ideal | chosen] x = e
    Matrix<F> chosen_mat(f, n_short, chosen.size());
    for (std::size_t k = 0; k < chosen.size(); ++k) chosen_mat(chosen[k], k) = f.one();
    auto red_system = Matrix<F>::hcat(ideal, chosen_mat);
    std::vector<Matrix<F>> reduce(n_short, Matrix<F>(f, chosen.size(), 1));
    for (std::size_t i = 0; i < n_short; ++i) {
        Matrix<F> e(f, n_short, 1);
        e(i, 0) = f.one();
        auto sol = solve_linear(red_system, e);
        if (!sol) throw Error("internal: reduction failed");
        for (std::size_t k = 0; k < chosen.size(); ++k) reduce[i](k, 0) = (*sol)(ideal.cols() + k, 0);
    }

    // multiplication: concatenate words, kill length >= L, reduce
    out->lmul.assign(out->dim, Matrix<F>(f, out->dim, out->dim));
    for (std::size_t a = 0; a < out->dim; ++a) {
        const auto& pa = paths[chosen[a]];
        for (std::size_t b = 0; b < out->dim; ++b) {
            const auto& pb = paths[chosen[b]];  // b applied first in a*b
            if (pa.src != pb.tgt) continue;
            std::vector<std::size_t> w = pb.word;
            w.insert(w.end(), pa.word.begin(), pa.word.end());
            if (w.size() >= L) continue;  // lies in R^L
            auto it = path_index.find({pb.src, w});
            if (it == path_index.end()) continue;
            const auto& r = reduce[it->second];
            for (std::size_t k = 0; k < out->dim; ++k) out->lmul[a](k, b) = r(k, 0);
        }
    }
    out->quiver = std::move(qi);
    out->finalize();
    return out;
}

/* ----------------------------- opposite ----------------------------- */

template <class F>
AlgebraHandle<F> opposite(const AlgebraHandle<F>& a) {
    static std::mutex mu;  // guards the op_memo members of this instantiation
    {
        std::lock_guard<std::mutex> lk(mu);
        if (auto sp = a->op_memo.lock()) return sp;
    }
    auto out = std::make_shared<BasedAlgebra<F>>(a->field);
    out->dim = a->dim;
    out->nclasses = a->nclasses;
    out->names = a->names;
    out->idem = a->idem;
    out->radical = a->radical;
    out->grade.resize(a->dim);
    for (std::size_t k = 0; k < a->dim; ++k)
        out->grade[k] = {a->grade[k].second, a->grade[k].first};
    out->lmul.assign(a->dim, Matrix<F>(a->field, a->dim, a->dim));
    for (std::size_t i = 0; i < a->dim; ++i)
        for (std::size_t j = 0; j < a->dim; ++j) {
            auto col = a->lmul[j].col(i);  // b_j * b_i in A = b_i *op b_j
            for (std::size_t k = 0; k < a->dim; ++k) out->lmul[i](k, j) = col(k, 0);
        }
    if (a->quiver) {
        QuiverInfo qi;
        qi.vertices = a->quiver->vertices;
        for (const auto& ar : a->quiver->arrows) qi.arrows.push_back({ar.name, ar.tgt, ar.src});
        for (const auto& w : a->quiver->words) qi.words.emplace_back(w.rbegin(), w.rend());
        out->quiver = std::move(qi);
    }
    out->finalize();
    std::lock_guard<std::mutex> lk(mu);
    a->op_memo = out;
    out->op_memo = a;  // opposite of the opposite is the original
    return out;
}

/* ----------------------------- quotients ----------------------------- */

template <class F>
struct QuotientResult {
    AlgebraHandle<F> algebra;
    Matrix<F> projection;  // new coords of the image of each old basis element (dim' x dim)
    Matrix<F> section;     // old coords of each new basis element (dim x dim')
    std::vector<std::size_t> class_map;  // old class -> new class (SIZE_MAX if killed)
};

/* Quotient by a two-sided ideal given by spanning coordinate columns. */
template <class F>
QuotientResult<F> quotient_algebra(const AlgebraHandle<F>& a, const Matrix<F>& ideal_in) {
    const F f = a->field;
    const std::size_t d = a->dim;
    if (ideal_in.rows() != d) throw Error("quotient_algebra: bad ideal shape");
    auto ideal = column_space_basis(ideal_in);
    // closure under left/right multiplication by basis elements
    for (std::size_t c = 0; c < ideal.cols(); ++c)
        for (std::size_t k = 0; k < d; ++k) {
            auto v = ideal.col(c);
            if (!span_contains(ideal, a->mul(a->basis_elem(k), v)) ||
                !span_contains(ideal, a->mul(v, a->basis_elem(k))))
                throw NotAnIdeal("subspace is not a two-sided ideal");
        }

    std::vector<bool> is_rad(d, false);
    for (auto k : a->radical) is_rad[k] = true;

    // choose a complement basis blockwise: surviving idempotent first, then
    // radical basis elements, then the rest, greedily by independence
    std::vector<std::size_t> chosen;
    std::vector<std::size_t> class_map(a->nclasses, SIZE_MAX);
    std::vector<std::size_t> new_idem_old_index;
    Matrix<F> accum = ideal;  // grows with chosen elements
    auto try_add = [&](std::size_t k) {
        auto v = a->basis_elem(k);
        if (span_contains(accum, v)) return false;
        accum = Matrix<F>::hcat(accum, v);
        chosen.push_back(k);
        return true;
    };
    for (std::size_t t = 0; t < a->nclasses; ++t)
        for (std::size_t s = 0; s < a->nclasses; ++s) {
            const auto& blk = a->block[t][s];
            if (t == s) {
                if (try_add(a->idem[t])) new_idem_old_index.push_back(a->idem[t]);
            }
            for (auto k : blk)
                if (is_rad[k]) try_add(k);
            for (auto k : blk)
                if (!is_rad[k] && k != a->idem[t]) try_add(k);
        }
    std::sort(chosen.begin(), chosen.end());

    auto out = std::make_shared<BasedAlgebra<F>>(f);
    out->dim = chosen.size();
    // surviving classes, renumbered in original order
    std::size_t nc = 0;
    for (std::size_t i = 0; i < a->nclasses; ++i) {
        bool alive =
            std::find(chosen.begin(), chosen.end(), a->idem[i]) != chosen.end();
        if (alive) class_map[i] = nc++;
    }
    out->nclasses = nc;

    Matrix<F> chosen_mat(f, d, chosen.size());
    for (std::size_t k = 0; k < chosen.size(); ++k) chosen_mat(chosen[k], k) = f.one();
    auto red_system = Matrix<F>::hcat(ideal, chosen_mat);
    Matrix<F> projection(f, chosen.size(), d);
    for (std::size_t i = 0; i < d; ++i) {
        auto sol = solve_linear(red_system, a->basis_elem(i));
        if (!sol) throw Error("internal: quotient reduction failed");
        for (std::size_t k = 0; k < chosen.size(); ++k) projection(k, i) = (*sol)(ideal.cols() + k, 0);
    }

    for (std::size_t k = 0; k < chosen.size(); ++k) {
        std::size_t old = chosen[k];
        auto [t, s] = a->grade[old];
        if (class_map[t] == SIZE_MAX || class_map[s] == SIZE_MAX)
            throw Error("internal: surviving element in a killed block");
        out->grade.emplace_back(class_map[t], class_map[s]);
        out->names.push_back(a->names[old]);
        if (old == a->idem[t] && t == s)
            out->idem.push_back(k);
        else if (is_rad[old])
            out->radical.push_back(k);
        else if (span_contains(Matrix<F>::hcat(a->radical_span(), ideal), a->basis_elem(old)))
            out->radical.push_back(k);  // element became radical modulo the ideal
    }
    // order idempotents by class
    std::sort(out->idem.begin(), out->idem.end(),
              [&](std::size_t x, std::size_t y) { return out->grade[x].first < out->grade[y].first; });

    out->lmul.assign(out->dim, Matrix<F>(f, out->dim, out->dim));
    for (std::size_t i = 0; i < out->dim; ++i)
        for (std::size_t j = 0; j < out->dim; ++j) {
            auto prod = a->mul(a->basis_elem(chosen[i]), a->basis_elem(chosen[j]));
            auto red = projection * prod;
            for (std::size_t k = 0; k < out->dim; ++k) out->lmul[i](k, j) = red(k, 0);
        }
    if (a->quiver && ideal.cols() == 0) out->quiver = a->quiver;  // zero ideal keeps the presentation
    out->finalize();
    return QuotientResult<F>{out, std::move(projection), std::move(chosen_mat), std::move(class_map)};
}

/* radical of an algebra computed from scratch (used for endomorphism algebras
 * and as a cross-check); returns coordinate columns
 */
template <class F>
Matrix<F> algebra_radical(const BasedAlgebra<F>& a) {
    std::vector<Matrix<F>> rep = a.lmul;
    return matrix_algebra_radical(rep);
}

}  // namespace silt
