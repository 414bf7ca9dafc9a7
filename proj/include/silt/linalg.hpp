#pragma once

#include <optional>
#include <vector>

#include "silt/matrix.hpp"

namespace silt {

/* Exact elimination. Over F_p we run plain Gauss-Jordan; over Q the forward
 * pass is fraction-free (Bareiss) on denominator-cleared integer rows, and
 * only the final normalization returns to rationals. Pivots are chosen as the
 * first nonzero entry in column order, so all derived bases are deterministic.
 */

template <class F>
struct Echelon {
    Matrix<F> rref;
    std::vector<std::size_t> pivots;  // pivot column of row i
    std::size_t rank = 0;
};

namespace detail {

template <class F>
Echelon<F> rref_generic(Matrix<F> a) {
    const F& f = a.field();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t sel = r;
        while (sel < a.rows() && f.is_zero(a(sel, c))) ++sel;
        if (sel == a.rows()) continue;
        if (sel != r) a.swap_rows(sel, r);
        auto piv_inv = f.inv(a(r, c));
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = f.mul(piv_inv, a(r, j));
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || f.is_zero(a(i, c))) continue;
            auto m = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                a(i, j) = f.sub(a(i, j), f.mul(m, a(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return Echelon<F>{std::move(a), std::move(pivots), r};
}

/* Bareiss forward elimination on integer rows, then rational normalization. */
inline Echelon<RationalField> rref_rational(const Matrix<RationalField>& a) {
    const RationalField f = a.field();
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<std::vector<mpz_class>> w(m, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < m; ++i) {
        mpz_class l(1);
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den().get_mpz_t());
        for (std::size_t j = 0; j < n; ++j) {
            mpq_class q = a(i, j) * l;
            w[i][j] = q.get_num();  // denominator is 1 after scaling
        }
    }
    std::vector<std::size_t> pivots;
    mpz_class prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t sel = r;
        while (sel < m && w[sel][c] == 0) ++sel;
        if (sel == m) continue;
        if (sel != r) std::swap(w[sel], w[r]);
        for (std::size_t i = r + 1; i < m; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) {
                mpz_class t = w[r][c] * w[i][j] - w[i][c] * w[r][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                w[i][j] = t;
            }
            w[i][c] = 0;
        }
        prev = w[r][c];
        pivots.push_back(c);
        ++r;
    }
    // back-substitute to reduced form over Q
    Matrix<RationalField> out(f, m, n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = mpq_class(w[i][j]);
    for (std::size_t i = r; i-- > 0;) {
        std::size_t pc = pivots[i];
        mpq_class piv = out(i, pc);
        for (std::size_t j = pc; j < n; ++j) out(i, j) /= piv;
        for (std::size_t k = 0; k < i; ++k) {
            mpq_class c = out(k, pc);
            if (sgn(c) == 0) continue;
            for (std::size_t j = pc; j < n; ++j) out(k, j) -= c * out(i, j);
        }
    }
    return Echelon<RationalField>{std::move(out), std::move(pivots), r};
}

/* bit-packed Gauss-Jordan over F_2; the workhorse for the default field */
inline Echelon<PrimeField> rref_f2(const Matrix<PrimeField>& a) {
    const std::size_t m = a.rows(), n = a.cols(), w = (n + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows(m, std::vector<std::uint64_t>(w, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (a(i, j)) rows[i][j >> 6] |= (1ull << (j & 63));
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        const std::size_t word = c >> 6;
        const std::uint64_t bit = 1ull << (c & 63);
        std::size_t sel = r;
        while (sel < m && !(rows[sel][word] & bit)) ++sel;
        if (sel == m) continue;
        if (sel != r) std::swap(rows[sel], rows[r]);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || !(rows[i][word] & bit)) continue;
            for (std::size_t k = word; k < w; ++k) rows[i][k] ^= rows[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    Matrix<PrimeField> out(a.field(), m, n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (rows[i][j >> 6] & (1ull << (j & 63))) out(i, j) = 1;
    return Echelon<PrimeField>{std::move(out), std::move(pivots), r};
}

}  // namespace detail

template <class F>
Echelon<F> rref(const Matrix<F>& a) {
    if constexpr (F::is_rational) {
        return detail::rref_rational(a);
    } else {
        if (a.field().modulus() == 2) return detail::rref_f2(a);
        return detail::rref_generic(a);
    }
}

template <class F>
std::size_t rank(const Matrix<F>& a) {
    return rref(a).rank;
}

/* Some X with A X = B, or nullopt. When underdetermined, free variables are 0. */
template <class F>
std::optional<Matrix<F>> solve_linear(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.field() != b.field()) throw FieldMismatch("solve_linear: field mismatch");
    if (a.rows() != b.rows()) throw Error("solve_linear: row mismatch");
    auto e = rref(Matrix<F>::hcat(a, b));
    const F& f = a.field();
    for (std::size_t i = 0; i < e.rank; ++i)
        if (e.pivots[i] >= a.cols()) return std::nullopt;
    Matrix<F> x(f, a.cols(), b.cols());
    for (std::size_t i = 0; i < e.rank; ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[i], j) = e.rref(i, a.cols() + j);
    return x;
}

/* Columns form a basis of ker(A); canonical (unit free variables, RREF order). */
template <class F>
Matrix<F> nullspace(const Matrix<F>& a) {
    auto e = rref(a);
    const F& f = a.field();
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::size_t nfree = a.cols() - e.rank;
    Matrix<F> n(f, a.cols(), nfree);
    std::size_t k = 0;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        if (is_pivot[c]) continue;
        n(c, k) = f.one();
        for (std::size_t i = 0; i < e.rank; ++i) n(e.pivots[i], k) = f.neg(e.rref(i, c));
        ++k;
    }
    return n;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    if (rank(a) != a.rows()) return std::nullopt;
    return solve_linear(a, Matrix<F>::identity(a.field(), a.rows()));
}

template <class F>
bool is_invertible(const Matrix<F>& a) {
    return a.rows() == a.cols() && rank(a) == a.rows();
}

/* ---- subspaces, given by matrices whose columns span ---- */

/* canonical basis of the column space (RREF of the transpose, transposed) */
template <class F>
Matrix<F> column_space_basis(const Matrix<F>& a) {
    auto e = rref(a.transpose());
    Matrix<F> b(a.field(), a.rows(), e.rank);
    for (std::size_t i = 0; i < e.rank; ++i)
        for (std::size_t j = 0; j < a.rows(); ++j) b(j, i) = e.rref(i, j);
    return b;
}

template <class F>
bool span_contains(const Matrix<F>& span, const Matrix<F>& vecs) {
    return rank(span) == rank(Matrix<F>::hcat(span, vecs));
}

template <class F>
Matrix<F> span_sum(const Matrix<F>& a, const Matrix<F>& b) {
    return column_space_basis(Matrix<F>::hcat(a, b));
}

/* basis of colspace(a) n colspace(b) */
template <class F>
Matrix<F> span_intersect(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.cols() == 0 || b.cols() == 0) return Matrix<F>(a.field(), a.rows(), 0);
    auto n = nullspace(Matrix<F>::hcat(a, -b));
    Matrix<F> coeff_a = n.submatrix(0, 0, a.cols(), n.cols());
    return column_space_basis(a * coeff_a);
}

}  // namespace silt
