#pragma once

#include <vector>

#include "silt/poly.hpp"

namespace silt {

/* Jacobson radical of a matrix algebra, given a faithful representation of a
 * basis. Input: rep[k] is the n x n matrix of the k-th basis element. Output:
 * columns of coefficient vectors (in that basis) spanning rad.
 *
 * char 0: radical of the trace form tr(rep(x) rep(y))  (Dickson).
 * char p: descending chain cutting by the forms e_{p^k}(rep(x) rep(y)) for
 * p^k <= n, where e_m is the m-th elementary symmetric function of the
 * eigenvalues, read off the characteristic polynomial (Friedl-Ronyai). Each
 * cut is linear in x on the previous stage over the prime field.
 */
template <class F>
Matrix<F> matrix_algebra_radical(const std::vector<Matrix<F>>& rep) {
    if (rep.empty()) throw Error("matrix_algebra_radical: empty basis");
    const F f = rep[0].field();
    const std::size_t d = rep.size();
    const std::size_t n = rep[0].rows();

    auto trace = [&](const Matrix<F>& m) {
        auto t = f.zero();
        for (std::size_t i = 0; i < m.rows(); ++i) t = f.add(t, m(i, i));
        return t;
    };

    // current stage: columns = coefficient vectors of a basis of S_k
    Matrix<F> stage = Matrix<F>::identity(f, d);
    auto stage_rep = [&](std::size_t j) {
        Matrix<F> m(f, n, n);
        for (std::size_t k = 0; k < d; ++k) {
            if (f.is_zero(stage(k, j))) continue;
            m = m + rep[k].scaled(stage(k, j));
        }
        return m;
    };

    std::size_t kmax = 0;
    if (f.characteristic() != 0) {
        std::uint64_t pk = f.characteristic();
        while (pk <= n) {
            ++kmax;
            pk *= f.characteristic();
        }
    }

    for (std::size_t k = 0; k <= (f.characteristic() == 0 ? 0 : kmax); ++k) {
        std::size_t s = stage.cols();
        if (s == 0) break;
        std::vector<Matrix<F>> mats(s, Matrix<F>(f, n, n));
        for (std::size_t j = 0; j < s; ++j) mats[j] = stage_rep(j);
        std::size_t m = (f.characteristic() == 0) ? 1 : [&] {
            std::uint64_t pk = 1;
            for (std::size_t i = 0; i < k; ++i) pk *= f.characteristic();
            return static_cast<std::size_t>(pk);
        }();
        Matrix<F> gram(f, s, s);
        for (std::size_t a = 0; a < s; ++a)
            for (std::size_t b = 0; b < s; ++b) {
                auto prod = mats[a] * mats[b];
                if (m == 1)
                    gram(a, b) = trace(prod);
                else
                    gram(a, b) = elem_symmetric(char_poly(prod), n, m);
            }
        auto ker = nullspace(gram.transpose());  // x with B(x, y) = 0 for all y in stage
        stage = stage * ker;
    }
    return column_space_basis(stage);
}

}  // namespace silt
