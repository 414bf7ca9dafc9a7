#pragma once

#include <cstddef>
#include <vector>

#include "silt/errors.hpp"
#include "silt/field.hpp"

namespace silt {

/* Dense matrix over a field F. 0xn and nx0 matrices are legal and act as zero
 * maps. Row-major storage. All arithmetic is exact.
 */
template <class F>
class Matrix {
public:
    using Elem = typename F::Elem;

    Matrix(F f, std::size_t rows, std::size_t cols)
        : f_(f), rows_(rows), cols_(cols), data_(rows * cols, f.zero()) {}

    static Matrix identity(F f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
        return m;
    }

    const F& field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Elem& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& e : data_)
            if (!f_.is_zero(e)) return false;
        return true;
    }

    bool operator==(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_ || f_ != o.f_) return false;
        for (std::size_t k = 0; k < data_.size(); ++k)
            if (!f_.eq(data_[k], o.data_[k])) return false;
        return true;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o);
        Matrix r(f_, rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = f_.add(data_[k], o.data_[k]);
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        check_same_shape(o);
        Matrix r(f_, rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = f_.sub(data_[k], o.data_[k]);
        return r;
    }
    Matrix operator-() const {
        Matrix r(f_, rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = f_.neg(data_[k]);
        return r;
    }
    Matrix operator*(const Matrix& o) const {
        if (f_ != o.f_) throw FieldMismatch("matrix product: field mismatch");
        if (cols_ != o.rows_) throw Error("matrix product: shape mismatch");
        Matrix r(f_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Elem& a = (*this)(i, k);
                if (f_.is_zero(a)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r(i, j) = f_.add(r(i, j), f_.mul(a, o(k, j)));
            }
        return r;
    }
    Matrix scaled(const Elem& c) const {
        Matrix r(f_, rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = f_.mul(c, data_[k]);
        return r;
    }

    Matrix transpose() const {
        Matrix r(f_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Matrix r(f_, nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
        return r;
    }

    Matrix col(std::size_t j) const { return submatrix(0, j, rows_, 1); }
    Matrix row(std::size_t i) const { return submatrix(i, 0, 1, cols_); }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    static Matrix hcat(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_) throw Error("hcat: row mismatch");
        Matrix r(a.f_, a.rows_, a.cols_ + b.cols_);
        r.set_block(0, 0, a);
        r.set_block(0, a.cols_, b);
        return r;
    }
    static Matrix vcat(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.cols_) throw Error("vcat: col mismatch");
        Matrix r(a.f_, a.rows_ + b.rows_, a.cols_);
        r.set_block(0, 0, a);
        r.set_block(a.rows_, 0, b);
        return r;
    }

    /* block diagonal sum */
    static Matrix dsum(const Matrix& a, const Matrix& b) {
        Matrix r(a.f_, a.rows_ + b.rows_, a.cols_ + b.cols_);
        r.set_block(0, 0, a);
        r.set_block(a.rows_, a.cols_, b);
        return r;
    }

    void swap_rows(std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }

    /* flatten row-major into a single column */
    Matrix vec() const {
        Matrix r(f_, rows_ * cols_, 1);
        for (std::size_t k = 0; k < data_.size(); ++k) r(k, 0) = data_[k];
        return r;
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (f_ != o.f_) throw FieldMismatch("matrix op: field mismatch");
        if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix op: shape mismatch");
    }

    F f_;
    std::size_t rows_, cols_;
    std::vector<Elem> data_;
};

}  // namespace silt
