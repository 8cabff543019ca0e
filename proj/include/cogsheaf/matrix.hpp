#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cogsheaf/errors.hpp"
#include "cogsheaf/field.hpp"

namespace cogsheaf {

/// Dense matrix over an exact field F (RationalField or PrimeField).
/// Entries are stored row-major and kept in the field's canonical form, so
/// operator== is a decidable entrywise comparison.
template <typename F>
class Matrix {
public:
    using Field = F;
    using Elem = typename F::Elem;

    /// Zero matrix of the given shape.
    Matrix(F field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols),
          entries_(rows * cols, field_.zero()) {}

    static Matrix identity(F field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = m.field_.one();
        return m;
    }

    /// Convenience builder for literal integer matrices, mainly in tests and
    /// fixtures.
    static Matrix from_ints(F field, std::initializer_list<std::initializer_list<long>> rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.begin()->size();
        Matrix m(field, r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw DimensionError("ragged matrix literal");
            std::size_t j = 0;
            for (long v : row) m(i, j++) = m.field_.from_long(v);
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const F& field() const { return field_; }

    const Elem& operator()(std::size_t r, std::size_t c) const {
        check_index(r, c);
        return entries_[r * cols_ + c];
    }

    Elem& operator()(std::size_t r, std::size_t c) {
        check_index(r, c);
        return entries_[r * cols_ + c];
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!field_.eq((*this)(i, j), i == j ? field_.one() : field_.zero()))
                    return false;
        return true;
    }

    bool is_square() const { return rows_ == cols_; }

    std::string str() const {
        std::ostringstream out;
        out << '[';
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i) out << "; ";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) out << ' ';
                out << field_.str((*this)(i, j));
            }
        }
        out << ']';
        return out.str();
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.field_ != b.field_ || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t k = 0; k < a.entries_.size(); ++k)
            if (!a.field_.eq(a.entries_[k], b.entries_[k])) return false;
        return true;
    }

    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    void check_index(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_)
            throw DimensionError("matrix index (" + std::to_string(r) + "," + std::to_string(c) +
                                 ") out of range for " + std::to_string(rows_) + "x" +
                                 std::to_string(cols_));
    }

    F field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Elem> entries_;
};

/// Exact matrix product.  Skips zero entries of the left factor, which makes
/// products of permutation-like matrices cheap.
template <typename F>
Matrix<F> mat_mul(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.field() != b.field())
        throw FieldMismatchError("matrix product across different fields");
    if (a.cols() != b.rows())
        throw DimensionError("matrix product shape mismatch: " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " times " + std::to_string(b.rows()) +
                             "x" + std::to_string(b.cols()));
    const F& f = a.field();
    Matrix<F> c(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const auto& aik = a(i, k);
            if (f.is_zero(aik)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const auto& bkj = b(k, j);
                if (f.is_zero(bkj)) continue;
                c(i, j) = f.add(c(i, j), f.mul(aik, bkj));
            }
        }
    return c;
}

template <typename F>
Matrix<F> operator*(const Matrix<F>& a, const Matrix<F>& b) {
    return mat_mul(a, b);
}

/// Exact inverse by Gauss-Jordan elimination on [A | I].  Entries stay in the
/// field's canonical form after each pivot (GMP keeps rationals in lowest
/// terms), so intermediate values never drift from normal form.  Returns
/// nullopt when A is not square or its rank is below its size.
template <typename F>
std::optional<Matrix<F>> mat_inverse_opt(const Matrix<F>& a) {
    if (!a.is_square()) return std::nullopt;
    const F& f = a.field();
    const std::size_t n = a.rows();
    Matrix<F> work = a;
    Matrix<F> inv = Matrix<F>::identity(f, n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && f.is_zero(work(pivot, col))) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(work(pivot, j), work(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        }
        const auto scale = f.inv(work(col, col));
        for (std::size_t j = 0; j < n; ++j) {
            work(col, j) = f.mul(work(col, j), scale);
            inv(col, j) = f.mul(inv(col, j), scale);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || f.is_zero(work(r, col))) continue;
            const auto factor = work(r, col);
            for (std::size_t j = 0; j < n; ++j) {
                work(r, j) = f.sub(work(r, j), f.mul(factor, work(col, j)));
                inv(r, j) = f.sub(inv(r, j), f.mul(factor, inv(col, j)));
            }
        }
    }
    return inv;
}

template <typename F>
Matrix<F> mat_inverse(const Matrix<F>& a) {
    if (!a.is_square())
        throw DimensionError("inverse of a non-square " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " matrix");
    auto inv = mat_inverse_opt(a);
    if (!inv) throw SingularMatrixError("matrix of size " + std::to_string(a.rows()) + " is singular");
    return *inv;
}

template <typename F>
bool is_invertible(const Matrix<F>& a) {
    return a.is_square() && mat_inverse_opt(a).has_value();
}

} // namespace cogsheaf
