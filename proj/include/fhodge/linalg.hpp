#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fhodge/matrix.hpp"

namespace fhodge {

enum class PivotOrder { Forward, Reverse };

template <typename T>
struct Echelon {
    Matrix<T> reduced;                // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots;  // pivot column per row
};

/// Reduced row echelon form. Pivot search runs over columns in the given order
/// and picks the lowest row index with a nonzero entry.
template <typename T>
Echelon<T> rref(Matrix<T> m, PivotOrder order = PivotOrder::Forward) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t step = 0; step < cols && r < rows; ++step) {
        std::size_t c = order == PivotOrder::Forward ? step : cols - 1 - step;
        std::size_t p = r;
        while (p < rows && is_zero(m(p, c))) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
        T inv = inverse(m(r, c));
        for (std::size_t j = 0; j < cols; ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            T f = m(i, c);
            for (std::size_t j = 0; j < cols; ++j)
                if (!is_zero(m(r, j))) sub_product(m(i, j), f, m(r, j));
        }
        pivots.push_back(c);
        ++r;
    }
    return {m.block(0, 0, r, cols), std::move(pivots)};
}

template <typename T>
std::size_t rank(const Matrix<T>& m) {
    return rref(m).pivots.size();
}

/// Canonical basis of the column span: columns of the transposed RREF of the
/// transposed matrix (reduced column echelon form).
template <typename T>
Matrix<T> canonical_basis(const Matrix<T>& cols, PivotOrder order = PivotOrder::Forward) {
    auto e = rref(cols.transpose(), order);
    if (e.pivots.empty()) return Matrix<T>(cols.rows(), 0);
    return e.reduced.transpose();
}

/// Basis of {x : m x = 0} in canonical form.
template <typename T>
Matrix<T> kernel_basis(const Matrix<T>& m) {
    auto e = rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) free.push_back(j);
    Matrix<T> k(n, free.size());
    for (std::size_t f = 0; f < free.size(); ++f) {
        k(free[f], f) = T(1);
        for (std::size_t r = 0; r < e.pivots.size(); ++r) k(e.pivots[r], f) = -e.reduced(r, free[f]);
    }
    return canonical_basis(k);
}

/// One solution of m x = y (free variables set to zero), or nullopt.
template <typename T>
std::optional<Matrix<T>> solve(const Matrix<T>& m, const Matrix<T>& y) {
    if (m.rows() != y.rows()) throw Error(Errc::DimensionMismatch, "solve: rhs row mismatch");
    const std::size_t n = m.cols();
    auto e = rref(hcat(m, y));
    Matrix<T> x(n, y.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] >= n) return std::nullopt;
        for (std::size_t j = 0; j < y.cols(); ++j) x(e.pivots[r], j) = e.reduced(r, n + j);
    }
    return x;
}

template <typename T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    if (rank(m) != m.rows()) return std::nullopt;
    return solve(m, Matrix<T>::identity(m.rows()));
}

template <typename T>
bool is_invertible(const Matrix<T>& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

template <typename T>
Matrix<T> inverse_or_throw(const Matrix<T>& m, const char* what) {
    auto inv = inverse(m);
    if (!inv) throw Error(Errc::InternalError, std::string("singular matrix: ") + what);
    return *inv;
}

/// Solve and throw InternalError when no solution exists.
template <typename T>
Matrix<T> solve_or_throw(const Matrix<T>& m, const Matrix<T>& y, const char* what) {
    auto x = solve(m, y);
    if (!x) throw Error(Errc::InternalError, std::string("no solution: ") + what);
    return *x;
}

}  // namespace fhodge
