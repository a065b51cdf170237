#include "fhodge/matrix.hpp"

#include "fhodge/linalg.hpp"

namespace fhodge {

MatrixK to_k(const IntMatrix& m) {
    MatrixK k(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) k(i, j) = Scalar(m(i, j));
    return k;
}

MatrixK to_k(const MatrixQ& m) {
    MatrixK k(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) k(i, j) = Scalar(m(i, j));
    return k;
}

MatrixQ to_q(const IntMatrix& m) {
    MatrixQ q(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rational(m(i, j));
    return q;
}

MatrixK conj(const MatrixK& m) {
    MatrixK c(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = m(i, j).conj();
    return c;
}

MatrixQ real_part(const MatrixK& m) {
    MatrixQ q(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = m(i, j).re();
    return q;
}

MatrixQ imag_part(const MatrixK& m) {
    MatrixQ q(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = m(i, j).im();
    return q;
}

bool is_rational(const MatrixK& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_rational()) return false;
    return true;
}

bool is_integral(const MatrixK& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_integer()) return false;
    return true;
}

bool is_integral(const MatrixQ& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j).get_den() != 1) return false;
    return true;
}

MatrixQ as_rational(const MatrixK& m) {
    if (!is_rational(m)) throw Error(Errc::NotRationalSubspace, "matrix has non-rational entries");
    return real_part(m);
}

IntMatrix as_integer(const MatrixK& m) {
    if (!is_integral(m)) throw Error(Errc::Malformed, "matrix has non-integral entries");
    IntMatrix z(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) z(i, j) = m(i, j).re().get_num();
    return z;
}

IntMatrix as_integer(const MatrixQ& m) {
    if (!is_integral(m)) throw Error(Errc::Malformed, "matrix has non-integral entries");
    IntMatrix z(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) z(i, j) = m(i, j).get_num();
    return z;
}

MatrixQ realify_vectors(const MatrixK& m) { return vcat(real_part(m), imag_part(m)); }

MatrixQ realify_span(const MatrixK& basis) {
    MatrixK times_i = basis * Scalar::i();
    return canonical_basis(hcat(realify_vectors(basis), realify_vectors(times_i)));
}

}  // namespace fhodge
