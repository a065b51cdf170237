#pragma once

#include "fhodge/linalg.hpp"

namespace fhodge {

/// Subspace of K^n stored by its canonical (reduced column echelon) basis, so
/// that equality of subspaces is equality of bases.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(ambient, 0) {}

    static Subspace span(const MatrixK& columns);
    static Subspace zero(std::size_t n) { return Subspace(n); }
    static Subspace full(std::size_t n) { return span(MatrixK::identity(n)); }
    /// span{e_i : i in idx}
    static Subspace coordinate(std::size_t n, const std::vector<std::size_t>& idx);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.cols(); }
    const MatrixK& basis() const { return basis_; }
    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient_; }

    bool contains(const MatrixK& vectors) const;
    bool contains(const Subspace& other) const;
    bool is_rational() const { return fhodge::is_rational(basis_); }
    Subspace conj() const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    std::size_t ambient_ = 0;
    MatrixK basis_;
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
/// f(a) for f : K^a.ambient -> K^m
Subspace image(const MatrixK& f, const Subspace& a);
Subspace image(const MatrixK& f);
/// f^{-1}(b) for f : K^n -> K^b.ambient
Subspace preimage(const MatrixK& f, const Subspace& b);
Subspace kernel(const MatrixK& f);
/// Functionals (as column vectors) vanishing on a: {phi : phi^T x = 0 for x in a}.
Subspace annihilator(const Subspace& a);
/// Pivot-deterministic complement: the standard basis vectors at the non-pivot
/// positions of a's echelon form. Reverse order scans pivots from the last index.
Subspace complement(const Subspace& a, PivotOrder order = PivotOrder::Forward);
/// A complement of b inside a (b must be contained in a): canonical basis
/// vectors of a added in order while independent of b.
Subspace complement_within(const Subspace& a, const Subspace& b);

/// Coordinates on K^n / a relative to a chosen complement.
struct QuotientMap {
    MatrixK section;  // n x m, basis of the complement (lifts of the quotient basis)
    MatrixK project;  // m x n, project * a.basis = 0, project * section = I
    std::size_t dim() const { return section.cols(); }
};

QuotientMap quotient_map(const Subspace& a, PivotOrder order = PivotOrder::Forward);

/// Coordinates of vectors (columns) in the basis of a; throws NotContained.
MatrixK coordinates(const Subspace& a, const MatrixK& vectors);

/// Coordinates of the induced map K^n/a -> K^m/b given f with f(a) ⊆ b.
MatrixK induced_on_quotients(const MatrixK& f, const QuotientMap& src, const QuotientMap& dst);

}  // namespace fhodge
