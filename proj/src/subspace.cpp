#include "fhodge/subspace.hpp"

#include <algorithm>

namespace fhodge {

Subspace Subspace::span(const MatrixK& columns) {
    Subspace s(columns.rows());
    s.basis_ = canonical_basis(columns);
    return s;
}

Subspace Subspace::coordinate(std::size_t n, const std::vector<std::size_t>& idx) {
    MatrixK b(n, idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) b(idx[k], k) = 1;
    return span(b);
}

bool Subspace::contains(const MatrixK& vectors) const {
    if (vectors.rows() != ambient_) throw Error(Errc::AmbientMismatch, "contains: ambient mismatch");
    if (vectors.cols() == 0) return true;
    return rank(hcat(basis_, vectors)) == dim();
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw Error(Errc::AmbientMismatch, "contains: ambient mismatch");
    return contains(other.basis_);
}

Subspace Subspace::conj() const {
    return span(fhodge::conj(basis_));
}

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw Error(Errc::AmbientMismatch, "sum: ambient mismatch");
    return Subspace::span(hcat(a.basis(), b.basis()));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw Error(Errc::AmbientMismatch, "intersect: ambient mismatch");
    if (a.is_zero() || b.is_zero()) return Subspace(a.ambient());
    // x = A y = B z  <=>  [A | -B] (y; z) = 0
    MatrixK k = kernel_basis(hcat(a.basis(), -b.basis()));
    return Subspace::span(a.basis() * k.block(0, 0, a.dim(), k.cols()));
}

Subspace image(const MatrixK& f, const Subspace& a) {
    if (f.cols() != a.ambient()) throw Error(Errc::AmbientMismatch, "image: ambient mismatch");
    return Subspace::span(f * a.basis());
}

Subspace image(const MatrixK& f) { return Subspace::span(f); }

Subspace preimage(const MatrixK& f, const Subspace& b) {
    if (f.rows() != b.ambient()) throw Error(Errc::AmbientMismatch, "preimage: ambient mismatch");
    // f x in b  <=>  q f x = 0 for any q with kernel b
    QuotientMap q = quotient_map(b);
    return kernel(q.project * f);
}

Subspace kernel(const MatrixK& f) {
    return Subspace::span(kernel_basis(f));
}

Subspace annihilator(const Subspace& a) {
    if (a.is_zero()) return Subspace::full(a.ambient());
    return kernel(a.basis().transpose());
}

Subspace complement(const Subspace& a, PivotOrder order) {
    auto e = rref(a.basis().transpose(), order);
    std::vector<bool> pivot(a.ambient(), false);
    for (auto p : e.pivots) pivot[p] = true;
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < a.ambient(); ++j)
        if (!pivot[j]) idx.push_back(j);
    return Subspace::coordinate(a.ambient(), idx);
}

Subspace complement_within(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw Error(Errc::AmbientMismatch, "complement_within: ambient mismatch");
    if (!a.contains(b)) throw Error(Errc::NotContained, "complement_within: b is not contained in a");
    MatrixK acc = b.basis();
    MatrixK chosen(a.ambient(), 0);
    std::size_t r = b.dim();
    for (std::size_t j = 0; j < a.dim() && r < a.dim(); ++j) {
        MatrixK trial = hcat(acc, a.basis().column(j));
        if (rank(trial) > r) {
            acc = trial;
            chosen = hcat(chosen, a.basis().column(j));
            ++r;
        }
    }
    return Subspace::span(chosen);
}

QuotientMap quotient_map(const Subspace& a, PivotOrder order) {
    Subspace c = complement(a, order);
    // section columns are standard basis vectors; keep them in index order
    MatrixK section = c.basis();
    MatrixK full = hcat(a.basis(), section);
    MatrixK inv = inverse_or_throw(full, "quotient_map");
    MatrixK project = inv.block(a.dim(), 0, section.cols(), a.ambient());
    return {section, project};
}

MatrixK coordinates(const Subspace& a, const MatrixK& vectors) {
    if (vectors.rows() != a.ambient()) throw Error(Errc::AmbientMismatch, "coordinates: ambient mismatch");
    auto x = solve(a.basis(), vectors);
    if (!x) throw Error(Errc::NotContained, "coordinates: vectors not in subspace");
    return *x;
}

MatrixK induced_on_quotients(const MatrixK& f, const QuotientMap& src, const QuotientMap& dst) {
    return dst.project * f * src.section;
}

}  // namespace fhodge
