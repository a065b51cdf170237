#include "fhodge/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "fhodge/linalg.hpp"

namespace fhodge {

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_dst -= q * row_src
void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(src, j) != 0) m(dst, j) -= q * m(src, j);
}

// col_dst -= q * col_src
void col_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (m(i, src) != 0) m(i, dst) -= q * m(i, src);
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer trunc_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer floor_mod(const Integer& a, const Integer& b) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);
    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
        bool found = false;
        for (;;) {
            // smallest nonzero entry of the trailing block
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a(i, j) != 0 && (pi == rows || abs(a(i, j)) < abs(a(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows) break;
            found = true;
            swap_rows(a, t, pi);
            swap_rows(u, t, pi);
            swap_cols(a, t, pj);
            swap_cols(v, t, pj);

            bool changed = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a(i, t) == 0) continue;
                Integer q = trunc_div(a(i, t), a(t, t));
                row_axpy(a, i, t, q);
                row_axpy(u, i, t, q);
                if (a(i, t) != 0) changed = true;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a(t, j) == 0) continue;
                Integer q = trunc_div(a(t, j), a(t, t));
                col_axpy(a, j, t, q);
                col_axpy(v, j, t, q);
                if (a(t, j) != 0) changed = true;
            }
            if (changed) continue;

            bool fixed = false;
            for (std::size_t i = t + 1; i < rows && !fixed; ++i)
                for (std::size_t j = t + 1; j < cols && !fixed; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        row_axpy(a, t, i, Integer(-1));
                        row_axpy(u, t, i, Integer(-1));
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (!found) break;
        if (a(t, t) < 0) {
            for (std::size_t j = 0; j < cols; ++j) a(t, j) = -a(t, j);
            for (std::size_t j = 0; j < rows; ++j) u(t, j) = -u(t, j);
        }
    }
    return {std::move(u), std::move(a), std::move(v), t};
}

IntMatrix hermite_rows(IntMatrix m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        bool pivot = false;
        for (;;) {
            std::size_t p = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (m(i, c) != 0 && (p == rows || abs(m(i, c)) < abs(m(p, c)))) p = i;
            if (p == rows) break;
            pivot = true;
            swap_rows(m, r, p);
            bool done = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (m(i, c) == 0) continue;
                row_axpy(m, i, r, floor_div(m(i, c), m(r, c)));
                if (m(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (!pivot) continue;
        if (m(r, c) < 0)
            for (std::size_t j = 0; j < cols; ++j) m(r, j) = -m(r, j);
        for (std::size_t i = 0; i < r; ++i) row_axpy(m, i, r, floor_div(m(i, c), m(r, c)));
        ++r;
    }
    return m.block(0, 0, r, cols);
}

IntMatrix lattice_basis(const IntMatrix& gens) {
    IntMatrix h = hermite_rows(gens.transpose());
    if (h.rows() == 0) return IntMatrix(gens.rows(), 0);
    return h.transpose();
}

IntMatrix integer_kernel(const IntMatrix& m) {
    const std::size_t n = m.cols();
    if (m.rows() == 0) return IntMatrix::identity(n);
    SmithForm s = smith_normal_form(m);
    std::vector<std::size_t> idx;
    for (std::size_t j = s.rank; j < n; ++j) idx.push_back(j);
    return lattice_basis(s.v.select_cols(idx));
}

IntMatrix integer_kernel(const MatrixQ& full) {
    // same kernel, fewer rows for the Smith form
    MatrixQ m = rref(full).reduced;
    IntMatrix z(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rational q = m(i, j) * l;
            z(i, j) = q.get_num();
        }
    }
    return integer_kernel(z);
}

IntMatrix saturated_basis(const MatrixQ& columns) {
    const std::size_t n = columns.rows();
    if (columns.cols() == 0 || rank(columns) == 0) return IntMatrix(n, 0);
    MatrixQ ann = kernel_basis(columns.transpose());  // n x (n - dim)
    if (ann.cols() == 0) return IntMatrix::identity(n);
    return integer_kernel(ann.transpose());
}

std::optional<IntMatrix> integer_solve(const IntMatrix& basis, const IntMatrix& y) {
    if (basis.cols() == 0) {
        if (!y.is_zero()) return std::nullopt;
        return IntMatrix(0, y.cols());
    }
    auto x = solve(to_q(basis), to_q(y));
    if (!x) return std::nullopt;
    if (!(to_q(basis) * *x == to_q(y))) return std::nullopt;
    if (!is_integral(*x)) return std::nullopt;
    return as_integer(*x);
}

bool lattice_contains(const IntMatrix& basis, const IntMatrix& vectors) {
    return integer_solve(basis, vectors).has_value();
}

std::optional<IntMatrix> unimodular_inverse(const IntMatrix& u) {
    auto inv = inverse(to_q(u));
    if (!inv || !is_integral(*inv)) return std::nullopt;
    return as_integer(*inv);
}

bool is_unimodular(const IntMatrix& u) { return unimodular_inverse(u).has_value(); }

IntMatrix unimodular_completion(const IntMatrix& saturated) {
    const std::size_t n = saturated.rows(), k = saturated.cols();
    if (k == 0) return IntMatrix::identity(n);
    SmithForm s = smith_normal_form(saturated);
    for (std::size_t i = 0; i < k; ++i)
        if (s.d(i, i) != 1) throw Error(Errc::InternalError, "unimodular_completion: basis not saturated");
    auto uinv = unimodular_inverse(s.u);
    if (!uinv) throw Error(Errc::InternalError, "unimodular_completion: u not unimodular");
    return uinv->block(0, k, n, n - k);
}

FgAbGroup::FgAbGroup(std::size_t rank, std::vector<Integer> torsion) : rank_(rank), torsion_(std::move(torsion)) {
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        if (torsion_[i] < 2) throw Error(Errc::Malformed, "invariant factors must be >= 2");
        if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
            throw Error(Errc::Malformed, "invariant factors must divide in sequence");
    }
}

IntMatrix FgAbGroup::relations() const {
    IntMatrix r(ngens(), torsion_.size());
    for (std::size_t j = 0; j < torsion_.size(); ++j) r(rank_ + j, j) = torsion_[j];
    return r;
}

IntMatrix FgAbGroup::reduce(IntMatrix elements) const {
    if (elements.rows() != ngens()) throw Error(Errc::DimensionMismatch, "reduce: wrong number of coordinates");
    for (std::size_t j = 0; j < torsion_.size(); ++j)
        for (std::size_t c = 0; c < elements.cols(); ++c)
            elements(rank_ + j, c) = floor_mod(elements(rank_ + j, c), torsion_[j]);
    return elements;
}

LatticeMap::LatticeMap(FgAbGroup source, FgAbGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.ngens() || matrix_.cols() != source_.ngens())
        throw Error(Errc::DimensionMismatch, "lattice map shape does not match groups");
    // d * f(torsion generator) must be a relation of the target
    for (std::size_t j = 0; j < source_.torsion().size(); ++j) {
        IntMatrix col = matrix_.column(source_.rank() + j) * Integer(source_.torsion()[j]);
        if (!lattice_contains(lattice_basis(target_.relations()), col))
            throw Error(Errc::NotWellDefined, "lattice map is not well defined on torsion");
    }
    matrix_ = target_.reduce(matrix_);
}

LatticeMap LatticeMap::identity(const FgAbGroup& g) { return LatticeMap(g, g, IntMatrix::identity(g.ngens())); }

LatticeMap LatticeMap::zero(const FgAbGroup& s, const FgAbGroup& t) {
    return LatticeMap(s, t, IntMatrix(t.ngens(), s.ngens()));
}

MatrixQ LatticeMap::rational() const { return to_q(matrix_.block(0, 0, target_.rank(), source_.rank())); }

LatticeMap compose(const LatticeMap& g, const LatticeMap& f) {
    if (!(f.target() == g.source())) throw Error(Errc::NotComposable, "lattice maps not composable");
    return LatticeMap(f.source(), g.target(), g.matrix() * f.matrix());
}

IntMatrix Subquotient::coordinates_of(const IntMatrix& x) const {
    auto y = integer_solve(pbasis, x);
    if (!y) throw Error(Errc::NotContained, "subquotient: vector outside the subgroup");
    return group.reduce(coord * *y);
}

Subquotient make_subquotient(const IntMatrix& p_generators, const IntMatrix& l_generators, std::size_t ambient) {
    IntMatrix pbasis = p_generators.cols() == 0 ? IntMatrix(ambient, 0) : lattice_basis(p_generators);
    const std::size_t p = pbasis.cols();
    IntMatrix rel(p, 0);
    if (l_generators.cols() > 0) {
        auto r = integer_solve(pbasis, l_generators);
        if (!r) throw Error(Errc::NotContained, "subquotient: relations not contained in the subgroup");
        rel = *r;
    }
    IntMatrix u = IntMatrix::identity(p);
    std::vector<Integer> inv(p, Integer(0));
    if (rel.cols() > 0 && p > 0) {
        SmithForm s = smith_normal_form(rel);
        u = s.u;
        for (std::size_t i = 0; i < s.rank; ++i) inv[i] = s.d(i, i);
    }
    auto uinv = unimodular_inverse(u);
    if (!uinv) throw Error(Errc::InternalError, "subquotient: transform not unimodular");

    std::vector<std::size_t> free_idx, tors_idx;
    std::vector<Integer> torsion;
    for (std::size_t i = 0; i < p; ++i) {
        if (inv[i] == 0) {
            free_idx.push_back(i);
        } else if (inv[i] != 1) {
            tors_idx.push_back(i);
            torsion.push_back(inv[i]);
        }
    }
    std::vector<std::size_t> order = free_idx;
    order.insert(order.end(), tors_idx.begin(), tors_idx.end());

    Subquotient sq;
    sq.group = FgAbGroup(free_idx.size(), torsion);
    sq.pbasis = pbasis;
    sq.generators = (pbasis * *uinv).select_cols(order);
    if (sq.generators.rows() != ambient) sq.generators = IntMatrix(ambient, order.size());
    sq.coord = u.select_rows(order);
    return sq;
}

namespace {

IntMatrix top_rows(const IntMatrix& m, std::size_t n) { return m.block(0, 0, n, m.cols()); }

}  // namespace

IntMatrix kernel_lattice(const LatticeMap& f) {
    const std::size_t na = f.source().ngens();
    IntMatrix k = integer_kernel(hcat(f.matrix(), f.target().relations()));
    IntMatrix gens = top_rows(k, na);
    if (gens.cols() == 0) return IntMatrix(na, 0);
    return lattice_basis(gens);
}

IntMatrix image_lattice(const LatticeMap& f) {
    IntMatrix gens = hcat(f.matrix(), f.target().relations());
    if (gens.cols() == 0) return IntMatrix(f.target().ngens(), 0);
    return lattice_basis(gens);
}

LatticeKernel lattice_kernel(const LatticeMap& f) {
    const std::size_t na = f.source().ngens();
    Subquotient sq = make_subquotient(kernel_lattice(f), f.source().relations(), na);
    return {sq.group, LatticeMap(sq.group, f.source(), sq.generators)};
}

LatticeImage lattice_image(const LatticeMap& f) {
    const std::size_t nb = f.target().ngens();
    Subquotient sq = make_subquotient(image_lattice(f), f.target().relations(), nb);
    LatticeMap emb(sq.group, f.target(), sq.generators);
    LatticeMap core(f.source(), sq.group, sq.coordinates_of(f.matrix()));
    return {sq.group, emb, core};
}

LatticeCokernel lattice_cokernel(const LatticeMap& f) {
    const std::size_t nb = f.target().ngens();
    IntMatrix rel = hcat(f.matrix(), f.target().relations());
    Subquotient sq = make_subquotient(IntMatrix::identity(nb), rel, nb);
    return {sq.group, LatticeMap(f.target(), sq.group, sq.coordinates_of(IntMatrix::identity(nb))), sq.generators};
}

LatticeMap saturate(const LatticeMap& embedding) {
    if (!embedding.source().is_free() || !embedding.target().is_free())
        throw Error(Errc::TorsionInput, "saturate: groups must be free");
    if (rank(to_q(embedding.matrix())) != embedding.source().rank())
        throw Error(Errc::NotInjective, "saturate: map is not injective");
    IntMatrix b = saturated_basis(to_q(embedding.matrix()));
    return LatticeMap(FgAbGroup::free(b.cols()), embedding.target(), b);
}

bool lattice_exact_at(const LatticeMap& f, const LatticeMap& g) {
    if (!(f.target() == g.source())) throw Error(Errc::NotComposable, "lattice maps not composable");
    return image_lattice(f) == kernel_lattice(g);
}

bool lattice_injective(const LatticeMap& f) {
    IntMatrix rel = f.source().relations();
    IntMatrix triv = rel.cols() == 0 ? IntMatrix(f.source().ngens(), 0) : lattice_basis(rel);
    return kernel_lattice(f) == triv;
}

bool lattice_surjective(const LatticeMap& f) {
    return image_lattice(f) == IntMatrix::identity(f.target().ngens());
}

}  // namespace fhodge
