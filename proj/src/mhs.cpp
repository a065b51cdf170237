#include "fhodge/mhs.hpp"

namespace fhodge {

namespace {

Subspace rational_image(const MatrixQ& f, const Subspace& s) { return image(to_k(f), s); }

Subspace rational_preimage(const MatrixQ& f, const Subspace& s) { return preimage(to_k(f), s); }

// Determinant over K by elimination.
Scalar det(MatrixK m) {
    const std::size_t n = m.rows();
    Scalar d(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c).is_zero()) ++p;
        if (p == n) return Scalar(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            d = -d;
        }
        d *= m(c, c);
        Scalar inv = m(c, c).inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c).is_zero()) continue;
            Scalar f = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) sub_product(m(i, j), f, m(c, j));
        }
    }
    return d;
}

}  // namespace

MHS1 make_mhs(const FgAbGroup& lattice, const MatrixK& wm2, const MatrixK& wm1, const MatrixK& f0, int tag) {
    const std::size_t n = lattice.rank();
    auto sub = [n](const MatrixK& b, const char* name) {
        if (b.rows() != n && !(b.rows() == 0 && b.cols() == 0))
            throw Error(Errc::DimensionMismatch, std::string(name) + ": basis vectors must have lattice_rank entries");
        return b.cols() == 0 ? Subspace(n) : Subspace::span(b);
    };
    return {lattice, sub(wm2, "w_m2"), sub(wm1, "w_m1"), sub(f0, "f0"), tag};
}

std::vector<Violation> mhs_violations(const MHS1& x) {
    std::vector<Violation> out;
    const std::size_t n = x.rank();
    if (x.wm2.ambient() != n || x.wm1.ambient() != n || x.f0.ambient() != n) {
        out.push_back({Errc::DimensionMismatch, "filtrations must live in K^lattice_rank"});
        return out;
    }
    if (!x.wm1.is_rational() || !x.wm2.is_rational())
        out.push_back({Errc::NotRationalSubspace, "weight filtration must be defined over Q"});
    if (!x.wm1.contains(x.wm2)) out.push_back({Errc::WeightChainBroken, "W-2 is not contained in W-1"});
    if (!out.empty()) return out;

    if (!intersect(x.f0, x.wm2).is_zero())
        out.push_back({Errc::HodgeAxiomF0MeetsW2, "F0 meets W-2"});
    if (!sum(x.f0, x.wm1).is_full())
        out.push_back({Errc::HodgeAxiomF0PlusW1, "F0 + W-1 is not all of H"});
    Subspace f1 = sum(intersect(x.f0, x.wm1), x.wm2);
    Subspace f1bar = f1.conj();
    if (!(sum(f1, f1bar) == x.wm1) || !(intersect(f1, f1bar) == x.wm2))
        out.push_back({Errc::HodgeAxiomGrNotSplit, "gr_{-1} is not F + conj(F)"});
    if (out.empty() && 2 * x.f0.dim() != 2 * x.gr0_rank() + x.grm1_rank())
        out.push_back({Errc::InternalError, "dim F0 != rank gr0 + rank gr-1 / 2"});
    return out;
}

const MHS1& validate_mhs(const MHS1& x) {
    auto v = mhs_violations(x);
    if (!v.empty()) throw ValidationError(std::move(v));
    return x;
}

MHS1 zero_mhs() { return {FgAbGroup(), Subspace(0), Subspace(0), Subspace(0), 0}; }

MHS1 tate(int n) {
    if (n == 0) return {FgAbGroup::free(1), Subspace(1), Subspace(1), Subspace::full(1), 0};
    if (n == 1) return {FgAbGroup::free(1), Subspace::full(1), Subspace::full(1), Subspace(1), 1};
    throw Error(Errc::Malformed, "tate: only Z(0) and Z(1) are level <= 1");
}

namespace {

Subspace sum_sub(const Subspace& a, const Subspace& b) { return Subspace::span(direct_sum(a.basis(), b.basis())); }

}  // namespace

MHS1 direct_sum(const MHS1& a, const MHS1& b) {
    if (!a.lattice.is_free() || !b.lattice.is_free()) throw Error(Errc::TorsionInput, "direct_sum: free inputs only");
    FgAbGroup g = FgAbGroup::free(a.rank() + b.rank());
    return {g, sum_sub(a.wm2, b.wm2), sum_sub(a.wm1, b.wm1), sum_sub(a.f0, b.f0), a.tate_tag};
}

std::vector<Violation> mhs_morphism_violations(const LatticeMap& f, const MHS1& a, const MHS1& b) {
    std::vector<Violation> out;
    if (!(f.source() == a.lattice) || !(f.target() == b.lattice)) {
        out.push_back({Errc::DimensionMismatch, "lattice map does not match the structures"});
        return out;
    }
    MatrixK fk = to_k(f.rational());
    if (!b.wm2.contains(image(fk, a.wm2))) out.push_back({Errc::NotMhsMorphism, "f(W-2) not in W'-2"});
    if (!b.wm1.contains(image(fk, a.wm1))) out.push_back({Errc::NotMhsMorphism, "f(W-1) not in W'-1"});
    if (!b.f0.contains(image(fk, a.f0))) out.push_back({Errc::NotMhsMorphism, "f(F0) not in F'0"});
    return out;
}

void validate_mhs_morphism(const LatticeMap& f, const MHS1& a, const MHS1& b) {
    auto v = mhs_morphism_violations(f, a, b);
    if (!v.empty()) throw ValidationError(std::move(v));
}

namespace {

void ensure_strict(const MHS1& x, const char* what) {
    auto v = mhs_violations(x);
    if (!v.empty())
        throw Error(Errc::InternalStrictnessViolation, std::string(what) + ": induced structure fails " +
                                                           std::string(errc_name(v.front().code)));
}

MHS1 induced_sub(const LatticeMap& e, const MHS1& b) {
    MatrixQ eq = e.rational();
    return {e.source(), rational_preimage(eq, b.wm2), rational_preimage(eq, b.wm1), preimage(to_k(eq), b.f0),
            b.tate_tag};
}

}  // namespace

MHSSubobject mhs_kernel(const LatticeMap& f, const MHS1& a, const MHS1& b) {
    validate_mhs_morphism(f, a, b);
    LatticeKernel k = lattice_kernel(f);
    MHS1 obj = induced_sub(k.embedding, a);
    ensure_strict(obj, "kernel");
    return {obj, k.embedding};
}

MHSQuotient mhs_cokernel(const LatticeMap& f, const MHS1& a, const MHS1& b) {
    validate_mhs_morphism(f, a, b);
    LatticeCokernel c = lattice_cokernel(f);
    MatrixQ pq = c.projection.rational();
    MHS1 obj{c.group, rational_image(pq, b.wm2), rational_image(pq, b.wm1), image(to_k(pq), b.f0), b.tate_tag};
    ensure_strict(obj, "cokernel");
    return {obj, c.projection, c.lifts};
}

MHSImage mhs_image(const LatticeMap& f, const MHS1& a, const MHS1& b) {
    validate_mhs_morphism(f, a, b);
    LatticeImage im = lattice_image(f);
    MHS1 obj = induced_sub(im.embedding, b);
    ensure_strict(obj, "image");
    return {obj, im.embedding, im.corestriction};
}

MHS1 ihom_tate(const MHS1& x) {
    if (!x.lattice.is_free()) throw Error(Errc::TorsionInput, "ihom_tate: lattice has torsion");
    return {x.lattice, annihilator(x.wm1), annihilator(x.wm2), annihilator(x.f0), 1 - x.tate_tag};
}

LatticeMap ihom_tate(const LatticeMap& f) {
    if (!f.source().is_free() || !f.target().is_free()) throw Error(Errc::TorsionInput, "ihom_tate: torsion");
    return LatticeMap(f.target(), f.source(), f.matrix().transpose());
}

LatticeMap ihom_double_dual(const MHS1& x) {
    if (!x.lattice.is_free()) throw Error(Errc::TorsionInput, "ihom_double_dual: lattice has torsion");
    return LatticeMap::identity(x.lattice);
}

GradedLattice graded_lattice(const MHS1& x) {
    const std::size_t n = x.rank();
    IntMatrix b1 = saturated_basis(as_rational(x.wm1.basis()));
    IntMatrix b2 = saturated_basis(as_rational(x.wm2.basis()));
    IntMatrix lifts(n, 0);
    if (b1.cols() > 0) {
        IntMatrix inner(b1.cols(), 0);
        if (b2.cols() > 0) {
            auto c = integer_solve(b1, b2);
            if (!c) throw Error(Errc::InternalError, "graded_lattice: W-2 lattice not inside W-1 lattice");
            inner = lattice_basis(*c);
        }
        lifts = b1 * unimodular_completion(inner);
    }
    return {b1, b2, lifts};
}

Subspace grm1_hodge(const MHS1& x) {
    GradedLattice gl = graded_lattice(x);
    const std::size_t k2 = gl.wm2.cols(), g2 = gl.grm1_lifts.cols();
    Subspace f1 = intersect(x.f0, x.wm1);
    if (g2 == 0) return Subspace(0);
    if (f1.is_zero()) return Subspace(g2);
    MatrixK basis = to_k(hcat(gl.wm2, gl.grm1_lifts));
    MatrixK y = solve_or_throw(basis, f1.basis(), "grm1_hodge");
    return Subspace::span(y.block(k2, 0, g2, y.cols()));
}

bool check_polarization(const MHS1& x, const IntMatrix& q) {
    const std::size_t g2 = x.grm1_rank();
    if (q.rows() != g2 || q.cols() != g2) throw Error(Errc::DimensionMismatch, "polarization must be rank(gr-1) square");
    for (std::size_t i = 0; i < g2; ++i) {
        if (q(i, i) != 0) throw Error(Errc::NotAlternating, "polarization has a nonzero diagonal entry");
        for (std::size_t j = 0; j < g2; ++j)
            if (q(i, j) != -q(j, i)) throw Error(Errc::NotAlternating, "polarization is not antisymmetric");
    }
    if (g2 == 0) return true;
    MatrixK f = grm1_hodge(x).basis();
    MatrixK qk = to_k(q);
    if (!(f.transpose() * qk * f).is_zero()) return false;
    MatrixK h = Scalar::i() * (f.transpose() * qk * conj(f));
    for (std::size_t k = 1; k <= h.rows(); ++k) {
        Scalar d = det(h.block(0, 0, k, k));
        if (!d.is_rational() || sgn(d.re()) <= 0) return false;
    }
    return true;
}

}  // namespace fhodge
