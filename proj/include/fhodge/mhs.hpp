#pragma once

#include <vector>

#include "fhodge/lattice.hpp"
#include "fhodge/subspace.hpp"

namespace fhodge {

/// Mixed Hodge structure of level <= 1. The Hodge data lives on the free part:
/// wm2, wm1 are rational subspaces of K^rank and f0 is a K-subspace. The tag is
/// bookkeeping for Tate twists and does not take part in equality.
struct MHS1 {
    FgAbGroup lattice;
    Subspace wm2;
    Subspace wm1;
    Subspace f0;
    int tate_tag = 0;

    std::size_t rank() const { return lattice.rank(); }
    std::size_t gr0_rank() const { return rank() - wm1.dim(); }
    std::size_t grm1_rank() const { return wm1.dim() - wm2.dim(); }
    std::size_t grm2_rank() const { return wm2.dim(); }

    friend bool operator==(const MHS1& a, const MHS1& b) {
        return a.lattice == b.lattice && a.wm2 == b.wm2 && a.wm1 == b.wm1 && a.f0 == b.f0;
    }
};

/// Canonicalizes the bases; does not validate.
MHS1 make_mhs(const FgAbGroup& lattice, const MatrixK& wm2, const MatrixK& wm1, const MatrixK& f0, int tag = 0);
std::vector<Violation> mhs_violations(const MHS1& x);
/// Throws ValidationError listing every violated axiom.
const MHS1& validate_mhs(const MHS1& x);

MHS1 zero_mhs();
/// Z(0) for n = 0, Z(1) for n = 1.
MHS1 tate(int n);
MHS1 direct_sum(const MHS1& a, const MHS1& b);

std::vector<Violation> mhs_morphism_violations(const LatticeMap& f, const MHS1& a, const MHS1& b);
void validate_mhs_morphism(const LatticeMap& f, const MHS1& a, const MHS1& b);

struct MHSSubobject {
    MHS1 object;
    LatticeMap embedding;
};

struct MHSQuotient {
    MHS1 object;
    LatticeMap projection;
    IntMatrix lifts;
};

struct MHSImage {
    MHS1 object;
    LatticeMap embedding;
    LatticeMap corestriction;
};

/// Induced filtrations; throws InternalStrictnessViolation if they fail the axioms.
MHSSubobject mhs_kernel(const LatticeMap& f, const MHS1& a, const MHS1& b);
MHSQuotient mhs_cokernel(const LatticeMap& f, const MHS1& a, const MHS1& b);
MHSImage mhs_image(const LatticeMap& f, const MHS1& a, const MHS1& b);

/// ihom(x, Z(1)) on the dual lattice; functionals are column vectors.
MHS1 ihom_tate(const MHS1& x);
/// The transposed map B^v -> A^v.
LatticeMap ihom_tate(const LatticeMap& f);
/// Comparison x -> ihom(ihom(x)) (the identity in dual-of-dual coordinates).
LatticeMap ihom_double_dual(const MHS1& x);

/// Saturated integral bases of W-1 and W-2 and lifts of a basis of the free
/// lattice gr_{-1} = (W-1 ∩ H_Z) / (W-2 ∩ H_Z).
struct GradedLattice {
    IntMatrix wm1;
    IntMatrix wm2;
    IntMatrix grm1_lifts;
};

GradedLattice graded_lattice(const MHS1& x);
/// Image of F0 ∩ W-1 in gr_{-1} ⊗ K, in the coordinates of the gr_{-1} basis.
Subspace grm1_hodge(const MHS1& x);
/// Alternating integer form on the gr_{-1} basis of graded_lattice. True iff
/// F is isotropic and i Q(x, conj y) is positive definite on F.
bool check_polarization(const MHS1& x, const IntMatrix& q);

}  // namespace fhodge
