#include "doctest.h"
#include "fhodge/linalg.hpp"
#include "fhodge/mhs.hpp"

using namespace fhodge;

namespace {

MatrixK col(std::initializer_list<Scalar> v) { return MatrixK::column_vector(v); }

MHS1 elliptic() {
    return make_mhs(FgAbGroup::free(2), MatrixK(2, 0), MatrixK::identity(2), col({-Scalar::i(), Scalar(1)}));
}

// weights {0, -2}: W-2 = W-1 = span e1, F0 = span (-1/2, 1)
MHS1 kummer() {
    return make_mhs(FgAbGroup::free(2), col({Scalar(1), Scalar(0)}), col({Scalar(1), Scalar(0)}),
                    col({Scalar(Rational(-1, 2)), Scalar(1)}));
}

bool raises(Errc code, const MHS1& x) {
    for (const auto& v : mhs_violations(x))
        if (v.code == code) return true;
    return false;
}

}  // namespace

TEST_CASE("Tate objects") {
    CHECK(mhs_violations(tate(0)).empty());
    CHECK(mhs_violations(tate(1)).empty());
    MHS1 bad = tate(1);
    bad.f0 = Subspace::full(1);
    CHECK(raises(Errc::HodgeAxiomF0MeetsW2, bad));
    CHECK_THROWS_AS(validate_mhs(bad), ValidationError);
}

TEST_CASE("elliptic block") {
    MHS1 e = elliptic();
    CHECK(mhs_violations(e).empty());
    CHECK(e.grm1_rank() == 2);
    // e2 - i e1 and its conjugate span H_K
    CHECK(sum(e.f0, e.f0.conj()).is_full());

    MHS1 real_f = make_mhs(FgAbGroup::free(2), MatrixK(2, 0), MatrixK::identity(2), col({Scalar(1), Scalar(0)}));
    CHECK(raises(Errc::HodgeAxiomGrNotSplit, real_f));
    MHS1 no_f = make_mhs(FgAbGroup::free(2), MatrixK(2, 0), col({Scalar(1), Scalar(0)}), MatrixK(2, 0));
    CHECK(raises(Errc::HodgeAxiomF0PlusW1, no_f));
}

TEST_CASE("weight chain") {
    MHS1 x = make_mhs(FgAbGroup::free(2), col({Scalar(1), Scalar(0)}), col({Scalar(0), Scalar(1)}),
                      col({Scalar(1), Scalar(1)}));
    CHECK(raises(Errc::WeightChainBroken, x));
    MHS1 y = make_mhs(FgAbGroup::free(1), col({Scalar::i()}), col({Scalar(1)}), MatrixK(1, 0));
    CHECK(mhs_violations(y).empty());  // span{i} is the rational line
    MHS1 z = make_mhs(FgAbGroup::free(2), MatrixK(2, 0), col({Scalar(1), Scalar::i()}), col({Scalar(0), Scalar(1)}));
    CHECK(raises(Errc::NotRationalSubspace, z));
}

TEST_CASE("kernels and cokernels") {
    SUBCASE("identity") {
        MHS1 e = elliptic();
        auto k = mhs_kernel(LatticeMap::identity(e.lattice), e, e);
        auto c = mhs_cokernel(LatticeMap::identity(e.lattice), e, e);
        CHECK(k.object.rank() == 0);
        CHECK(c.object.lattice.is_trivial());
    }
    SUBCASE("zero map Z(1) -> Z(0)") {
        LatticeMap z = LatticeMap::zero(tate(1).lattice, tate(0).lattice);
        CHECK(mhs_kernel(z, tate(1), tate(0)).object == tate(1));
        CHECK(mhs_cokernel(z, tate(1), tate(0)).object == tate(0));
    }
    SUBCASE("twice the identity on the elliptic block") {
        MHS1 e = elliptic();
        LatticeMap two(e.lattice, e.lattice, IntMatrix::identity(2) * Integer(2));
        CHECK(mhs_kernel(two, e, e).object.rank() == 0);
        MHS1 c = mhs_cokernel(two, e, e).object;
        CHECK(c.lattice == FgAbGroup(0, {Integer(2), Integer(2)}));
        CHECK(c.wm1.ambient() == 0);
        CHECK(c.f0.ambient() == 0);
    }
    SUBCASE("non-morphism is rejected") {
        LatticeMap id = LatticeMap::identity(FgAbGroup::free(1));
        CHECK_THROWS_AS(mhs_kernel(id, tate(0), tate(1)), ValidationError);
    }
}

TEST_CASE("internal hom into Z(1)") {
    CHECK(ihom_tate(tate(0)) == tate(1));
    CHECK(ihom_tate(tate(1)) == tate(0));
    CHECK(ihom_tate(tate(0)).tate_tag == 1);

    MHS1 ed = ihom_tate(elliptic());
    CHECK(mhs_violations(ed).empty());
    CHECK(ed.grm1_rank() == 2);
    // functionals killing (-i, 1): the column (1, i)
    CHECK(ed.f0 == Subspace::span(col({Scalar(1), Scalar::i()})));

    MHS1 k = kummer();
    REQUIRE(mhs_violations(k).empty());
    MHS1 kd = ihom_tate(k);
    CHECK(mhs_violations(kd).empty());
    CHECK(kd.gr0_rank() == k.grm2_rank());
    CHECK(kd.grm2_rank() == k.gr0_rank());
    CHECK(ihom_tate(kd) == k);
    CHECK(ihom_double_dual(k) == LatticeMap::identity(k.lattice));
}

TEST_CASE("strictness of a morphism") {
    // Z(1) -> Kummer on W-2, and Kummer -> Z(0) on gr0
    MHS1 k = kummer();
    LatticeMap in(FgAbGroup::free(1), k.lattice, IntMatrix{{Integer(1)}, {Integer(0)}});
    LatticeMap out(k.lattice, FgAbGroup::free(1), IntMatrix{{Integer(0), Integer(1)}});
    validate_mhs_morphism(in, tate(1), k);
    validate_mhs_morphism(out, k, tate(0));
    CHECK(mhs_cokernel(in, tate(1), k).object == tate(0));
    CHECK(mhs_kernel(out, k, tate(0)).object == tate(1));
    MatrixK fk = to_k(out.rational());
    CHECK(intersect(image(fk), tate(0).f0) == image(fk, k.f0));
}

TEST_CASE("polarization witnesses") {
    MHS1 e = elliptic();
    IntMatrix q{{Integer(0), Integer(1)}, {Integer(-1), Integer(0)}};
    CHECK(check_polarization(e, q));
    CHECK_FALSE(check_polarization(e, q * Integer(-1)));
    CHECK(check_polarization(tate(0), IntMatrix(0, 0)));
    IntMatrix sym{{Integer(0), Integer(1)}, {Integer(1), Integer(0)}};
    CHECK_THROWS_AS(check_polarization(e, sym), Error);
}
