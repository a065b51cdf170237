#include "doctest.h"
#include "fhodge/linalg.hpp"
#include "fhodge/realize.hpp"

using namespace fhodge;

namespace {

MatrixK row(std::initializer_list<Scalar> v) { return MatrixK::column_vector(v).transpose(); }
MatrixK col(std::initializer_list<Scalar> v) { return MatrixK::column_vector(v); }

Motive gm() {
    return {0, 0, 1, Subspace(1), Subspace::full(1), row({Scalar(1)}), MatrixK(1, 0), MatrixK(1, 0), std::nullopt};
}

Motive kummer() {
    Motive m = gm();
    m.r = 1;
    m.ell = row({Scalar(Rational(1, 2))});
    return m;
}

Motive elliptic() {
    IntMatrix q{{Integer(0), Integer(1)}, {Integer(-1), Integer(0)}};
    return {0, 0, 1, Subspace(1), Subspace(1), row({Scalar(1), Scalar::i()}), MatrixK(1, 0), MatrixK(1, 0), q};
}

// Kummer with a vector group glued in: Lie G = K^2, V(G) = span e2, one formal generator.
Motive kummer_additive(bool special) {
    Motive m;
    m.s = 1;
    m.r = 1;
    m.n = 2;
    m.add = Subspace::span(col({Scalar(0), Scalar(1)}));
    m.toradd = Subspace::full(2);
    m.lambda = col({Scalar(1), Scalar(2)});
    m.ell = col({Scalar(Rational(1, 2)), Scalar::i()});
    m.u0 = special ? col({Scalar(0), Scalar(3)}) : col({Scalar(1), Scalar(1)});
    return m;
}

bool has(const std::vector<Violation>& vs, Errc code) {
    for (const auto& v : vs)
        if (v.code == code) return true;
    return false;
}

}  // namespace

TEST_CASE("motive validation") {
    CHECK(motive_violations(zero_motive()).empty());
    REQUIRE(motive_violations(kummer()).empty());
    MotiveRanks k = motive_ranks(kummer());
    CHECK(k.g == 0);
    CHECK(k.t == 1);
    CHECK(k.r == 1);
    REQUIRE(motive_violations(elliptic()).empty());
    CHECK(motive_ranks(elliptic()).g == 1);

    Motive real_e = elliptic();
    real_e.lambda = row({Scalar(1), Scalar(2)});
    real_e.polarization.reset();
    CHECK(has(motive_violations(real_e), Errc::AbelianPartNotFull));

    Motive meets = kummer_additive(true);
    meets.lambda = col({Scalar(0), Scalar(1)});
    CHECK(has(motive_violations(meets), Errc::LatticeMeetsAdditive));

    Motive torus{0, 0, 2, Subspace(2), Subspace::full(2), col({Scalar(1), Scalar(0)}), MatrixK(2, 0), MatrixK(2, 0),
                 std::nullopt};
    CHECK(has(motive_violations(torus), Errc::TorusRankMismatch));

    Motive chain = kummer_additive(true);
    chain.toradd = Subspace::span(col({Scalar(1), Scalar(0)}));
    CHECK(has(motive_violations(chain), Errc::BadSubspaceChain));

    Motive pol = elliptic();
    pol.polarization = IntMatrix{{Integer(0), Integer(-1)}, {Integer(1), Integer(0)}};
    CHECK(has(motive_violations(pol), Errc::PolarizationInvalid));
}

TEST_CASE("Hodge realization") {
    CHECK(t_hodge(gm()) == tate(1));
    MHS1 k = t_hodge(kummer());
    CHECK(k.rank() == 2);
    CHECK(k.gr0_rank() == 1);
    CHECK(k.grm2_rank() == 1);
    CHECK(k.f0 == Subspace::span(col({Scalar(Rational(-1, 2)), Scalar(1)})));
    MHS1 e = t_hodge(elliptic());
    CHECK(e.grm1_rank() == 2);
    CHECK(e.f0 == Subspace::span(col({-Scalar::i(), Scalar(1)})));
    CHECK_THROWS_AS(t_hodge(kummer_additive(true)), Error);
}

TEST_CASE("formal realization") {
    MatrixK u{{Scalar(1), Scalar(2)}, {Scalar::i(), Scalar(0)}, {Scalar(0), Scalar(1)}};
    CHECK(t_formal(connected_motive(u)) == linear_to_connected(u));
    for (const auto& m : {gm(), kummer(), elliptic()}) {
        FHSIso iso = etale_comparison(m);
        CHECK(iso.verified());
        CHECK(is_etale(t_formal(m)));
    }
    Motive ka = kummer_additive(true);
    FHS1Object x = t_formal(ka);
    CHECK(fhs_violations(x).empty());
    CHECK(etale_part(x) == t_formal(etale_motive(ka)));
    CHECK(etale_part(x).het == t_hodge(kummer()));
    CHECK(is_special(x));
    CHECK_FALSE(is_special(t_formal(kummer_additive(false))));
}

TEST_CASE("etale and connected parts") {
    CHECK(etale_motive(kummer()) == kummer());
    Motive ka = kummer_additive(true);
    Motive c = connected_part(ka);
    CHECK(c.s == 1);
    CHECK(c.n == 1);
    CHECK(c.u0 == MatrixK{{Scalar(3)}});
    CHECK_THROWS_AS(connected_part(kummer_additive(false)), Error);

    // [K -> K^2] with u0 = e1 and V(G) = span e1, the rest a torus
    Motive sp{1, 0, 2, Subspace::span(col({Scalar(1), Scalar(0)})), Subspace::full(2), col({Scalar(0), Scalar(1)}),
              MatrixK(2, 0), col({Scalar(1), Scalar(0)}), std::nullopt};
    REQUIRE(motive_violations(sp).empty());
    CHECK(is_special(sp));
    CHECK(connected_part(sp) == connected_motive(MatrixK{{Scalar(1)}}));
}

TEST_CASE("motive sequences") {
    Motive ka = kummer_additive(true);
    CHECK(check_exact(seq6(ka)).exact());
    CHECK(check_exact(seq7(ka)).exact());
    CHECK(check_exact(seq7(kummer_additive(false))).exact());

    auto s6 = seq6(kummer());
    CHECK(s6[1].source == connected_motive(MatrixK(0, 0)));
    auto s7 = seq7(connected_motive(MatrixK{{Scalar(2)}}));
    CHECK(s7[1].source == zero_motive());
    CHECK(s7[2].target == formal_shift(1));

    FHS1Object x = t_formal(ka);
    auto t7 = seq7(ka);
    auto f4 = seq4(x);
    for (std::size_t i = 0; i < t7.size(); ++i) CHECK(t_formal(t7[i]) == f4[i]);
    auto t6 = seq6(ka);
    auto f5 = seq5(x);
    for (std::size_t i = 0; i < t6.size(); ++i) CHECK(t_formal(t6[i]) == f5[i]);
}

TEST_CASE("round trips") {
    for (const auto& m : {zero_motive(), gm(), kummer(), elliptic(), kummer_additive(true), kummer_additive(false)}) {
        CHECK(roundtrip_mf(m).verified());
        CHECK(roundtrip_fm(t_formal(m)).verified());
    }
    FHS1Object c0 = canonical_etale(tate(0));
    FHSIso iso = roundtrip_fm(c0);
    CHECK(iso.verified());
    CHECK(iso.forward.g.rows() == 0);
    CHECK(iso.forward.fz.matrix() == IntMatrix::identity(1));
    CHECK(arrow(canonical_etale(tate(1))).lattice_rank() == 1);

    FHS1Object c1 = canonical_etale(tate(1));
    FHS1Morphism two{c1, c1, MatrixK(0, 0), LatticeMap(c1.het.lattice, c1.het.lattice, IntMatrix{{Integer(2)}}),
                     MatrixK{{Scalar(2)}}};
    CHECK(naturality_check(two));
    CHECK(naturality_check(identity(t_formal(kummer_additive(true)))));
    CHECK(naturality_check(identity(kummer())));
}

TEST_CASE("representation independence of the logarithm") {
    Motive k = kummer();
    MotiveIso iso = shift_iso(k, IntMatrix{{Integer(3)}});
    CHECK(iso.verified());
    CHECK_FALSE(t_formal(shift_log(k, IntMatrix{{Integer(3)}})).het.f0 == t_hodge(k).f0);
}

TEST_CASE("universal vector extension") {
    Motive g = universal_vector_extension(gm());
    CHECK(g.n == 1);
    CHECK(g.add.dim() == 0);
    Motive e = universal_vector_extension(elliptic());
    CHECK(e.n == 2);
    CHECK(e.add.dim() == 1);
    Motive k = universal_vector_extension(kummer());
    CHECK(k.n == 2);
    CHECK(k.add.dim() == 1);
    for (const auto& m : {gm(), kummer(), elliptic()}) {
        PeriodsReport rep = periods_square(m);
        for (const auto& c : rep.checks) CHECK_MESSAGE(c.ok, c.name);
    }
    CHECK_THROWS_AS(universal_vector_extension(kummer_additive(true)), Error);
}

TEST_CASE("Cartier duality") {
    Motive d = cartier_dual(gm());
    CHECK(d.r == 1);
    CHECK(d.n == 0);
    MatrixK u{{Scalar(1), Scalar::i()}, {Scalar(0), Scalar(2)}, {Scalar(3), Scalar(1)}};
    Motive dc = cartier_dual(connected_motive(u));
    CHECK(is_connected(dc));
    CHECK(dc.s == 3);
    CHECK(dc.n == 2);
    CHECK(dc.u0 == u.transpose());

    // [0 -> Pic^nat] for an elliptic curve dualizes to an [X^ -> X] shape
    Motive pic = universal_vector_extension(elliptic());
    Motive pd = cartier_dual(pic);
    CHECK(pd.s == 1);
    CHECK(pd.add.dim() == 0);
    CHECK(motive_ranks(pd).g == 1);
    CHECK(pd.lattice_rank() == 2);
    CHECK_FALSE(is_special(pd));
    FHS1Object tp = dual_fhs(t_formal(pic));
    CHECK(tp.s == 1);
    CHECK(tp.n == 1);
    CHECK(tp.het.rank() == 2);
    CHECK_FALSE(is_special(tp));

    for (const auto& m : {gm(), kummer(), elliptic(), kummer_additive(true), kummer_additive(false), pic}) {
        MotiveIso iso = cartier_double_dual_iso(m);
        for (const auto& c : iso.transcript) CHECK_MESSAGE(c.ok, c.name);
        MotiveRanks a = motive_ranks(m), b = motive_ranks(cartier_dual(m));
        CHECK(b.s == a.add);
        CHECK(b.add == a.s);
        CHECK(b.t == a.r);
        CHECK(b.r == a.t);
        CHECK(b.g == a.g);
    }
}

TEST_CASE("Lie data separates connected motives") {
    // [W -> V] inside [W -> V'] with V a proper subspace: same formal part, same kernel of u
    MatrixK u = col({Scalar(1), Scalar(0)});
    Motive small = connected_motive(MatrixK{{Scalar(1)}});
    Motive big = connected_motive(u);
    CHECK(small.s == big.s);
    CHECK(kernel(small.u0) == kernel(big.u0));
    FHS1Object a = t_formal(small), b = t_formal(big);
    auto cert = non_iso_certificate(a, b);
    REQUIRE(cert.has_value());
    CHECK(cert->find("dim V") != std::string::npos);
    HomSpace h = hom_group(a, b);
    for (const auto& f : h.vector_basis) CHECK_FALSE(is_invertible(f.g));
}
