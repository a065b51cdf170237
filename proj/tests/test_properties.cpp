#include "doctest.h"
#include "fhodge/generator.hpp"
#include "fhodge/linalg.hpp"

using namespace fhodge;

namespace {

constexpr std::uint64_t kSeeds = 60;

const Profile kFhsProfiles[] = {Profile::Etale, Profile::Connected, Profile::Special, Profile::General};
const Profile kMotiveProfiles[] = {Profile::MotiveEtale, Profile::MotiveConnected, Profile::MotiveSpecial,
                                   Profile::MotiveGeneral};

}  // namespace

TEST_CASE("generator output is valid and deterministic") {
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
        for (Profile p : kFhsProfiles) {
            FHS1Object x = gen_fhs(p, seed);
            CHECK(fhs_violations(x).empty());
            CHECK(gen_fhs(p, seed) == x);
            if (p == Profile::Etale) CHECK(is_etale(x));
            if (p == Profile::Connected) CHECK(is_connected(x));
            if (p == Profile::Special) {
                CHECK(is_special(x));
                CHECK(check_exact(seq5(x)).exact());
            }
        }
        for (Profile p : kMotiveProfiles) {
            Motive m = gen_motive(p, seed);
            CHECK(motive_violations(m).empty());
            CHECK(gen_motive(p, seed) == m);
        }
        for (Profile p : {Profile::MhsPure, Profile::MhsGeneral}) CHECK(mhs_violations(gen_mhs(p, seed)).empty());
    }
}

TEST_CASE("profile names round trip") {
    for (Profile p : all_profiles()) CHECK(parse_profile(profile_name(p)) == p);
    CHECK_FALSE(parse_profile("bogus").has_value());
}

TEST_CASE("morphism sampling") {
    FHS1Object c0 = canonical_etale(tate(0)), c1 = canonical_etale(tate(1));
    CHECK_FALSE(gen_morphism(c0, c1, 1).has_value());
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        FHS1Object x = gen_fhs(Profile::General, seed);
        CHECK(hom_group(x, x).contains(identity(x)));
        auto f = gen_morphism(x, gen_fhs(Profile::Special, seed), seed);
        if (f) CHECK(morphism_violations(*f).empty());
    }
}

TEST_CASE("MHS morphisms are strict") {
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
        MHS1 a = gen_mhs(Profile::MhsGeneral, seed), b = gen_mhs(Profile::MhsGeneral, seed + 1000);
        auto f = gen_morphism(canonical_etale(a), canonical_etale(b), seed);
        if (!f) continue;
        MatrixK fk = to_k(f->fz.rational());
        Subspace im = image(fk);
        CHECK(intersect(im, b.f0) == image(fk, a.f0));
        CHECK(intersect(im, b.wm1) == image(fk, a.wm1));
        CHECK(intersect(im, b.wm2) == image(fk, a.wm2));
    }
}

TEST_CASE("internal hom is an exact involution") {
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
        MHS1 h = gen_mhs(seed % 2 ? Profile::MhsGeneral : Profile::MhsPure, seed);
        MHS1 d = ihom_tate(h);
        CHECK(mhs_violations(d).empty());
        CHECK(ihom_tate(d) == h);
        validate_mhs_morphism(ihom_double_dual(h), h, ihom_tate(d));

        MHS1 b = gen_mhs(Profile::MhsGeneral, seed + 7);
        auto f = gen_morphism(canonical_etale(h), canonical_etale(b), seed);
        if (!f) continue;
        MHSSubobject k = mhs_kernel(f->fz, h, b);
        MHSImage im = mhs_image(f->fz, h, b);
        // 0 -> ker -> H -> im -> 0 and its dual, compared through c
        auto seq = short_sequence(canonical_etale(k.embedding, k.object, h),
                                  canonical_etale(im.corestriction, h, im.object));
        CHECK(check_exact(seq).exact());
        auto dual_seq = short_sequence(
            canonical_etale(ihom_tate(im.corestriction), ihom_tate(im.object), ihom_tate(h)),
            canonical_etale(ihom_tate(k.embedding), ihom_tate(h), ihom_tate(k.object)));
        CHECK(check_exact(dual_seq).exact());
    }
}

TEST_CASE("abelian structure on random morphisms") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        FHS1Object x = gen_fhs(Profile::General, seed), y = gen_fhs(Profile::Special, seed);
        FHS1Object src = direct_sum(x, y), dst = direct_sum(y, gen_fhs(Profile::Etale, seed));
        auto f = gen_morphism(src, dst, seed);
        REQUIRE(f.has_value());
        FHSSubobject k = kernel(*f);
        FHSQuotient c = cokernel(*f);
        FHSImage im = image(*f);
        CHECK(fhs_violations(k.object).empty());
        CHECK(fhs_violations(c.object).empty());
        CHECK(check_exact(short_sequence(k.embedding, im.corestriction)).exact());
        CHECK(check_exact(short_sequence(im.embedding, c.projection)).exact());
        CHECK(compose(c.projection, *f) == zero_morphism(src, c.object));
        CHECK(factor_through_kernel(k, k.embedding) == identity(k.object));
        CHECK(factor_through_cokernel(c, c.projection) == identity(c.object));
    }
}

TEST_CASE("duality on random free structures") {
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
        for (Profile p : kFhsProfiles) {
            FHS1Object x = gen_fhs(p, seed);
            FHS1Object d = dual_fhs(x);
            CHECK(d.s == x.v0.dim());
            CHECK(d.v0.dim() == x.s);
            CHECK(d.het.gr0_rank() == x.het.grm2_rank());
            CHECK(double_dual_iso(x).verified());
            CHECK(dual_splitting_iso(x).verified());
        }
    }
}

TEST_CASE("round trips and naturality on random inputs") {
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
        for (Profile p : kFhsProfiles) CHECK(roundtrip_fm(gen_fhs(p, seed)).verified());
        for (Profile p : kMotiveProfiles) {
            Motive m = gen_motive(p, seed);
            CHECK(roundtrip_mf(m).verified());
            CHECK(etale_part(t_formal(m)) == t_formal(etale_motive(m)));
            CHECK(is_special(m) == is_special(t_formal(m)));
            CHECK(is_etale(m) == is_etale(t_formal(m)));
            CHECK(is_connected(m) == is_connected(t_formal(m)));
        }
    }
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Motive m = gen_motive(Profile::MotiveSpecial, seed), n = gen_motive(Profile::MotiveSpecial, seed + 500);
        auto f = gen_motive_morphism(m, n, seed);
        if (f) {
            CHECK(naturality_check(*f));
            CHECK(naturality_check(t_formal(*f)));
        }
    }
}
