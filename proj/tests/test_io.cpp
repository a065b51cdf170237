#include "doctest.h"
#include "fhodge/generator.hpp"
#include "fhodge/io.hpp"

using namespace fhodge;

namespace {

Errc error_code(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::InternalError;
}

std::string fhs_text(const FHS1Object& x) { return dump(make_document("fhs1", fhs_to_json(x))); }

}  // namespace

TEST_CASE("scalars are exact strings") {
    CHECK(scalar_to_json(Scalar(Rational(1, 2), Rational(-3, 4))) == "1/2-3/4*i");
    CHECK(scalar_from_json(Json("i")) == Scalar::i());
    CHECK(scalar_from_json(Json(7)) == Scalar(7));
    CHECK(error_code([] { scalar_from_json(Json("1/0")); }) == Errc::Malformed);
    CHECK(error_code([] { scalar_from_json(Json("x")); }) == Errc::Malformed);
    CHECK(error_code([] { scalar_from_json(Json(0.5)); }) == Errc::Malformed);
}

TEST_CASE("documents round trip for every kind") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        for (Profile p : all_profiles()) {
            Json payload;
            std::string kind;
            switch (profile_kind(p)) {
                case ProfileKind::Fhs: {
                    FHS1Object x = gen_fhs(p, seed);
                    CHECK(fhs_from_json(fhs_to_json(x)) == x);
                    kind = "fhs1";
                    payload = fhs_to_json(x);
                    break;
                }
                case ProfileKind::Motive: {
                    Motive m = gen_motive(p, seed);
                    CHECK(motive_from_json(motive_to_json(m)) == m);
                    kind = "motive";
                    payload = motive_to_json(m);
                    break;
                }
                case ProfileKind::Mhs: {
                    MHS1 h = gen_mhs(p, seed);
                    MHS1 back = mhs_from_json(mhs_to_json(h));
                    CHECK(back == h);
                    CHECK(back.tate_tag == h.tate_tag);
                    kind = "mhs1";
                    payload = mhs_to_json(h);
                    break;
                }
            }
            std::string text = dump(make_document(kind, payload));
            Document d = parse_document(text);
            CHECK(d.kind == kind);
            CHECK(dump(make_document(d.kind, d.payload)) == text);
        }
        FHS1Object x = gen_fhs(Profile::General, seed);
        if (auto f = gen_morphism(x, x, seed)) {
            CHECK(morphism_from_json(morphism_to_json(*f)) == *f);
            auto seq = seq4(x);
            CHECK(sequence_from_json(sequence_to_json(seq)) == seq);
        }
    }
}

TEST_CASE("torsion survives serialization") {
    MHS1 h = tate(0);
    h.lattice = FgAbGroup(1, {Integer(2), Integer(4)});
    MHS1 back = mhs_from_json(mhs_to_json(h));
    CHECK(back.lattice == h.lattice);
    Json j = mhs_to_json(h);
    j["torsion"] = Json::array({"4", "2"});
    CHECK(error_code([&] { mhs_from_json(j); }) == Errc::Malformed);
    j["torsion"] = Json::array({"1"});
    CHECK(error_code([&] { mhs_from_json(j); }) == Errc::Malformed);
}

TEST_CASE("schema violations are malformed input") {
    std::string good = fhs_text(canonical_etale(tate(1)));
    CHECK(parse_document(good).kind == "fhs1");

    auto mutate = [&](const std::function<void(Json&)>& fn) {
        Json j = Json::parse(good);
        fn(j);
        return j.dump();
    };
    auto code = [&](const std::string& text) {
        return error_code([&] {
            Document d = parse_document(text);
            fhs_from_json(d.payload);
        });
    };
    CHECK(code("{") == Errc::Malformed);
    CHECK(code("[]") == Errc::Malformed);
    CHECK(code(mutate([](Json& j) { j["format_version"] = 2; })) == Errc::Malformed);
    CHECK(code(mutate([](Json& j) { j["field"] = "Q"; })) == Errc::Malformed);
    CHECK(code(mutate([](Json& j) { j["kind"] = "lattice"; })) == Errc::Malformed);
    CHECK(code(mutate([](Json& j) { j["extra"] = 1; })) == Errc::Malformed);
    CHECK(code(mutate([](Json& j) { j["payload"]["extra"] = 1; })) == Errc::Malformed);
    CHECK(code(mutate([](Json& j) { j["payload"].erase("sigma"); })) == Errc::Malformed);
    CHECK(code(mutate([](Json& j) { j["payload"]["het"]["lattice_rank"] = -1; })) == Errc::Malformed);
    CHECK(code(mutate([](Json& j) { j["payload"]["vz_map"] = Json::array({Json::array({"1", "2"})}); })) ==
          Errc::Malformed);
    CHECK(code(mutate([](Json& j) { j["payload"]["v1"] = Json::array({Json::array({"1", "0"})}); })) ==
          Errc::Malformed);
    CHECK(code(mutate([](Json& j) { j["payload"]["vz_map"][0][0] = "1/"; })) == Errc::Malformed);
}

TEST_CASE("parsing does not validate") {
    FHS1Object x = canonical_etale(tate(1));
    x.sigma = MatrixK{{Scalar(2)}};
    FHS1Object back = fhs_from_json(fhs_to_json(x));
    CHECK(back == x);
    CHECK_FALSE(fhs_violations(back).empty());
}

TEST_CASE("reports") {
    FHS1Object x = gen_fhs(Profile::Special, 3);
    Json t = iso_to_json(roundtrip_fm(x));
    CHECK(t["verified"] == true);
    for (const auto& c : t["transcript"]) {
        CHECK(c.contains("check"));
        CHECK(c["status"] == "pass");
    }
    Json e = exactness_to_json(check_exact(seq5(x)));
    CHECK(e["exact"] == true);
    CHECK_FALSE(e.contains("first_failure"));
    CHECK(e["nodes"].size() == 3);
}
