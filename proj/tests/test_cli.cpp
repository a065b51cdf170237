#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "fhodge/generator.hpp"
#include "fhodge/io.hpp"

using namespace fhodge;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
    Json diagnostic() const { return Json::parse(err); }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

class Workdir {
public:
    Workdir() : dir_(fs::temp_directory_path() / ("fhodge_cli_" + std::to_string(counter_++))) {
        fs::create_directories(dir_);
    }
    ~Workdir() { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) const {
        fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string write(const std::string& name, const Json& doc) const { return write(name, dump(doc)); }

private:
    static inline int counter_ = 0;
    fs::path dir_;
};

}  // namespace

TEST_CASE("validate") {
    Workdir w;
    std::string c1 = w.write("c1.json", make_document("fhs1", fhs_to_json(canonical_etale(tate(1)))));
    Run r = run({"validate", c1});
    CHECK(r.code == kExitOk);
    CHECK(r.json()["valid"] == true);
    CHECK(r.err.empty());

    FHS1Object bad = canonical_etale(tate(1));
    bad.sigma = MatrixK{{Scalar(2)}};
    r = run({"validate", w.write("bad.json", make_document("fhs1", fhs_to_json(bad)))});
    CHECK(r.code == kExitDomain);
    CHECK(r.json()["violations"][0]["code"] == "Square1Broken");
    CHECK(r.diagnostic()["error"] == "domain");

    r = run({"validate", w.write("junk.json", std::string("{\"format_version\": 1"))});
    CHECK(r.code == kExitMalformed);
    CHECK(r.diagnostic()["error"] == "malformed");
    CHECK(r.out.empty());

    CHECK(run({"validate", "/nonexistent/file.json"}).code == kExitMalformed);
    CHECK(run({"frobnicate"}).code == kExitMalformed);
    CHECK(run({"validate"}).code == kExitMalformed);
}

TEST_CASE("dual twice then compare") {
    Workdir w;
    std::string x = w.write("x.json", make_document("fhs1", fhs_to_json(gen_fhs(Profile::General, 4))));
    Run d1 = run({"dual", x});
    REQUIRE(d1.code == kExitOk);
    std::string dx = w.write("dx.json", d1.out);
    Run d2 = run({"dual", dx});
    REQUIRE(d2.code == kExitOk);
    std::string ddx = w.write("ddx.json", d2.out);
    Run cmp = run({"compare-iso", x, ddx});
    CHECK(cmp.code == kExitOk);
    CHECK(cmp.json()["verified"] == true);
    CHECK(cmp.json()["transcript"].size() == 4);

    Run iso = run({"dual", "--check-iso", x});
    CHECK(iso.code == kExitOk);
    CHECK(iso.json()["verified"] == true);

    std::string y = w.write("y.json", make_document("fhs1", fhs_to_json(canonical_etale(tate(0)))));
    Run no = run({"compare-iso", x, y});
    CHECK(no.code == kExitDomain);
    CHECK(no.json()["isomorphic"] == false);
}

TEST_CASE("check-exact names the failing node after tampering with V1") {
    Workdir w;
    // an object whose X/V0 has V1 != V
    FHS1Object x;
    for (std::uint64_t seed = 1;; ++seed) {
        x = gen_fhs(Profile::General, seed);
        FHS1Object q = quotient_by_v0(x);
        if (!q.v1.is_full()) break;
    }
    Json seq = sequence_to_json(seq4(x));
    std::string good = w.write("seq4.json", make_document("sequence", seq));
    Run ok = run({"check-exact", good});
    CHECK(ok.code == kExitOk);
    CHECK(ok.json()["exact"] == true);

    Json& middle = seq["objects"][2];
    std::size_t n = middle["v_dim"].get<std::size_t>();
    Json full = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
        Json e = Json::array();
        for (std::size_t j = 0; j < n; ++j) e.push_back(i == j ? "1" : "0");
        full.push_back(e);
    }
    middle["v1"] = full;
    Run bad = run({"check-exact", w.write("tampered.json", make_document("sequence", seq))});
    CHECK(bad.code == kExitDomain);
    CHECK(bad.json()["exact"] == false);
    CHECK(bad.json()["first_failure"]["node"] == 2);
    CHECK(bad.json()["first_failure"]["component"] == "v1");
    CHECK(bad.diagnostic()["node"] == 2);
    CHECK(bad.diagnostic()["component"] == "v1");
}

TEST_CASE("structure commands") {
    Workdir w;
    FHS1Object x = gen_fhs(Profile::Special, 2);
    std::string xs = w.write("x.json", make_document("fhs1", fhs_to_json(x)));
    Motive m = gen_motive(Profile::MotiveGeneral, 2);
    std::string ms = w.write("m.json", make_document("motive", motive_to_json(m)));
    Motive e = gen_motive(Profile::MotiveEtale, 2);
    std::string es = w.write("e.json", make_document("motive", motive_to_json(e)));

    auto payload = [](const Run& r) { return parse_document(r.out).payload; };

    Run r = run({"etale", xs});
    REQUIRE(r.code == kExitOk);
    CHECK(fhs_from_json(payload(r)) == etale_part(x));
    r = run({"connected", xs});
    CHECK(fhs_from_json(payload(r)) == pi_connected(x));
    r = run({"special-part", xs});
    CHECK(fhs_from_json(payload(r)) == connected_part(x).object);
    r = run({"realize", ms});
    CHECK(fhs_from_json(payload(r)) == t_formal(m));
    r = run({"arrow", xs});
    CHECK(motive_from_json(payload(r)) == arrow(x));
    r = run({"hodge", es});
    CHECK(mhs_from_json(payload(r)) == t_hodge(e));
    r = run({"univ-ext", es});
    CHECK(motive_from_json(payload(r)) == universal_vector_extension(e));
    r = run({"univ-ext", "--report", es});
    CHECK(r.code == kExitOk);
    CHECK(r.json()["verified"] == true);
    r = run({"roundtrip", xs});
    CHECK(r.code == kExitOk);
    CHECK(r.json()["verified"] == true);
    r = run({"roundtrip", ms});
    CHECK(r.code == kExitOk);
    r = run({"dual", ms});
    CHECK(motive_from_json(payload(r)) == cartier_dual(m));

    if (!is_etale(m)) CHECK(run({"hodge", ms}).code == kExitDomain);
    FHS1Object general = gen_fhs(Profile::General, 1);
    if (!is_special(general)) {
        Run ns = run({"special-part", w.write("g.json", make_document("fhs1", fhs_to_json(general)))});
        CHECK(ns.code == kExitDomain);
        CHECK(ns.diagnostic()["code"] == "NotSpecial");
    }
    CHECK(run({"hodge", xs}).code == kExitMalformed);
}

TEST_CASE("morphism commands") {
    Workdir w;
    FHS1Object x = gen_fhs(Profile::General, 6), y = gen_fhs(Profile::Special, 6);
    FHS1Object src = direct_sum(x, y), dst = direct_sum(y, gen_fhs(Profile::Etale, 6));
    auto f = gen_morphism(src, dst, 6);
    REQUIRE(f.has_value());
    std::string fs_ = w.write("f.json", make_document("morphism", morphism_to_json(*f)));
    Run k = run({"kernel", fs_});
    REQUIRE(k.code == kExitOk);
    CHECK(morphism_from_json(parse_document(k.out).payload) == kernel(*f).embedding);
    Run c = run({"cokernel", fs_});
    REQUIRE(c.code == kExitOk);
    CHECK(morphism_from_json(parse_document(c.out).payload) == cokernel(*f).projection);

    Run h = run({"hom", w.write("s.json", make_document("fhs1", fhs_to_json(src))),
                 w.write("d.json", make_document("fhs1", fhs_to_json(dst)))});
    REQUIRE(h.code == kExitOk);
    HomSpace hs = hom_group(src, dst);
    CHECK(h.json()["vector_dim"] == hs.vector_dim());
    CHECK(h.json()["lattice_rank"] == hs.lattice_rank());

    FHS1Morphism broken = *f;
    REQUIRE(broken.g.rows() > 0);
    REQUIRE(broken.g.cols() > 0);
    broken.g(0, 0) += Scalar(1);
    Run bad = run({"validate", w.write("b.json", make_document("morphism", morphism_to_json(broken)))});
    CHECK(bad.code == kExitDomain);
    CHECK(run({"kernel", w.write("b2.json", make_document("morphism", morphism_to_json(broken)))}).code ==
          kExitDomain);
}

TEST_CASE("gen is deterministic and writes every kind") {
    for (Profile p : all_profiles()) {
        Run a = run({"gen", "--profile", profile_name(p), "--seed", "17"});
        Run b = run({"gen", "--profile", profile_name(p), "--seed", "17"});
        REQUIRE(a.code == kExitOk);
        CHECK(a.out == b.out);
        Document d = parse_document(a.out);
        CHECK_FALSE(d.kind.empty());
    }
    CHECK(run({"gen", "--profile", "bogus", "--seed", "1"}).code == kExitMalformed);
    CHECK(run({"gen", "--profile", "etale"}).code == kExitMalformed);
}

TEST_CASE("output flag") {
    Workdir w;
    std::string target = w.write("out.json", std::string());
    Run r = run({"--output", target, "gen", "--profile", "special", "--seed", "3"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.empty());
    std::ifstream in(target);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(parse_document(ss.str()).kind == "fhs1");
}

TEST_CASE("suite reports are byte-identical") {
    Run a = run({"suite", "--seeds", "3"});
    Run b = run({"suite", "--seeds", "3", "--threads", "1"});
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    Json j = a.json();
    CHECK(j["status"] == "pass");
    CHECK(j["criteria"].size() == 8);
}
