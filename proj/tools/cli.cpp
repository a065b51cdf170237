#include "cli.hpp"

#include <fstream>
#include <array>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "fhodge/acceptance.hpp"
#include "fhodge/generator.hpp"
#include "fhodge/io.hpp"

namespace fhodge {

namespace {

/// A command outcome: the JSON for stdout and the exit code.
struct Outcome {
    Json result;
    int code = kExitOk;
    Json diagnostic;  // written to stderr when not null
};

Outcome ok(Json j) { return {std::move(j), kExitOk, nullptr}; }

Outcome domain_failure(Json report, const std::string& message) {
    Json diag{{"error", "domain"}, {"message", message}};
    return {std::move(report), kExitDomain, std::move(diag)};
}

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::Malformed, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Document load(const std::string& text) { return parse_document(text); }

[[noreturn]] void wrong_kind(const Document& d, const std::string& expected) {
    throw Error(Errc::Malformed, "expected a document of kind " + expected + ", got " + d.kind);
}

Json doc_fhs(const FHS1Object& x) { return make_document("fhs1", fhs_to_json(x)); }
Json doc_mhs(const MHS1& x) { return make_document("mhs1", mhs_to_json(x)); }
Json doc_motive(const Motive& m) { return make_document("motive", motive_to_json(m)); }
Json doc_morphism(const FHS1Morphism& f) { return make_document("morphism", morphism_to_json(f)); }

FHS1Object load_fhs(const Document& d) {
    if (d.kind != "fhs1") wrong_kind(d, "fhs1");
    return validate_fhs(fhs_from_json(d.payload, "/payload"));
}

Motive load_motive(const Document& d) {
    if (d.kind != "motive") wrong_kind(d, "motive");
    return validate_motive(motive_from_json(d.payload, "/payload"));
}

FHS1Morphism load_morphism(const Document& d) {
    if (d.kind != "morphism") wrong_kind(d, "morphism");
    FHS1Morphism f = morphism_from_json(d.payload, "/payload");
    validate_fhs(f.source);
    validate_fhs(f.target);
    return validate_morphism(f);
}

Outcome iso_outcome(Json j, bool verified) {
    if (verified) return ok(std::move(j));
    return domain_failure(std::move(j), "isomorphism transcript has failing checks");
}

// Commands -------------------------------------------------------------------

Outcome cmd_validate(const std::string& text) {
    Document d = load(text);
    std::vector<Violation> v;
    if (d.kind == "mhs1") {
        v = mhs_violations(mhs_from_json(d.payload, "/payload"));
    } else if (d.kind == "fhs1") {
        v = fhs_violations(fhs_from_json(d.payload, "/payload"));
    } else if (d.kind == "motive") {
        v = motive_violations(motive_from_json(d.payload, "/payload"));
    } else if (d.kind == "morphism") {
        FHS1Morphism f = morphism_from_json(d.payload, "/payload");
        v = fhs_violations(f.source);
        for (auto& x : fhs_violations(f.target)) v.push_back(x);
        if (v.empty()) v = morphism_violations(f);
    } else {
        auto seq = sequence_from_json(d.payload, "/payload");
        for (const auto& f : seq)
            for (const auto& obj : {f.source, f.target})
                for (auto& x : fhs_violations(obj)) v.push_back(x);
        if (v.empty())
            for (const auto& f : seq)
                for (auto& x : morphism_violations(f)) v.push_back(x);
    }
    Json report{{"kind", d.kind}, {"valid", v.empty()}, {"violations", violations_to_json(v)}};
    if (v.empty()) return ok(report);
    return domain_failure(report, std::string(errc_name(v.front().code)) + ": " + v.front().detail);
}

Outcome cmd_etale(const std::string& text) {
    Document d = load(text);
    if (d.kind == "fhs1") return ok(doc_fhs(etale_part(load_fhs(d))));
    if (d.kind == "motive") return ok(doc_motive(etale_motive(load_motive(d))));
    if (d.kind == "morphism") return ok(doc_morphism(etale_part(load_morphism(d))));
    wrong_kind(d, "fhs1, motive or morphism");
}

Outcome cmd_connected(const std::string& text) {
    Document d = load(text);
    if (d.kind == "fhs1") return ok(doc_fhs(pi_connected(load_fhs(d))));
    if (d.kind == "morphism") return ok(doc_morphism(pi_connected(load_morphism(d))));
    wrong_kind(d, "fhs1 or morphism");
}

Outcome cmd_special_part(const std::string& text) {
    Document d = load(text);
    if (d.kind == "fhs1") return ok(doc_fhs(connected_part(load_fhs(d)).object));
    if (d.kind == "motive") return ok(doc_motive(connected_part(load_motive(d))));
    wrong_kind(d, "fhs1 or motive");
}

Outcome cmd_dual(const std::string& text, bool check_iso) {
    Document d = load(text);
    if (d.kind == "mhs1") {
        MHS1 h = validate_mhs(mhs_from_json(d.payload, "/payload"));
        if (!check_iso) return ok(doc_mhs(ihom_tate(h)));
        MHS1 dd = ihom_tate(ihom_tate(h));
        LatticeMap c = ihom_double_dual(h);
        bool valid = mhs_morphism_violations(c, h, dd).empty();
        bool inv = is_unimodular(c.matrix());
        std::vector<Check> t{{"comparison is a morphism", valid}, {"comparison is invertible", inv}};
        Json j{{"verified", valid && inv}, {"transcript", transcript_to_json(t)}};
        return iso_outcome(j, valid && inv);
    }
    if (d.kind == "fhs1") {
        FHS1Object x = load_fhs(d);
        if (!check_iso) return ok(doc_fhs(dual_fhs(x)));
        FHSIso iso = double_dual_iso(x);
        return iso_outcome(iso_to_json(iso), iso.verified());
    }
    if (d.kind == "motive") {
        Motive m = load_motive(d);
        if (!check_iso) return ok(doc_motive(cartier_dual(m)));
        MotiveIso iso = cartier_double_dual_iso(m);
        return iso_outcome(iso_to_json(iso), iso.verified());
    }
    if (d.kind == "morphism" && !check_iso) return ok(doc_morphism(dual_morphism(load_morphism(d))));
    wrong_kind(d, check_iso ? "mhs1, fhs1 or motive" : "mhs1, fhs1, motive or morphism");
}

/// X and Y are compared through the double-dual, round-trip or identity isomorphisms.
Outcome cmd_compare_iso(const std::string& tx, const std::string& ty) {
    FHS1Object x = load_fhs(load(tx)), y = load_fhs(load(ty));
    IsoComparison c = compare_iso(x, y);
    if (c.certificate)
        return domain_failure(Json{{"isomorphic", false}, {"certificate", *c.certificate}},
                              "not isomorphic: " + *c.certificate);
    if (c.iso) return iso_outcome(iso_to_json(*c.iso), c.iso->verified());
    return domain_failure(Json{{"isomorphic", nullptr}}, "no canonical isomorphism between the inputs");
}

Outcome cmd_realize(const std::string& text) { return ok(doc_fhs(t_formal(load_motive(load(text))))); }

Outcome cmd_arrow(const std::string& text) { return ok(doc_motive(arrow(load_fhs(load(text))))); }

Outcome cmd_hodge(const std::string& text) {
    Motive m = load_motive(load(text));
    if (!is_etale(m)) throw Error(Errc::NotEtale, "hodge: motive has a formal or additive part");
    return ok(doc_mhs(t_hodge(m)));
}

Outcome cmd_univ_ext(const std::string& text, bool report) {
    Motive m = load_motive(load(text));
    if (!is_etale(m)) throw Error(Errc::NotEtale, "univ-ext: motive has a formal or additive part");
    if (!report) return ok(doc_motive(universal_vector_extension(m)));
    PeriodsReport rep = periods_square(m);
    Json j{{"verified", rep.ok()},
           {"transcript", transcript_to_json(rep.checks)},
           {"natural", doc_motive(rep.natural)},
           {"extension", make_document("sequence", sequence_to_json(rep.extension))}};
    return iso_outcome(j, rep.ok());
}

Outcome cmd_kernel(const std::string& text) { return ok(doc_morphism(kernel(load_morphism(load(text))).embedding)); }

Outcome cmd_cokernel(const std::string& text) {
    return ok(doc_morphism(cokernel(load_morphism(load(text))).projection));
}

/// Exactness is decided on the data as given; axiom violations are reported alongside.
Outcome cmd_check_exact(const std::string& text) {
    Document d = load(text);
    if (d.kind != "sequence") wrong_kind(d, "sequence");
    auto seq = sequence_from_json(d.payload, "/payload");
    std::vector<Violation> v = sequence_violations(seq);
    ExactnessReport rep = check_exact(seq);
    Json j = exactness_to_json(rep);
    j["violations"] = violations_to_json(v);
    if (auto f = rep.first_failure()) {
        Outcome o = domain_failure(j, "not exact at node " + std::to_string(f->first) + " on " + f->second);
        o.diagnostic["node"] = f->first;
        o.diagnostic["component"] = f->second;
        return o;
    }
    if (!v.empty()) return domain_failure(j, std::string(errc_name(v.front().code)) + ": " + v.front().detail);
    return ok(j);
}

Outcome cmd_hom(const std::string& tx, const std::string& ty) {
    HomSpace h = hom_group(load_fhs(load(tx)), load_fhs(load(ty)));
    Json vb = Json::array(), lb = Json::array();
    for (const auto& f : h.vector_basis) vb.push_back(morphism_maps_to_json(f));
    for (const auto& f : h.lattice_basis) lb.push_back(morphism_maps_to_json(f));
    return ok(Json{{"vector_dim", h.vector_dim()},
                   {"lattice_rank", h.lattice_rank()},
                   {"vector_basis", vb},
                   {"lattice_basis", lb}});
}

Outcome cmd_roundtrip(const std::string& text) {
    Document d = load(text);
    if (d.kind == "fhs1") {
        FHSIso iso = roundtrip_fm(load_fhs(d));
        return iso_outcome(iso_to_json(iso), iso.verified());
    }
    if (d.kind == "motive") {
        MotiveIso iso = roundtrip_mf(load_motive(d));
        return iso_outcome(iso_to_json(iso), iso.verified());
    }
    wrong_kind(d, "fhs1 or motive");
}

Outcome cmd_gen(const std::string& profile, std::uint64_t seed) {
    auto p = parse_profile(profile);
    if (!p) throw Error(Errc::Malformed, "unknown profile " + profile);
    switch (profile_kind(*p)) {
        case ProfileKind::Fhs:
            return ok(doc_fhs(gen_fhs(*p, seed)));
        case ProfileKind::Motive:
            return ok(doc_motive(gen_motive(*p, seed)));
        case ProfileKind::Mhs:
            return ok(doc_mhs(gen_mhs(*p, seed)));
    }
    throw Error(Errc::InternalError, "unhandled profile kind");
}

Outcome cmd_suite(std::uint64_t seeds, unsigned threads) {
    BatteryOptions opts{seeds, threads};
    auto results = run_battery(opts);
    Json j = battery_to_json(results, opts);
    if (j["status"] == "pass") return ok(j);
    return domain_failure(j, "acceptance battery has failing criteria");
}

Outcome dispatch(const std::string& command, const std::vector<std::string>& texts, const CommandOptions& opts) {
    using Unary = std::function<Outcome(const std::string&)>;
    using Binary = std::function<Outcome(const std::string&, const std::string&)>;
    static const std::map<std::string, Unary> unary{
        {"validate", cmd_validate},
        {"etale", cmd_etale},
        {"connected", cmd_connected},
        {"special-part", cmd_special_part},
        {"realize", cmd_realize},
        {"arrow", cmd_arrow},
        {"hodge", cmd_hodge},
        {"kernel", cmd_kernel},
        {"cokernel", cmd_cokernel},
        {"check-exact", cmd_check_exact},
        {"roundtrip", cmd_roundtrip},
    };
    static const std::map<std::string, Binary> binary{
        {"compare-iso", cmd_compare_iso},
        {"hom", cmd_hom},
    };
    auto arity = [&](std::size_t n) {
        if (texts.size() != n)
            throw Error(Errc::Malformed, command + " takes " + std::to_string(n) + " document(s), got " +
                                             std::to_string(texts.size()));
    };
    if (command == "dual") {
        arity(1);
        return cmd_dual(texts[0], opts.check_iso);
    }
    if (command == "univ-ext") {
        arity(1);
        return cmd_univ_ext(texts[0], opts.report);
    }
    if (command == "gen") {
        arity(0);
        return cmd_gen(opts.profile, opts.seed);
    }
    if (command == "suite") {
        arity(0);
        return cmd_suite(opts.seeds, opts.threads);
    }
    if (auto it = unary.find(command); it != unary.end()) {
        arity(1);
        return it->second(texts[0]);
    }
    if (auto it = binary.find(command); it != binary.end()) {
        arity(2);
        return it->second(texts[0], texts[1]);
    }
    throw Error(Errc::Malformed, "unknown command " + command);
}

Json error_json(const char* kind, const std::string& message) { return Json{{"error", kind}, {"message", message}}; }

/// Runs `fn` and maps exceptions onto exit codes and diagnostics.
CommandResult finish(const std::function<Outcome()>& fn) {
    Outcome o;
    try {
        o = fn();
    } catch (const ValidationError& e) {
        Json report{{"valid", false}, {"violations", violations_to_json(e.violations())}};
        o = domain_failure(report, e.what());
        o.diagnostic["code"] = std::string(errc_name(e.code()));
    } catch (const Error& e) {
        if (e.code() == Errc::Malformed) return {kExitMalformed, "", error_json("malformed", e.what()).dump() + "\n"};
        o = domain_failure(nullptr, e.what());
        o.diagnostic["code"] = std::string(errc_name(e.code()));
    } catch (const nlohmann::json::exception& e) {
        return {kExitMalformed, "", error_json("malformed", e.what()).dump() + "\n"};
    }
    CommandResult r{o.code, "", ""};
    if (!o.result.is_null()) r.out = dump(o.result);
    if (!o.diagnostic.is_null()) r.err = o.diagnostic.dump() + "\n";
    return r;
}

}  // namespace

CommandResult execute(const std::string& command, const std::vector<std::string>& texts,
                      const CommandOptions& opts) {
    return finish([&] { return dispatch(command, texts, opts); });
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact formal Hodge structures and Laumon 1-motives over Q(i)", "fhodge"};
    app.require_subcommand(1);
    std::string output;
    app.add_option("-o,--output", output, "Write the result to a file instead of stdout");

    CommandOptions opts;
    std::array<std::string, 2> files;
    std::size_t n_files = 0;
    std::string command;

    auto add = [&](const char* name, const char* help, std::vector<const char*> inputs) {
        auto* sc = app.add_subcommand(name, help);
        for (std::size_t i = 0; i < inputs.size(); ++i)
            sc->add_option(inputs[i], files[i], "Input document ('-' for stdin)")->required();
        sc->callback([&command, &n_files, name, n = inputs.size()] {
            command = name;
            n_files = n;
        });
        return sc;
    };

    add("validate", "Check every axiom of a document", {"file"});
    add("etale", "Etale part of a structure, motive or morphism", {"file"});
    add("connected", "pi(H, V) = (H0, V)", {"file"});
    add("special-part", "Connected part of a special structure or motive", {"file"});
    add("dual", "Dual structure, Cartier dual, or ihom(-, Z(1))", {"file"})
        ->add_flag("--check-iso", opts.check_iso, "Print the verified double-dual isomorphism instead");
    add("compare-iso", "Canonical isomorphism between two structures, if one applies", {"x", "y"});
    add("realize", "Formal Hodge realization of a motive", {"file"});
    add("arrow", "Motive of a formal Hodge structure", {"file"});
    add("hodge", "Hodge realization of an etale motive", {"file"});
    add("univ-ext", "Universal vector extension of an etale motive", {"file"})
        ->add_flag("--report", opts.report, "Print the periods square transcript instead");
    add("kernel", "Kernel embedding of a morphism", {"file"});
    add("cokernel", "Cokernel projection of a morphism", {"file"});
    add("check-exact", "Exactness of a sequence on every component", {"file"});
    add("hom", "Generators of hom(X, Y)", {"x", "y"});
    add("roundtrip", "Round-trip isomorphism through motives or structures", {"file"});

    auto* gen = add("gen", "Generate a random instance", {});
    gen->add_option("--profile", opts.profile, "Profile name")->required();
    gen->add_option("--seed", opts.seed, "64-bit seed")->required();

    auto* suite = add("suite", "Run the acceptance battery", {});
    suite->add_option("--seeds", opts.seeds, "Battery scale (1000 = full counts)");
    suite->add_option("--threads", opts.threads, "Worker threads (0 = all cores)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << error_json("usage", e.what()).dump() << "\n";
        return kExitMalformed;
    }

    CommandResult r = finish([&] {
        std::vector<std::string> texts;
        for (std::size_t i = 0; i < n_files; ++i) texts.push_back(read_file(files[i]));
        return dispatch(command, texts, opts);
    });

    if (!r.out.empty()) {
        if (output.empty()) {
            out << r.out;
        } else {
            std::ofstream f(output, std::ios::binary);
            if (!f) {
                err << error_json("io", "cannot write " + output).dump() << "\n";
                return kExitMalformed;
            }
            f << r.out;
        }
    }
    err << r.err;
    return r.code;
}

}  // namespace fhodge
