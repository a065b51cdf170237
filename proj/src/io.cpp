#include "fhodge/io.hpp"

#include <set>

namespace fhodge {

namespace {

[[noreturn]] void malformed(const std::string& path, const std::string& what) {
    throw Error(Errc::Malformed, (path.empty() ? std::string("/") : path) + ": " + what);
}

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

void expect_object(const Json& j, const std::string& path, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional = {}) {
    if (!j.is_object()) malformed(path, "expected an object");
    std::set<std::string> known;
    for (const char* k : required) {
        known.insert(k);
        if (!j.contains(k)) malformed(path, std::string("missing field \"") + k + "\"");
    }
    for (const char* k : optional) known.insert(k);
    for (const auto& [k, v] : j.items())
        if (!known.count(k)) malformed(path, "unknown field \"" + k + "\"");
}

std::size_t size_from_json(const Json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0) malformed(path, "expected a non-negative integer");
    if (j.get<long long>() > 4096) malformed(path, "dimension too large");
    return j.get<std::size_t>();
}

int int_from_json(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) malformed(path, "expected an integer");
    long long v = j.get<long long>();
    if (v < -1000000 || v > 1000000) malformed(path, "integer out of range");
    return static_cast<int>(v);
}

Integer integer_from_json(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Integer(j.dump());
    if (!j.is_string()) malformed(path, "expected an integer string");
    try {
        return parse_integer(j.get<std::string>());
    } catch (const Error& e) {
        malformed(path, e.what());
    }
}

Json integer_to_json(const Integer& z) { return z.get_str(); }

const Json& array_of(const Json& j, const std::string& path) {
    if (!j.is_array()) malformed(path, "expected an array");
    return j;
}

template <typename T, typename F>
Matrix<T> matrix_from_rows(const Json& j, std::size_t rows, std::size_t cols, const std::string& path, F entry) {
    array_of(j, path);
    if (j.size() != rows)
        malformed(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    Matrix<T> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        std::string rp = at(path, i);
        const Json& r = array_of(j[i], rp);
        if (r.size() != cols)
            malformed(rp, "expected " + std::to_string(cols) + " entries, got " + std::to_string(r.size()));
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = entry(r[c], at(rp, c));
    }
    return m;
}

MatrixK kmatrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& path) {
    return matrix_from_rows<Scalar>(j, rows, cols, path,
                                    [](const Json& e, const std::string& p) { return scalar_from_json(e, p); });
}

IntMatrix imatrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& path) {
    return matrix_from_rows<Integer>(j, rows, cols, path, integer_from_json);
}

/// Square integer matrix of any size.
IntMatrix square_imatrix_from_json(const Json& j, const std::string& path) {
    array_of(j, path);
    return imatrix_from_json(j, j.size(), j.size(), path);
}

template <typename T, typename F>
Json matrix_to_json(const Matrix<T>& m, F entry) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) r.push_back(entry(m(i, c)));
        rows.push_back(std::move(r));
    }
    return rows;
}

Json kmatrix_to_json(const MatrixK& m) { return matrix_to_json(m, scalar_to_json); }
Json imatrix_to_json(const IntMatrix& m) { return matrix_to_json(m, integer_to_json); }

/// A basis is a list of column vectors of length `ambient`.
Subspace basis_from_json(const Json& j, std::size_t ambient, const std::string& path) {
    array_of(j, path);
    MatrixK cols(ambient, j.size());
    for (std::size_t c = 0; c < j.size(); ++c) {
        std::string vp = at(path, c);
        const Json& v = array_of(j[c], vp);
        if (v.size() != ambient)
            malformed(vp, "expected a vector of length " + std::to_string(ambient) + ", got " +
                              std::to_string(v.size()));
        for (std::size_t i = 0; i < ambient; ++i) cols(i, c) = scalar_from_json(v[i], at(vp, i));
    }
    return Subspace::span(cols);
}

Json basis_to_json(const Subspace& s) { return kmatrix_to_json(s.basis().transpose()); }

}  // namespace

Json scalar_to_json(const Scalar& s) { return s.str(); }

Scalar scalar_from_json(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Scalar(Integer(j.dump()));
    if (!j.is_string()) malformed(path, "expected a scalar string");
    try {
        return Scalar::parse(j.get<std::string>());
    } catch (const Error& e) {
        malformed(path, e.what());
    }
}

Json mhs_to_json(const MHS1& x) {
    Json tors = Json::array();
    for (const auto& d : x.lattice.torsion()) tors.push_back(integer_to_json(d));
    return Json{{"lattice_rank", x.rank()},  {"torsion", tors},        {"w_m1", basis_to_json(x.wm1)},
                {"w_m2", basis_to_json(x.wm2)}, {"f0", basis_to_json(x.f0)}, {"tate_tag", x.tate_tag}};
}

MHS1 mhs_from_json(const Json& j, const std::string& path) {
    expect_object(j, path, {"lattice_rank", "torsion", "w_m1", "w_m2", "f0", "tate_tag"});
    std::size_t rank = size_from_json(j["lattice_rank"], at(path, "lattice_rank"));
    std::vector<Integer> torsion;
    const Json& tj = array_of(j["torsion"], at(path, "torsion"));
    for (std::size_t i = 0; i < tj.size(); ++i) {
        Integer d = integer_from_json(tj[i], at(at(path, "torsion"), i));
        if (d < 2) malformed(at(at(path, "torsion"), i), "torsion orders must be at least 2");
        if (!torsion.empty() && d % torsion.back() != 0)
            malformed(at(at(path, "torsion"), i), "torsion orders must divide each other in order");
        torsion.push_back(d);
    }
    MHS1 x;
    x.lattice = FgAbGroup(rank, torsion);
    x.wm1 = basis_from_json(j["w_m1"], rank, at(path, "w_m1"));
    x.wm2 = basis_from_json(j["w_m2"], rank, at(path, "w_m2"));
    x.f0 = basis_from_json(j["f0"], rank, at(path, "f0"));
    x.tate_tag = int_from_json(j["tate_tag"], at(path, "tate_tag"));
    return x;
}

Json fhs_to_json(const FHS1Object& x) {
    return Json{{"h0_dim", x.s},
                {"het", mhs_to_json(x.het)},
                {"v_dim", x.n},
                {"v0", basis_to_json(x.v0)},
                {"v1", basis_to_json(x.v1)},
                {"v0_map", kmatrix_to_json(x.v0_map)},
                {"vz_map", kmatrix_to_json(x.vz_map)},
                {"sigma", kmatrix_to_json(x.sigma)}};
}

FHS1Object fhs_from_json(const Json& j, const std::string& path) {
    expect_object(j, path, {"h0_dim", "het", "v_dim", "v0", "v1", "v0_map", "vz_map", "sigma"});
    FHS1Object x;
    x.s = size_from_json(j["h0_dim"], at(path, "h0_dim"));
    x.het = mhs_from_json(j["het"], at(path, "het"));
    x.n = size_from_json(j["v_dim"], at(path, "v_dim"));
    x.v0 = basis_from_json(j["v0"], x.n, at(path, "v0"));
    x.v1 = basis_from_json(j["v1"], x.n, at(path, "v1"));
    x.v0_map = kmatrix_from_json(j["v0_map"], x.n, x.s, at(path, "v0_map"));
    x.vz_map = kmatrix_from_json(j["vz_map"], x.n, x.het.rank(), at(path, "vz_map"));
    std::size_t rows = x.n - x.v0.dim(), cols = x.het.rank() - x.het.f0.dim();
    x.sigma = kmatrix_from_json(j["sigma"], rows, cols, at(path, "sigma"));
    return x;
}

Json morphism_maps_to_json(const FHS1Morphism& f) {
    return Json{{"f0", kmatrix_to_json(f.f0)}, {"fz", imatrix_to_json(f.fz.matrix())}, {"g", kmatrix_to_json(f.g)}};
}

FHS1Morphism morphism_from_maps(const Json& j, const FHS1Object& source, const FHS1Object& target,
                                const std::string& path) {
    expect_object(j, path, {"f0", "fz", "g"}, {"source", "target"});
    FHS1Morphism f;
    f.source = source;
    f.target = target;
    f.f0 = kmatrix_from_json(j["f0"], target.s, source.s, at(path, "f0"));
    IntMatrix fz =
        imatrix_from_json(j["fz"], target.het.lattice.ngens(), source.het.lattice.ngens(), at(path, "fz"));
    // a map that is not well defined on torsion is a domain error, not a syntax error
    f.fz = LatticeMap(source.het.lattice, target.het.lattice, fz);
    f.g = kmatrix_from_json(j["g"], target.n, source.n, at(path, "g"));
    return f;
}

Json morphism_to_json(const FHS1Morphism& f) {
    Json j{{"source", fhs_to_json(f.source)}, {"target", fhs_to_json(f.target)}};
    Json maps = morphism_maps_to_json(f);
    for (auto& [k, v] : maps.items()) j[k] = v;
    return j;
}

FHS1Morphism morphism_from_json(const Json& j, const std::string& path) {
    expect_object(j, path, {"source", "target", "f0", "fz", "g"});
    FHS1Object s = fhs_from_json(j["source"], at(path, "source"));
    FHS1Object t = fhs_from_json(j["target"], at(path, "target"));
    return morphism_from_maps(j, s, t, path);
}

Json sequence_to_json(const std::vector<FHS1Morphism>& seq) {
    Json objects = Json::array(), morphisms = Json::array();
    if (!seq.empty()) objects.push_back(fhs_to_json(seq.front().source));
    for (const auto& f : seq) {
        objects.push_back(fhs_to_json(f.target));
        morphisms.push_back(morphism_maps_to_json(f));
    }
    return Json{{"objects", objects}, {"morphisms", morphisms}};
}

std::vector<FHS1Morphism> sequence_from_json(const Json& j, const std::string& path) {
    expect_object(j, path, {"objects", "morphisms"});
    const Json& oj = array_of(j["objects"], at(path, "objects"));
    const Json& mj = array_of(j["morphisms"], at(path, "morphisms"));
    if (oj.empty() ? !mj.empty() : mj.size() + 1 != oj.size())
        malformed(path, "a sequence of m morphisms needs m + 1 objects");
    std::vector<FHS1Object> objects;
    for (std::size_t i = 0; i < oj.size(); ++i) objects.push_back(fhs_from_json(oj[i], at(at(path, "objects"), i)));
    std::vector<FHS1Morphism> seq;
    for (std::size_t i = 0; i < mj.size(); ++i)
        seq.push_back(morphism_from_maps(mj[i], objects[i], objects[i + 1], at(at(path, "morphisms"), i)));
    return seq;
}

Json motive_to_json(const Motive& m) {
    Json j{{"lie_f0_dim", m.s},
           {"fet_rank", m.r},
           {"lie_g_dim", m.n},
           {"add", basis_to_json(m.add)},
           {"toradd", basis_to_json(m.toradd)},
           {"lambda", kmatrix_to_json(m.lambda)},
           {"ell", kmatrix_to_json(m.ell)},
           {"u0", kmatrix_to_json(m.u0)}};
    if (m.polarization) j["polarization"] = imatrix_to_json(*m.polarization);
    return j;
}

Motive motive_from_json(const Json& j, const std::string& path) {
    expect_object(j, path, {"lie_f0_dim", "fet_rank", "lie_g_dim", "add", "toradd", "lambda", "ell", "u0"},
                  {"polarization"});
    Motive m;
    m.s = size_from_json(j["lie_f0_dim"], at(path, "lie_f0_dim"));
    m.r = size_from_json(j["fet_rank"], at(path, "fet_rank"));
    m.n = size_from_json(j["lie_g_dim"], at(path, "lie_g_dim"));
    m.add = basis_from_json(j["add"], m.n, at(path, "add"));
    m.toradd = basis_from_json(j["toradd"], m.n, at(path, "toradd"));
    // lambda: n rows of k entries; k is read off the first row
    const Json& lj = array_of(j["lambda"], at(path, "lambda"));
    std::size_t k = lj.empty() ? 0 : array_of(lj[0], at(at(path, "lambda"), 0)).size();
    m.lambda = kmatrix_from_json(lj, m.n, k, at(path, "lambda"));
    m.ell = kmatrix_from_json(j["ell"], m.n, m.r, at(path, "ell"));
    m.u0 = kmatrix_from_json(j["u0"], m.n, m.s, at(path, "u0"));
    if (j.contains("polarization") && !j["polarization"].is_null())
        m.polarization = square_imatrix_from_json(j["polarization"], at(path, "polarization"));
    return m;
}

Json motive_morphism_to_json(const MotiveMorphism& f) {
    return Json{{"source", motive_to_json(f.source)},
                {"target", motive_to_json(f.target)},
                {"f0", kmatrix_to_json(f.f0)},
                {"fet", imatrix_to_json(f.fet)},
                {"g", kmatrix_to_json(f.g)}};
}

Json transcript_to_json(const std::vector<Check>& checks) {
    Json out = Json::array();
    for (const auto& c : checks) out.push_back(Json{{"check", c.name}, {"status", c.ok ? "pass" : "fail"}});
    return out;
}

Json iso_to_json(const FHSIso& iso) {
    return Json{{"verified", iso.verified()},
                {"transcript", transcript_to_json(iso.transcript)},
                {"forward", morphism_to_json(iso.forward)},
                {"backward", morphism_maps_to_json(iso.backward)}};
}

Json iso_to_json(const MotiveIso& iso) {
    Json back = motive_morphism_to_json(iso.backward);
    back.erase("source");
    back.erase("target");
    return Json{{"verified", iso.verified()},
                {"transcript", transcript_to_json(iso.transcript)},
                {"forward", motive_morphism_to_json(iso.forward)},
                {"backward", back}};
}

Json exactness_to_json(const ExactnessReport& r) {
    Json nodes = Json::array();
    for (const auto& n : r.nodes) {
        Json comps = Json::array();
        for (const auto& [name, ok] : n.components)
            comps.push_back(Json{{"check", name}, {"status", ok ? "pass" : "fail"}});
        nodes.push_back(Json{{"node", n.node}, {"exact", n.exact()}, {"components", comps}});
    }
    Json j{{"exact", r.exact()}, {"nodes", nodes}};
    if (auto f = r.first_failure()) j["first_failure"] = Json{{"node", f->first}, {"component", f->second}};
    return j;
}

Json violations_to_json(const std::vector<Violation>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(Json{{"code", std::string(errc_name(x.code))}, {"detail", x.detail}});
    return out;
}

Json make_document(const std::string& kind, Json payload) {
    return Json{{"format_version", kFormatVersion}, {"kind", kind}, {"payload", std::move(payload)}, {"field", kField}};
}

Document parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::Malformed, std::string("invalid JSON: ") + e.what());
    }
    expect_object(j, "", {"format_version", "kind", "payload", "field"});
    if (!j["format_version"].is_number_integer() || j["format_version"].get<long long>() != kFormatVersion)
        malformed("/format_version", "unsupported format version");
    if (!j["field"].is_string() || j["field"].get<std::string>() != kField) malformed("/field", "field must be Q(i)");
    if (!j["kind"].is_string()) malformed("/kind", "expected a string");
    std::string kind = j["kind"].get<std::string>();
    static const std::set<std::string> kinds{"mhs1", "fhs1", "motive", "morphism", "sequence"};
    if (!kinds.count(kind)) malformed("/kind", "unknown kind \"" + kind + "\"");
    return {kind, j["payload"]};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace fhodge
