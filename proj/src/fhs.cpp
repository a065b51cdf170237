#include "fhodge/fhs.hpp"

#include <algorithm>
#include <functional>

namespace fhodge {

namespace {

MatrixK fz_k(const LatticeMap& f) { return to_k(f.rational()); }

QuotientMap quot_f(const FHS1Object& x) { return quotient_map(x.het.f0); }
QuotientMap quot_v(const FHS1Object& x) { return quotient_map(x.v0); }

bool same_shape(const MatrixK& m, std::size_t r, std::size_t c) { return m.rows() == r && m.cols() == c; }

void ensure_valid(const FHS1Object& x, const char* what) {
    auto v = fhs_violations(x);
    if (!v.empty())
        throw Error(Errc::InternalError,
                    std::string(what) + ": induced structure fails " + std::string(errc_name(v.front().code)) + " (" +
                        v.front().detail + ")");
}

}  // namespace

MatrixK induced_sigma(const FHS1Object& x) { return quot_v(x).project * x.vz_map * quot_f(x).section; }

FHS1Object with_induced_sigma(FHS1Object x) {
    x.sigma = induced_sigma(x);
    return x;
}

std::vector<Violation> fhs_violations(const FHS1Object& x) {
    std::vector<Violation> out;
    for (const auto& v : mhs_violations(x.het))
        out.push_back({Errc::EtalePartInvalid, std::string(errc_name(v.code)) + ": " + v.detail});
    if (!out.empty()) return out;

    const std::size_t h = x.het.rank();
    if (x.v0.ambient() != x.n || x.v1.ambient() != x.n || !same_shape(x.v0_map, x.n, x.s) ||
        !same_shape(x.vz_map, x.n, h)) {
        out.push_back({Errc::DimensionMismatch, "component shapes do not match s, n and the lattice rank"});
        return out;
    }
    if (!x.v1.contains(x.v0)) out.push_back({Errc::BadFiltration, "V0 is not contained in V1"});

    QuotientMap qf = quot_f(x), qv = quot_v(x);
    if (!same_shape(x.sigma, qv.dim(), qf.dim()) || !is_invertible(x.sigma)) {
        out.push_back({Errc::SigmaNotIso, "sigma is not an isomorphism H_K/F0 -> V/V0"});
        return out;
    }
    if (!(image(x.sigma * qf.project, x.het.wm2) == image(qv.project, x.v1)))
        out.push_back({Errc::SigmaW2Mismatch, "sigma does not carry W-2 onto V1/V0"});
    if (!(qv.project * x.vz_map == x.sigma * qf.project))
        out.push_back({Errc::Square1Broken, "pr . vz != sigma . c"});
    if (!x.v0.contains(x.vz_map * x.het.f0.basis()))
        out.push_back({Errc::DerivedF0NotInV0, "vz(F0) is not contained in V0"});
    return out;
}

const FHS1Object& validate_fhs(const FHS1Object& x) {
    auto v = fhs_violations(x);
    if (!v.empty()) throw ValidationError(std::move(v));
    return x;
}

FHS1Object zero_object() {
    return {0, zero_mhs(), 0, Subspace(0), Subspace(0), MatrixK(0, 0), MatrixK(0, 0), MatrixK(0, 0)};
}

FHS1Object direct_sum(const FHS1Object& a, const FHS1Object& b) {
    FHS1Object x;
    x.s = a.s + b.s;
    x.het = direct_sum(a.het, b.het);
    x.n = a.n + b.n;
    x.v0 = Subspace::span(direct_sum(a.v0.basis(), b.v0.basis()));
    x.v1 = Subspace::span(direct_sum(a.v1.basis(), b.v1.basis()));
    x.v0_map = direct_sum(a.v0_map, b.v0_map);
    x.vz_map = direct_sum(a.vz_map, b.vz_map);
    return with_induced_sigma(std::move(x));
}

MatrixK induced_fbar(const FHS1Morphism& f) {
    return quot_f(f.target).project * fz_k(f.fz) * quot_f(f.source).section;
}

MatrixK induced_gbar(const FHS1Morphism& f) {
    return quot_v(f.target).project * f.g * quot_v(f.source).section;
}

std::vector<Violation> morphism_violations(const FHS1Morphism& f) {
    std::vector<Violation> out;
    const FHS1Object& x = f.source;
    const FHS1Object& y = f.target;
    if (!same_shape(f.f0, y.s, x.s) || !same_shape(f.g, y.n, x.n) || !(f.fz.source() == x.het.lattice) ||
        !(f.fz.target() == y.het.lattice)) {
        out.push_back({Errc::DimensionMismatch, "morphism components do not match the objects"});
        return out;
    }
    for (const auto& v : mhs_morphism_violations(f.fz, x.het, y.het))
        out.push_back({Errc::EtaleComponentNotMHS, v.detail});
    if (!y.v0.contains(image(f.g, x.v0))) out.push_back({Errc::NotFiltered, "g(V0) not in V'0"});
    if (!y.v1.contains(image(f.g, x.v1))) out.push_back({Errc::NotFiltered, "g(V1) not in V'1"});
    MatrixK fz = fz_k(f.fz);
    if (!(y.v0_map * f.f0 == f.g * x.v0_map)) out.push_back({Errc::Square2Broken, "v'0 . f0 != g . v0"});
    if (!(y.vz_map * fz == f.g * x.vz_map)) out.push_back({Errc::Square2Broken, "v'z . fz != g . vz"});
    if (out.empty() && !(y.sigma * induced_fbar(f) == induced_gbar(f) * x.sigma)) {
        // on valid objects this follows from square (2); surface it loudly
        out.push_back({Errc::Square3Broken, "sigma' . fbar != gbar . sigma"});
        if (fhs_violations(x).empty() && fhs_violations(y).empty())
            out.push_back({Errc::InternalError, "square (3) fails although square (2) holds"});
    }
    return out;
}

const FHS1Morphism& validate_morphism(const FHS1Morphism& f) {
    auto v = morphism_violations(f);
    if (!v.empty()) throw ValidationError(std::move(v));
    return f;
}

FHS1Morphism identity(const FHS1Object& x) {
    return {x, x, MatrixK::identity(x.s), LatticeMap::identity(x.het.lattice), MatrixK::identity(x.n)};
}

FHS1Morphism zero_morphism(const FHS1Object& x, const FHS1Object& y) {
    return {x, y, MatrixK(y.s, x.s), LatticeMap::zero(x.het.lattice, y.het.lattice), MatrixK(y.n, x.n)};
}

FHS1Morphism compose(const FHS1Morphism& g, const FHS1Morphism& f) {
    if (!(f.target == g.source)) throw Error(Errc::NotComposable, "morphisms are not composable");
    return {f.source, g.target, g.f0 * f.f0, compose(g.fz, f.fz), g.g * f.g};
}

FHS1Morphism inverse(const FHS1Morphism& f) {
    auto f0 = fhodge::inverse(f.f0);
    auto g = fhodge::inverse(f.g);
    std::optional<IntMatrix> z;
    if (f.fz.source().is_free() && f.fz.target().is_free()) z = unimodular_inverse(f.fz.matrix());
    if (!f0 || !g || !z) throw Error(Errc::NotInjective, "morphism is not invertible");
    return {f.target, f.source, *f0, LatticeMap(f.fz.target(), f.fz.source(), *z), *g};
}

FHS1Morphism direct_sum(const FHS1Morphism& a, const FHS1Morphism& b) {
    FHS1Object x = direct_sum(a.source, b.source), y = direct_sum(a.target, b.target);
    return {x, y, direct_sum(a.f0, b.f0), LatticeMap(x.het.lattice, y.het.lattice, direct_sum(a.fz.matrix(), b.fz.matrix())),
            direct_sum(a.g, b.g)};
}

namespace {

template <typename T>
Matrix<T> inclusion_block(std::size_t na, std::size_t nb, int which) {
    Matrix<T> m(na + nb, which == 0 ? na : nb);
    std::size_t off = which == 0 ? 0 : na;
    for (std::size_t i = 0; i < m.cols(); ++i) m(off + i, i) = T(1);
    return m;
}

}  // namespace

FHS1Morphism sum_inclusion(const FHS1Object& a, const FHS1Object& b, int which) {
    FHS1Object s = direct_sum(a, b);
    const FHS1Object& part = which == 0 ? a : b;
    return {part, s, inclusion_block<Scalar>(a.s, b.s, which),
            LatticeMap(part.het.lattice, s.het.lattice, inclusion_block<Integer>(a.het.rank(), b.het.rank(), which)),
            inclusion_block<Scalar>(a.n, b.n, which)};
}

FHS1Morphism sum_projection(const FHS1Object& a, const FHS1Object& b, int which) {
    FHS1Object s = direct_sum(a, b);
    const FHS1Object& part = which == 0 ? a : b;
    return {s, part, inclusion_block<Scalar>(a.s, b.s, which).transpose(),
            LatticeMap(s.het.lattice, part.het.lattice,
                       inclusion_block<Integer>(a.het.rank(), b.het.rank(), which).transpose()),
            inclusion_block<Scalar>(a.n, b.n, which).transpose()};
}

FHS1Morphism add(const FHS1Morphism& f, const FHS1Morphism& g) {
    if (!(f.source == g.source) || !(f.target == g.target)) throw Error(Errc::NotComposable, "add: not parallel");
    return {f.source, f.target, f.f0 + g.f0, LatticeMap(f.fz.source(), f.fz.target(), f.fz.matrix() + g.fz.matrix()),
            f.g + g.g};
}

FHS1Morphism scale(const FHS1Morphism& f, long k) {
    return {f.source, f.target, f.f0 * Scalar(k), LatticeMap(f.fz.source(), f.fz.target(), f.fz.matrix() * Integer(k)),
            f.g * Scalar(k)};
}

FHSSubobject kernel(const FHS1Morphism& f) {
    validate_morphism(f);
    const FHS1Object& x = f.source;
    Subspace k0 = kernel(f.f0);
    Subspace kg = kernel(f.g);
    MHSSubobject kz = mhs_kernel(f.fz, x.het, f.target.het);
    FHS1Object k;
    k.s = k0.dim();
    k.het = kz.object;
    k.n = kg.dim();
    k.v0 = preimage(kg.basis(), x.v0);
    k.v1 = preimage(kg.basis(), x.v1);
    k.v0_map = coordinates(kg, x.v0_map * k0.basis());
    k.vz_map = coordinates(kg, x.vz_map * fz_k(kz.embedding));
    k = with_induced_sigma(std::move(k));
    ensure_valid(k, "kernel");
    FHS1Morphism emb{k, x, k0.basis(), kz.embedding, kg.basis()};
    return {k, emb};
}

FHSQuotient cokernel(const FHS1Morphism& f) {
    validate_morphism(f);
    const FHS1Object& y = f.target;
    QuotientMap q0 = quotient_map(image(f.f0));
    QuotientMap qg = quotient_map(image(f.g));
    MHSQuotient cz = mhs_cokernel(f.fz, f.source.het, y.het);
    FHS1Object c;
    c.s = q0.dim();
    c.het = cz.object;
    c.n = qg.dim();
    c.v0 = image(qg.project, y.v0);
    c.v1 = image(qg.project, y.v1);
    c.v0_map = qg.project * y.v0_map * q0.section;
    c.vz_map = qg.project * y.vz_map * to_k(cz.lifts.block(0, 0, y.het.rank(), c.het.rank()));
    c = with_induced_sigma(std::move(c));
    ensure_valid(c, "cokernel");
    FHS1Morphism proj{y, c, q0.project, cz.projection, qg.project};
    return {c, proj, cz.lifts};
}

FHSImage image(const FHS1Morphism& f) {
    validate_morphism(f);
    const FHS1Object& y = f.target;
    Subspace i0 = image(f.f0);
    Subspace ig = image(f.g);
    MHSImage iz = mhs_image(f.fz, f.source.het, y.het);
    FHS1Object im;
    im.s = i0.dim();
    im.het = iz.object;
    im.n = ig.dim();
    im.v0 = preimage(ig.basis(), y.v0);
    im.v1 = preimage(ig.basis(), y.v1);
    im.v0_map = coordinates(ig, y.v0_map * i0.basis());
    im.vz_map = coordinates(ig, y.vz_map * fz_k(iz.embedding));
    im = with_induced_sigma(std::move(im));
    ensure_valid(im, "image");
    FHS1Morphism emb{im, y, i0.basis(), iz.embedding, ig.basis()};
    FHS1Morphism core{f.source, im, coordinates(i0, f.f0), iz.corestriction, coordinates(ig, f.g)};
    return {im, emb, core};
}

FHS1Morphism factor_through_kernel(const FHSSubobject& k, const FHS1Morphism& h) {
    const FHS1Morphism& e = k.embedding;
    if (!(h.target == e.target)) throw Error(Errc::NotComposable, "factor_through_kernel: codomain mismatch");
    if (!e.target.het.lattice.is_free()) throw Error(Errc::TorsionInput, "factor_through_kernel: torsion");
    auto z = integer_solve(e.fz.matrix(), h.fz.matrix());
    auto f0 = solve(e.f0, h.f0);
    auto g = solve(e.g, h.g);
    if (!z || !f0 || !g || !(e.f0 * *f0 == h.f0) || !(e.g * *g == h.g))
        throw Error(Errc::NotContained, "factor_through_kernel: morphism does not land in the kernel");
    FHS1Morphism u{h.source, k.object, *f0, LatticeMap(h.fz.source(), k.object.het.lattice, *z), *g};
    validate_morphism(u);
    return u;
}

FHS1Morphism factor_through_cokernel(const FHSQuotient& c, const FHS1Morphism& h) {
    const FHS1Morphism& p = c.projection;
    if (!(h.source == p.source)) throw Error(Errc::NotComposable, "factor_through_cokernel: domain mismatch");
    MatrixK s0 = solve_or_throw(p.f0, MatrixK::identity(p.f0.rows()), "cokernel section");
    MatrixK sg = solve_or_throw(p.g, MatrixK::identity(p.g.rows()), "cokernel section");
    FHS1Morphism u{c.object, h.target, h.f0 * s0, LatticeMap(c.object.het.lattice, h.target.het.lattice,
                                                             h.fz.matrix() * c.lattice_lifts),
                   h.g * sg};
    validate_morphism(u);
    if (!(compose(u, p) == h)) throw Error(Errc::NotContained, "factor_through_cokernel: h does not kill the image");
    return u;
}

bool NodeReport::exact() const {
    return std::all_of(components.begin(), components.end(), [](const auto& c) { return c.second; });
}

bool ExactnessReport::exact() const {
    return std::all_of(nodes.begin(), nodes.end(), [](const NodeReport& n) { return n.exact(); });
}

std::optional<std::pair<std::size_t, std::string>> ExactnessReport::first_failure() const {
    for (const auto& n : nodes)
        for (const auto& c : n.components)
            if (!c.second) return std::make_pair(n.node, c.first);
    return std::nullopt;
}

namespace {

bool exact_on(const MatrixK& f, const Subspace& a, const MatrixK& g, const Subspace& b) {
    return image(f, a) == intersect(kernel(g), b);
}

}  // namespace

std::vector<Violation> sequence_violations(const std::vector<FHS1Morphism>& seq) {
    std::vector<Violation> v;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i == 0)
            for (auto& x : fhs_violations(seq[i].source)) v.push_back(x);
        for (auto& x : fhs_violations(seq[i].target)) v.push_back(x);
    }
    if (v.empty())
        for (const auto& f : seq)
            for (auto& x : morphism_violations(f)) v.push_back(x);
    return v;
}

ExactnessReport check_exact(const std::vector<FHS1Morphism>& seq) {
    for (std::size_t i = 1; i < seq.size(); ++i)
        if (!(seq[i - 1].target == seq[i].source))
            throw Error(Errc::NotComposable, "sequence: morphism " + std::to_string(i) + " is not composable");
    ExactnessReport report;
    for (std::size_t i = 1; i < seq.size(); ++i) {
        const FHS1Morphism& f = seq[i - 1];
        const FHS1Morphism& g = seq[i];
        const FHS1Object& a = f.source;
        const FHS1Object& b = f.target;
        NodeReport node;
        node.node = i;
        MatrixK fk = fz_k(f.fz), gk = fz_k(g.fz);
        node.components = {
            {"lie", image(f.f0) == kernel(g.f0)},
            {"lattice", lattice_exact_at(f.fz, g.fz)},
            {"v", image(f.g) == kernel(g.g)},
            {"v0", exact_on(f.g, a.v0, g.g, b.v0)},
            {"v1", exact_on(f.g, a.v1, g.g, b.v1)},
            {"w_m1", exact_on(fk, a.het.wm1, gk, b.het.wm1)},
            {"w_m2", exact_on(fk, a.het.wm2, gk, b.het.wm2)},
            {"f0", exact_on(fk, a.het.f0, gk, b.het.f0)},
        };
        report.nodes.push_back(std::move(node));
    }
    return report;
}

std::vector<FHS1Morphism> short_sequence(const FHS1Morphism& f, const FHS1Morphism& g) {
    FHS1Object z = zero_object();
    return {zero_morphism(z, f.source), f, g, zero_morphism(g.target, z)};
}

FHS1Object etale_part(const FHS1Object& x) {
    QuotientMap qv = quot_v(x);
    FHS1Object e;
    e.s = 0;
    e.het = x.het;
    e.n = qv.dim();
    e.v0 = Subspace(e.n);
    e.v1 = image(qv.project, x.v1);
    e.v0_map = MatrixK(e.n, 0);
    e.vz_map = qv.project * x.vz_map;
    e.sigma = x.sigma;
    return e;
}

FHS1Morphism etale_part(const FHS1Morphism& f) {
    FHS1Object x = etale_part(f.source), y = etale_part(f.target);
    return {x, y, MatrixK(0, 0), f.fz, induced_gbar(f)};
}

FHS1Object canonical_etale(const MHS1& h) {
    QuotientMap qf = quotient_map(h.f0);
    FHS1Object c;
    c.s = 0;
    c.het = h;
    c.n = qf.dim();
    c.v0 = Subspace(c.n);
    c.v1 = image(qf.project, h.wm2);
    c.v0_map = MatrixK(c.n, 0);
    c.vz_map = qf.project;
    c.sigma = MatrixK::identity(c.n);
    return c;
}

FHS1Morphism canonical_etale(const LatticeMap& f, const MHS1& a, const MHS1& b) {
    validate_mhs_morphism(f, a, b);
    FHS1Object x = canonical_etale(a), y = canonical_etale(b);
    MatrixK g = quotient_map(b.f0).project * fz_k(f) * quotient_map(a.f0).section;
    return {x, y, MatrixK(0, 0), f, g};
}

bool is_etale(const FHS1Object& x) { return x.s == 0 && x.v0.is_zero(); }
bool is_connected(const FHS1Object& x) { return x.het.lattice.is_trivial(); }
bool is_special(const FHS1Object& x) { return x.v0.contains(x.v0_map); }
bool is_free(const FHS1Object& x) { return x.het.lattice.is_free(); }

FHS1Object pi_connected(const FHS1Object& x) { return linear_to_connected(x.v0_map); }

FHS1Morphism pi_connected(const FHS1Morphism& f) {
    FHS1Object x = pi_connected(f.source), y = pi_connected(f.target);
    return {x, y, f.f0, LatticeMap::zero(x.het.lattice, y.het.lattice), f.g};
}

FHS1Object embed_vector(std::size_t n) { return linear_to_connected(MatrixK(n, 0)); }

FHS1Object embed_formal(std::size_t s) { return linear_to_connected(MatrixK(0, s)); }

FHS1Object quotient_by_v0(const FHS1Object& x) {
    QuotientMap qv = quot_v(x);
    FHS1Object q = etale_part(x);
    q.s = x.s;
    q.v0_map = qv.project * x.v0_map;
    return q;
}

FHSSubobject connected_part(const FHS1Object& x) {
    if (!is_special(x)) throw Error(Errc::NotSpecial, "connected_part: v(H0) is not contained in V0");
    FHS1Object c = linear_to_connected(coordinates(x.v0, x.v0_map));
    FHS1Morphism emb{c, x, MatrixK::identity(x.s), LatticeMap::zero(c.het.lattice, x.het.lattice), x.v0.basis()};
    return {c, emb};
}

std::vector<FHS1Morphism> seq4(const FHS1Object& x) {
    FHS1Object e = etale_part(x), q = quotient_by_v0(x), h0 = embed_formal(x.s);
    FHS1Morphism a{e, q, MatrixK(x.s, 0), LatticeMap::identity(x.het.lattice), MatrixK::identity(q.n)};
    FHS1Morphism b{q, h0, MatrixK::identity(x.s), LatticeMap::zero(x.het.lattice, h0.het.lattice), MatrixK(0, q.n)};
    return short_sequence(a, b);
}

std::vector<FHS1Morphism> seq5(const FHS1Object& x) {
    if (!is_special(x)) throw Error(Errc::NotSpecial, "seq5: structure is not special");
    FHSSubobject c = connected_part(x);
    FHS1Object e = etale_part(x);
    FHS1Morphism p{x, e, MatrixK(0, x.s), LatticeMap::identity(x.het.lattice), quot_v(x).project};
    return short_sequence(c.embedding, p);
}

MatrixK connected_to_linear(const FHS1Object& x) {
    if (!is_connected(x)) throw Error(Errc::NotConnected, "structure has a nonzero etale lattice");
    return x.v0_map;
}

FHS1Object linear_to_connected(const MatrixK& map) {
    FHS1Object c;
    c.s = map.cols();
    c.het = zero_mhs();
    c.n = map.rows();
    c.v0 = Subspace::full(c.n);
    c.v1 = Subspace::full(c.n);
    c.v0_map = map;
    c.vz_map = MatrixK(c.n, 0);
    c.sigma = MatrixK(0, 0);
    return c;
}

// Hom groups ---------------------------------------------------------------

namespace {

void append(std::vector<Scalar>& out, const MatrixK& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
}

struct HomUnknowns {
    std::size_t s0, s1, n0, n1, r0, r1;
    std::size_t nf0() const { return s1 * s0; }
    std::size_t ng() const { return n1 * n0; }
    std::size_t nz() const { return r1 * r0; }
    std::size_t total() const { return nf0() + ng() + nz(); }

    void unpack(const MatrixK& v, MatrixK& f0, MatrixK& g, MatrixK& fz) const {
        f0 = MatrixK(s1, s0);
        g = MatrixK(n1, n0);
        fz = MatrixK(r1, r0);
        std::size_t k = 0;
        for (std::size_t i = 0; i < s1; ++i)
            for (std::size_t j = 0; j < s0; ++j) f0(i, j) = v(k++, 0);
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n0; ++j) g(i, j) = v(k++, 0);
        for (std::size_t i = 0; i < r1; ++i)
            for (std::size_t j = 0; j < r0; ++j) fz(i, j) = v(k++, 0);
    }
};

}  // namespace

bool HomSpace::contains(const FHS1Morphism& f) const {
    return f.source == source && f.target == target && morphism_violations(f).empty();
}

HomSpace hom_group(const FHS1Object& x, const FHS1Object& y) {
    if (!is_free(x) || !is_free(y)) throw Error(Errc::NotFree, "hom_group: lattices must be free");
    HomUnknowns u{x.s, y.s, x.n, y.n, x.het.rank(), y.het.rank()};
    QuotientMap qv0 = quotient_map(y.v0), qv1 = quotient_map(y.v1);
    QuotientMap qw2 = quotient_map(y.het.wm2), qw1 = quotient_map(y.het.wm1), qf = quotient_map(y.het.f0);

    auto residual = [&](const MatrixK& f0, const MatrixK& g, const MatrixK& fz) {
        std::vector<Scalar> r;
        append(r, qv0.project * g * x.v0.basis());
        append(r, qv1.project * g * x.v1.basis());
        append(r, qw2.project * fz * x.het.wm2.basis());
        append(r, qw1.project * fz * x.het.wm1.basis());
        append(r, qf.project * fz * x.het.f0.basis());
        append(r, y.v0_map * f0 - g * x.v0_map);
        append(r, y.vz_map * fz - g * x.vz_map);
        return r;
    };

    const std::size_t total = u.total();
    std::vector<std::vector<Scalar>> cols;
    cols.reserve(total);
    for (std::size_t k = 0; k < total; ++k) {
        MatrixK e(total, 1);
        e(k, 0) = 1;
        MatrixK f0, g, fz;
        u.unpack(e, f0, g, fz);
        cols.push_back(residual(f0, g, fz));
    }
    MatrixK zero_f0, zero_g, zero_fz;
    u.unpack(MatrixK(total, 1), zero_f0, zero_g, zero_fz);
    const std::size_t m = residual(zero_f0, zero_g, zero_fz).size();
    MatrixK a(m, total);
    for (std::size_t k = 0; k < total; ++k)
        for (std::size_t i = 0; i < m; ++i) a(i, k) = cols[k][i];

    const std::size_t nfg = u.nf0() + u.ng(), nz = u.nz();
    // one elimination of [A_fg | A_z]: rows pivoting in the A_z block constrain
    // fz alone, the others express pivot (f0, g) unknowns through the free ones
    auto e = rref(a);
    std::vector<std::size_t> fg_rows, z_rows;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) (e.pivots[r] < nfg ? fg_rows : z_rows).push_back(r);

    auto build = [&](const MatrixK& v) {
        MatrixK f0, g, fz;
        u.unpack(v, f0, g, fz);
        FHS1Morphism f{x, y, f0, LatticeMap(x.het.lattice, y.het.lattice, as_integer(fz)), g};
        return f;
    };

    HomSpace hs{x, y, {}, {}};
    MatrixK afg_reduced = e.reduced.select_rows(fg_rows).block(0, 0, fg_rows.size(), nfg);
    MatrixK kfg = kernel_basis(afg_reduced);
    for (std::size_t j = 0; j < kfg.cols(); ++j) hs.vector_basis.push_back(build(vcat(kfg.column(j), MatrixK(nz, 1))));

    if (nz > 0) {
        MatrixK cz = e.reduced.select_rows(z_rows).block(0, nfg, z_rows.size(), nz);
        IntMatrix zs = integer_kernel(vcat(real_part(cz), imag_part(cz)));
        MatrixK bz = e.reduced.select_rows(fg_rows).block(0, nfg, fg_rows.size(), nz);
        for (std::size_t j = 0; j < zs.cols(); ++j) {
            MatrixK z = to_k(zs.column(j));
            MatrixK lift(nfg, 1);
            MatrixK rhs = bz * z;
            for (std::size_t i = 0; i < fg_rows.size(); ++i) lift(e.pivots[fg_rows[i]], 0) = -rhs(i, 0);
            hs.lattice_basis.push_back(build(vcat(lift, z)));
        }
    }
    for (const auto& f : hs.vector_basis) validate_morphism(f);
    for (const auto& f : hs.lattice_basis) validate_morphism(f);
    return hs;
}

std::optional<std::string> non_iso_certificate(const FHS1Object& x, const FHS1Object& y) {
    auto differ = [](const char* what, std::size_t a, std::size_t b) -> std::optional<std::string> {
        if (a == b) return std::nullopt;
        return std::string(what) + ": " + std::to_string(a) + " != " + std::to_string(b);
    };
    const std::pair<const char*, std::pair<std::size_t, std::size_t>> inv[] = {
        {"dim Lie H0", {x.s, y.s}},
        {"dim V", {x.n, y.n}},
        {"dim V0", {x.v0.dim(), y.v0.dim()}},
        {"dim V1", {x.v1.dim(), y.v1.dim()}},
        {"lattice rank", {x.het.rank(), y.het.rank()}},
        {"rank W-1", {x.het.wm1.dim(), y.het.wm1.dim()}},
        {"rank W-2", {x.het.wm2.dim(), y.het.wm2.dim()}},
        {"dim F0", {x.het.f0.dim(), y.het.f0.dim()}},
        {"dim v0(Lie H0)", {rank(x.v0_map), rank(y.v0_map)}},
    };
    for (const auto& [name, v] : inv)
        if (auto d = differ(name, v.first, v.second)) return d;
    if (!(x.het.lattice.torsion() == y.het.lattice.torsion())) return std::string("torsion subgroups differ");
    return std::nullopt;
}

bool FHSIso::verified() const {
    return !transcript.empty() && std::all_of(transcript.begin(), transcript.end(), [](const Check& c) { return c.ok; });
}

FHSIso make_iso(FHS1Morphism forward, FHS1Morphism backward) {
    FHSIso iso{std::move(forward), std::move(backward), {}};
    auto attempt = [](const std::function<bool()>& fn) {
        try {
            return fn();
        } catch (const Error&) {
            return false;
        }
    };
    iso.transcript.push_back({"forward is a morphism", morphism_violations(iso.forward).empty()});
    iso.transcript.push_back({"backward is a morphism", morphism_violations(iso.backward).empty()});
    iso.transcript.push_back({"backward . forward = id", attempt([&] {
                                  return compose(iso.backward, iso.forward) == identity(iso.forward.source);
                              })});
    iso.transcript.push_back({"forward . backward = id", attempt([&] {
                                  return compose(iso.forward, iso.backward) == identity(iso.forward.target);
                              })});
    return iso;
}

// Duality -------------------------------------------------------------------
//
// For Theta = [vz | v0] : H_K + Lie H0 -> V let K_Theta = Theta^{-1}(V0). The
// dual has V' = K_Theta^*, Lie H'0 = V0^*, lattice Hom(H_Z, Z); vz' and v0'
// restrict functionals along K_Theta. Coordinates on K_Theta come from the
// adapted basis [[-S b, F M^{-T}]; [I, 0]] so that sigma' is the identity.

namespace {

struct Adapted {
    FHS1Object dual;
    MatrixK kb;  // (h + s) x (s + f)
};

Adapted adapted_dual(const FHS1Object& x, PivotOrder order) {
    if (!is_free(x)) throw Error(Errc::NotFree, "dual_fhs: lattice has torsion");
    const std::size_t h = x.het.rank(), s = x.s, f = x.het.f0.dim();
    QuotientMap qf = quot_f(x), qv = quot_v(x);
    MatrixK sec = qf.section;
    if (order == PivotOrder::Reverse) {
        MatrixK raw = complement(x.het.f0, PivotOrder::Reverse).basis();
        sec = raw * inverse_or_throw(MatrixK(qf.project * raw), "dual section");
    }
    MatrixK b = inverse_or_throw(x.sigma, "dual sigma") * qv.project * x.v0_map;  // (h - f) x s

    MHS1 hd = ihom_tate(x.het);
    QuotientMap qfd = quotient_map(hd.f0);
    MatrixK fb = x.het.f0.basis();
    MatrixK m = fb.transpose() * qfd.section;  // f x f
    MatrixK mit = inverse_or_throw(m, "dual pairing").transpose();

    MatrixK kb(h + s, s + f);
    kb.set_block(0, 0, -(sec * b));
    kb.set_block(h, 0, MatrixK::identity(s));
    kb.set_block(0, s, fb * mit);
    MatrixK kbh = kb.block(0, 0, h, s + f), kbl = kb.block(h, 0, s, s + f);

    FHS1Object d;
    d.s = x.v0.dim();
    d.het = hd;
    d.n = s + f;
    std::vector<std::size_t> first(s);
    for (std::size_t i = 0; i < s; ++i) first[i] = i;
    d.v0 = Subspace::coordinate(d.n, first);
    MatrixK w2 = vcat(MatrixK(s, hd.wm2.dim()), MatrixK(qfd.project * hd.wm2.basis()));
    d.v1 = sum(d.v0, Subspace::span(w2));
    d.vz_map = kbh.transpose();
    d.v0_map = coordinates(x.v0, x.vz_map * kbh + x.v0_map * kbl).transpose();
    d = with_induced_sigma(std::move(d));
    return {std::move(d), std::move(kb)};
}

}  // namespace

FHS1Object dual_fhs(const FHS1Object& x, PivotOrder order) {
    validate_fhs(x);
    FHS1Object d = adapted_dual(x, order).dual;
    ensure_valid(d, "dual");
    return d;
}

FHS1Morphism dual_morphism(const FHS1Morphism& f) {
    validate_morphism(f);
    Adapted ax = adapted_dual(f.source, PivotOrder::Forward);
    Adapted ay = adapted_dual(f.target, PivotOrder::Forward);
    MatrixK f0d = coordinates(f.target.v0, f.g * f.source.v0.basis()).transpose();
    LatticeMap fzd = ihom_tate(f.fz);
    MatrixK push = direct_sum(to_k(f.fz.matrix()), f.f0) * ax.kb;
    MatrixK c = solve_or_throw(ay.kb, push, "dual morphism");
    FHS1Morphism d{ay.dual, ax.dual, f0d, fzd, c.transpose()};
    validate_morphism(d);
    return d;
}

FHSIso double_dual_iso(const FHS1Object& x) {
    validate_fhs(x);
    FHS1Object d = dual_fhs(x);
    Adapted add = adapted_dual(d, PivotOrder::Forward);
    const std::size_t h = x.het.rank();
    QuotientMap qf = quot_f(x), qv = quot_v(x);
    // v = vz(T v) + (v - vz T v) with the second summand in V0
    MatrixK t = qf.section * inverse_or_throw(x.sigma, "sigma") * qv.project;
    MatrixK z = coordinates(x.v0, MatrixK::identity(x.n) - x.vz_map * t);
    MatrixK kbh = add.kb.block(0, 0, h, add.kb.cols());
    MatrixK kbl = add.kb.block(h, 0, add.kb.rows() - h, add.kb.cols());
    MatrixK g = kbh.transpose() * t - kbl.transpose() * z;
    FHS1Morphism fwd{x, add.dual, -MatrixK::identity(x.s), ihom_double_dual(x.het), g};
    return make_iso(fwd, inverse(fwd));
}

FHSIso dual_splitting_iso(const FHS1Object& x) {
    validate_fhs(x);
    Adapted a = adapted_dual(x, PivotOrder::Forward);
    Adapted b = adapted_dual(x, PivotOrder::Reverse);
    MatrixK c = solve_or_throw(a.kb, b.kb, "splitting change of basis");
    FHS1Morphism fwd{a.dual, b.dual, MatrixK::identity(a.dual.s), LatticeMap::identity(a.dual.het.lattice),
                     c.transpose()};
    return make_iso(fwd, inverse(fwd));
}

FHSIso etale_dual_comparison(const FHS1Object& x) {
    if (!is_etale(x)) throw Error(Errc::NotEtale, "etale_dual_comparison: structure is not etale");
    FHS1Object d = dual_fhs(x);
    FHS1Object c = canonical_etale(d.het);
    // g vz' = pr' determines g, since vz' is onto V'
    MatrixK g = solve_or_throw(d.vz_map.transpose(), c.vz_map.transpose(), "etale dual comparison").transpose();
    FHS1Morphism fwd{d, c, MatrixK(0, 0), LatticeMap::identity(d.het.lattice), g};
    return make_iso(fwd, inverse(fwd));
}

}  // namespace fhodge
