#include "fhodge/motive.hpp"

#include <algorithm>
#include <functional>

#include "fhodge/realize.hpp"

namespace fhodge {

namespace {

// Integer coordinates of vectors in the lattice spanned by the R-independent
// columns of lambda.
std::optional<IntMatrix> lattice_coords(const MatrixK& lambda, const MatrixK& v) {
    auto x = solve(realify_vectors(lambda), realify_vectors(v));
    if (!x || !is_integral(*x)) return std::nullopt;
    return as_integer(*x);
}

MatrixQ torus_kernel(const Motive& m) {
    QuotientMap qt = quotient_map(m.toradd);
    return kernel_basis(realify_vectors(qt.project * m.lambda));
}

std::vector<MotiveMorphism> short_motive_sequence(const MotiveMorphism& f, const MotiveMorphism& g) {
    Motive z = zero_motive();
    return {zero_morphism(z, f.source), f, g, zero_morphism(g.target, z)};
}

}  // namespace

std::vector<Violation> motive_violations(const Motive& m) {
    std::vector<Violation> out;
    const std::size_t n = m.n;
    if (m.add.ambient() != n || m.toradd.ambient() != n || m.lambda.rows() != n || m.ell.rows() != n ||
        m.ell.cols() != m.r || m.u0.rows() != n || m.u0.cols() != m.s) {
        out.push_back({Errc::DimensionMismatch, "motive components do not match s, r and dim Lie G"});
        return out;
    }
    if (!m.toradd.contains(m.add)) {
        out.push_back({Errc::BadSubspaceChain, "V(G) is not contained in Lie T + V(G)"});
        return out;
    }
    const std::size_t k = m.lattice_rank();
    if (rank(hcat(realify_vectors(m.lambda), realify_span(m.add.basis()))) != k + 2 * m.add.dim())
        out.push_back({Errc::LatticeMeetsAdditive, "period lattice is not discrete modulo V(G)"});

    MatrixQ tk = torus_kernel(m);
    const std::size_t t = m.toradd.dim() - m.add.dim();
    if (tk.cols() != t)
        out.push_back({Errc::TorusRankMismatch, "rank of Λ ∩ toradd is " + std::to_string(tk.cols()) + ", expected " +
                                                    std::to_string(t)});
    else if (!(sum(m.add, Subspace::span(m.lambda * to_k(tk))) == m.toradd))
        out.push_back({Errc::TorusRankMismatch, "Λ ∩ toradd does not span a complement of V(G)"});

    const std::size_t g = n - m.toradd.dim();
    if (k - tk.cols() != 2 * g)
        out.push_back({Errc::AbelianPartNotFull, "image of Λ in Lie G / toradd has rank " +
                                                     std::to_string(k - tk.cols()) + ", expected " +
                                                     std::to_string(2 * g)});
    if (out.empty() && m.polarization) {
        bool ok = false;
        try {
            ok = check_polarization(t_hodge(etale_motive(m)), *m.polarization);
        } catch (const Error&) {
            ok = false;
        }
        if (!ok) out.push_back({Errc::PolarizationInvalid, "polarization witness fails on the abelian block"});
    }
    return out;
}

const Motive& validate_motive(const Motive& m) {
    auto v = motive_violations(m);
    if (!v.empty()) throw ValidationError(std::move(v));
    return m;
}

MotiveRanks motive_ranks(const Motive& m) {
    const std::size_t t = m.toradd.dim() - m.add.dim();
    return {m.s, m.r, m.n, m.add.dim(), t, m.n - m.toradd.dim(), m.lattice_rank()};
}

Motive zero_motive() {
    return {0, 0, 0, Subspace(0), Subspace(0), MatrixK(0, 0), MatrixK(0, 0), MatrixK(0, 0), std::nullopt};
}

std::vector<Violation> motive_morphism_violations(const MotiveMorphism& f) {
    std::vector<Violation> out;
    const Motive& a = f.source;
    const Motive& b = f.target;
    if (f.f0.rows() != b.s || f.f0.cols() != a.s || f.fet.rows() != b.r || f.fet.cols() != a.r ||
        f.g.rows() != b.n || f.g.cols() != a.n) {
        out.push_back({Errc::DimensionMismatch, "morphism components do not match the motives"});
        return out;
    }
    if (!b.add.contains(image(f.g, a.add))) out.push_back({Errc::NotFiltered, "g(V(G)) not in V(G')"});
    if (!b.toradd.contains(image(f.g, a.toradd))) out.push_back({Errc::NotFiltered, "g(toradd) not in toradd'"});
    if (!lattice_coords(b.lambda, f.g * a.lambda)) out.push_back({Errc::LatticeNotPreserved, "g(Λ) not in Λ'"});
    if (!lattice_coords(b.lambda, f.g * a.ell - b.ell * to_k(f.fet)))
        out.push_back({Errc::LogLiftMismatch, "g . ell - ell' . fet is not in Λ'"});
    if (!(f.g * a.u0 == b.u0 * f.f0)) out.push_back({Errc::Square2Broken, "g . u0 != u0' . f0"});
    return out;
}

const MotiveMorphism& validate_motive_morphism(const MotiveMorphism& f) {
    auto v = motive_morphism_violations(f);
    if (!v.empty()) throw ValidationError(std::move(v));
    return f;
}

MotiveWitness motive_witness(const MotiveMorphism& f) {
    validate_motive_morphism(f);
    return {*lattice_coords(f.target.lambda, f.g * f.source.lambda),
            *lattice_coords(f.target.lambda, f.g * f.source.ell - f.target.ell * to_k(f.fet))};
}

MotiveMorphism identity(const Motive& m) {
    return {m, m, MatrixK::identity(m.s), IntMatrix::identity(m.r), MatrixK::identity(m.n)};
}

MotiveMorphism zero_morphism(const Motive& a, const Motive& b) {
    return {a, b, MatrixK(b.s, a.s), IntMatrix(b.r, a.r), MatrixK(b.n, a.n)};
}

MotiveMorphism compose(const MotiveMorphism& g, const MotiveMorphism& f) {
    if (!(f.target == g.source)) throw Error(Errc::NotComposable, "motive morphisms are not composable");
    return {f.source, g.target, g.f0 * f.f0, g.fet * f.fet, g.g * f.g};
}

MotiveMorphism inverse(const MotiveMorphism& f) {
    auto f0 = fhodge::inverse(f.f0);
    auto g = fhodge::inverse(f.g);
    auto fet = unimodular_inverse(f.fet);
    if (!f0 || !g || !fet) throw Error(Errc::NotInjective, "motive morphism is not invertible");
    return {f.target, f.source, *f0, *fet, *g};
}

bool MotiveIso::verified() const {
    return !transcript.empty() && std::all_of(transcript.begin(), transcript.end(), [](const Check& c) { return c.ok; });
}

MotiveIso make_iso(MotiveMorphism forward, MotiveMorphism backward) {
    MotiveIso iso{std::move(forward), std::move(backward), {}};
    auto attempt = [](const std::function<bool()>& fn) {
        try {
            return fn();
        } catch (const Error&) {
            return false;
        }
    };
    iso.transcript.push_back({"forward is a morphism", motive_morphism_violations(iso.forward).empty()});
    iso.transcript.push_back({"backward is a morphism", motive_morphism_violations(iso.backward).empty()});
    iso.transcript.push_back({"backward . forward = id", attempt([&] {
                                  return compose(iso.backward, iso.forward) == identity(iso.forward.source);
                              })});
    iso.transcript.push_back({"forward . backward = id", attempt([&] {
                                  return compose(iso.forward, iso.backward) == identity(iso.forward.target);
                              })});
    return iso;
}

bool is_etale(const Motive& m) { return m.s == 0 && m.add.is_zero(); }
bool is_connected(const Motive& m) { return m.r == 0 && m.lattice_rank() == 0; }
bool is_special(const Motive& m) { return m.add.contains(m.u0); }

Motive quotient_by_additive(const Motive& m) {
    QuotientMap qa = quotient_map(m.add);
    Motive q;
    q.s = m.s;
    q.r = m.r;
    q.n = qa.dim();
    q.add = Subspace(q.n);
    q.toradd = image(qa.project, m.toradd);
    q.lambda = qa.project * m.lambda;
    q.ell = qa.project * m.ell;
    q.u0 = qa.project * m.u0;
    q.polarization = m.polarization;
    return q;
}

Motive etale_motive(const Motive& m) {
    Motive e = quotient_by_additive(m);
    e.s = 0;
    e.u0 = MatrixK(e.n, 0);
    return e;
}

MotiveMorphism etale_motive(const MotiveMorphism& f) {
    MatrixK g = quotient_map(f.target.add).project * f.g * quotient_map(f.source.add).section;
    return {etale_motive(f.source), etale_motive(f.target), MatrixK(0, 0), f.fet, g};
}

Motive connected_motive(const MatrixK& u0) {
    const std::size_t n = u0.rows();
    return {u0.cols(), 0, n, Subspace::full(n), Subspace::full(n), MatrixK(n, 0), MatrixK(n, 0), u0, std::nullopt};
}

Motive connected_part(const Motive& m) {
    if (!is_special(m)) throw Error(Errc::NotSpecial, "connected_part: u0(Lie F0) is not inside V(G)");
    return connected_motive(coordinates(m.add, m.u0));
}

MotiveMorphism connected_part_inclusion(const Motive& m) {
    Motive c = connected_part(m);
    return {c, m, MatrixK::identity(m.s), IntMatrix(m.r, 0), m.add.basis()};
}

Motive formal_shift(std::size_t s) { return connected_motive(MatrixK(0, s)); }

std::vector<MotiveMorphism> seq6(const Motive& m) {
    MotiveMorphism i = connected_part_inclusion(m);
    Motive e = etale_motive(m);
    MotiveMorphism p{m, e, MatrixK(0, m.s), IntMatrix::identity(m.r), quotient_map(m.add).project};
    return short_motive_sequence(i, p);
}

std::vector<MotiveMorphism> seq7(const Motive& m) {
    Motive e = etale_motive(m), q = quotient_by_additive(m), f = formal_shift(m.s);
    MotiveMorphism a{e, q, MatrixK(m.s, 0), IntMatrix::identity(m.r), MatrixK::identity(q.n)};
    MotiveMorphism b{q, f, MatrixK::identity(m.s), IntMatrix(0, m.r), MatrixK(0, q.n)};
    return short_motive_sequence(a, b);
}

Motive shift_log(const Motive& m, const IntMatrix& p) {
    Motive s = m;
    s.ell = m.ell + m.lambda * to_k(p);
    return s;
}

MotiveIso shift_iso(const Motive& m, const IntMatrix& p) {
    Motive s = shift_log(m, p);
    MotiveMorphism fwd{m, s, MatrixK::identity(m.s), IntMatrix::identity(m.r), MatrixK::identity(m.n)};
    return make_iso(fwd, inverse(fwd));
}

Motive universal_vector_extension(const Motive& met) {
    if (!is_etale(met)) throw Error(Errc::NotEtale, "universal_vector_extension needs an etale motive");
    validate_motive(met);
    MHS1 h = t_hodge(met);
    const std::size_t k = met.lattice_rank(), r = met.r, n = k + r;
    Motive u;
    u.s = 0;
    u.r = r;
    u.n = n;
    u.add = h.f0;
    u.toradd = sum(h.f0, h.wm2);
    u.lambda = vcat(MatrixK::identity(k), MatrixK(r, k));
    u.ell = vcat(MatrixK(k, r), MatrixK::identity(r));
    u.u0 = MatrixK(n, 0);
    u.polarization = met.polarization;
    auto v = motive_violations(u);
    if (!v.empty())
        throw Error(Errc::InternalError, "universal extension fails " + std::string(errc_name(v.front().code)));
    return u;
}

Motive cartier_dual(const Motive& m) {
    validate_motive(m);
    return arrow(dual_fhs(t_formal(m)));
}

MotiveIso cartier_double_dual_iso(const Motive& m) {
    validate_motive(m);
    FHS1Object x = t_formal(m);
    MotiveMorphism to_arrow = roundtrip_mf(m).forward;
    FHSIso dd = double_dual_iso(x);
    FHS1Object y = dual_fhs(x);
    FHS1Morphism rf = roundtrip_fm(y).forward;  // y -> T(M^v)
    FHS1Morphism back = inverse(dual_morphism(rf));  // dual(y) -> dual(T(M^v))
    MotiveMorphism fwd = compose(arrow(back), compose(arrow(dd.forward), to_arrow));
    return make_iso(fwd, inverse(fwd));
}

}  // namespace fhodge
