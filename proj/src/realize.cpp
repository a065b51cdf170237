#include "fhodge/realize.hpp"

#include <algorithm>

namespace fhodge {

MHS1 t_hodge(const Motive& met) {
    if (!is_etale(met)) throw Error(Errc::NotEtale, "t_hodge needs an etale motive");
    Motive bare = met;  // the polarization check itself goes through t_hodge
    bare.polarization.reset();
    validate_motive(bare);
    const std::size_t k = met.lattice_rank(), r = met.r, h = k + r;
    std::vector<std::size_t> first(k);
    for (std::size_t i = 0; i < k; ++i) first[i] = i;
    QuotientMap qt = quotient_map(met.toradd);
    MatrixQ tk = kernel_basis(realify_vectors(qt.project * met.lambda));
    MHS1 x;
    x.lattice = FgAbGroup::free(h);
    x.wm1 = Subspace::coordinate(h, first);
    x.wm2 = Subspace::span(vcat(to_k(tk), MatrixK(r, tk.cols())));
    x.f0 = kernel(hcat(met.lambda, met.ell));
    auto v = mhs_violations(x);
    if (!v.empty()) throw Error(Errc::InternalError, "t_hodge fails " + std::string(errc_name(v.front().code)));
    return x;
}

FHS1Object t_formal(const Motive& m) {
    validate_motive(m);
    FHS1Object x;
    x.s = m.s;
    x.het = t_hodge(etale_motive(m));
    x.n = m.n;
    x.v0 = m.add;
    x.v1 = m.toradd;
    x.v0_map = m.u0;
    x.vz_map = hcat(m.lambda, m.ell);
    x = with_induced_sigma(std::move(x));
    auto v = fhs_violations(x);
    if (!v.empty()) throw Error(Errc::InternalError, "t_formal fails " + std::string(errc_name(v.front().code)));
    return x;
}

FHS1Morphism t_formal(const MotiveMorphism& f) {
    MotiveWitness w = motive_witness(f);
    const std::size_t k0 = f.source.lattice_rank(), k1 = f.target.lattice_rank();
    IntMatrix fz(k1 + f.target.r, k0 + f.source.r);
    fz.set_block(0, 0, w.lattice_map);
    fz.set_block(0, k0, w.shift);
    fz.set_block(k1, k0, f.fet);
    FHS1Object x = t_formal(f.source), y = t_formal(f.target);
    FHS1Morphism t{x, y, f.f0, LatticeMap(x.het.lattice, y.het.lattice, fz), f.g};
    validate_morphism(t);
    return t;
}

IntMatrix arrow_basis(const FHS1Object& x) {
    if (!is_free(x)) throw Error(Errc::NotFree, "arrow needs a free structure");
    IntMatrix b1 = saturated_basis(as_rational(x.het.wm1.basis()));
    return hcat(b1, unimodular_completion(b1));
}

Motive arrow(const FHS1Object& x) {
    validate_fhs(x);
    IntMatrix p = arrow_basis(x);
    const std::size_t k = x.het.wm1.dim(), h = x.het.rank();
    MatrixK vp = x.vz_map * to_k(p);
    Motive m;
    m.s = x.s;
    m.r = h - k;
    m.n = x.n;
    m.add = x.v0;
    m.toradd = x.v1;
    m.lambda = vp.block(0, 0, x.n, k);
    m.ell = vp.block(0, k, x.n, h - k);
    m.u0 = x.v0_map;
    auto v = motive_violations(m);
    if (!v.empty()) throw Error(Errc::InternalError, "arrow fails " + std::string(errc_name(v.front().code)));
    return m;
}

MotiveMorphism arrow(const FHS1Morphism& f) {
    validate_morphism(f);
    IntMatrix px = arrow_basis(f.source), py = arrow_basis(f.target);
    IntMatrix q = *unimodular_inverse(py) * f.fz.matrix() * px;
    const std::size_t kx = f.source.het.wm1.dim(), ky = f.target.het.wm1.dim();
    const std::size_t rx = f.source.het.rank() - kx, ry = f.target.het.rank() - ky;
    if (!q.block(ky, 0, ry, kx).is_zero()) throw Error(Errc::InternalError, "arrow: fz does not preserve W-1");
    MotiveMorphism m{arrow(f.source), arrow(f.target), f.f0, q.block(ky, kx, ry, rx), f.g};
    validate_motive_morphism(m);
    return m;
}

FHSIso roundtrip_fm(const FHS1Object& x) {
    FHS1Object y = t_formal(arrow(x));
    IntMatrix p = arrow_basis(x);
    FHS1Morphism fwd{x, y, MatrixK::identity(x.s), LatticeMap(x.het.lattice, y.het.lattice, *unimodular_inverse(p)),
                     MatrixK::identity(x.n)};
    FHS1Morphism bwd{y, x, MatrixK::identity(x.s), LatticeMap(y.het.lattice, x.het.lattice, p),
                     MatrixK::identity(x.n)};
    return make_iso(fwd, bwd);
}

MotiveIso roundtrip_mf(const Motive& m) {
    FHS1Object x = t_formal(m);
    Motive a = arrow(x);
    IntMatrix pinv = *unimodular_inverse(arrow_basis(x));
    const std::size_t k = m.lattice_rank();
    IntMatrix fet = pinv.block(k, k, m.r, m.r);
    MotiveMorphism fwd{m, a, MatrixK::identity(m.s), fet, MatrixK::identity(m.n)};
    auto back = unimodular_inverse(fet);
    if (!back) throw Error(Errc::InternalError, "roundtrip_mf: gr0 comparison is not unimodular");
    MotiveMorphism bwd{a, m, MatrixK::identity(m.s), *back, MatrixK::identity(m.n)};
    return make_iso(fwd, bwd);
}

FHSIso etale_comparison(const Motive& met) {
    MHS1 h = t_hodge(met);
    FHS1Object c = canonical_etale(h), t = t_formal(met);
    MatrixK g = t.vz_map * quotient_map(h.f0).section;
    FHS1Morphism fwd{c, t, MatrixK(0, 0), LatticeMap::identity(h.lattice), g};
    auto gi = inverse(g);
    if (!gi) throw Error(Errc::InternalError, "etale_comparison: H_K/F0 -> Lie G is not invertible");
    FHS1Morphism bwd{t, c, MatrixK(0, 0), LatticeMap::identity(h.lattice), *gi};
    return make_iso(fwd, bwd);
}

bool naturality_check(const FHS1Morphism& f) {
    try {
        FHS1Morphism top = compose(roundtrip_fm(f.target).forward, f);
        FHS1Morphism bottom = compose(t_formal(arrow(f)), roundtrip_fm(f.source).forward);
        return top == bottom;
    } catch (const Error&) {
        return false;
    }
}

bool naturality_check(const MotiveMorphism& f) {
    try {
        MotiveMorphism top = compose(roundtrip_mf(f.target).forward, f);
        MotiveMorphism bottom = compose(arrow(t_formal(f)), roundtrip_mf(f.source).forward);
        return top == bottom;
    } catch (const Error&) {
        return false;
    }
}

ExactnessReport check_exact(const std::vector<MotiveMorphism>& seq) {
    std::vector<FHS1Morphism> t;
    t.reserve(seq.size());
    for (const auto& f : seq) t.push_back(t_formal(f));
    return check_exact(t);
}

bool PeriodsReport::ok() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

PeriodsReport periods_square(const Motive& met) {
    if (!is_etale(met)) throw Error(Errc::NotEtale, "periods_square needs an etale motive");
    PeriodsReport rep;
    MHS1 h = t_hodge(met);
    rep.natural = universal_vector_extension(met);
    FHS1Object tn = t_formal(rep.natural);
    const std::size_t hr = h.rank();
    QuotientMap qf = quotient_map(h.f0);
    MatrixK vz = hcat(met.lambda, met.ell);
    MatrixK per = vz * qf.section;  // H_K / F0 -> Lie G_x

    rep.checks.push_back({"tau . v = t on H_Z", tn.vz_map == MatrixK::identity(hr)});
    rep.checks.push_back({"T_Hodge(M^nat_et) = T_Hodge(M)", tn.het == h});
    rep.checks.push_back({"H_K / F0 -> Lie G_x is an isomorphism", is_invertible(per)});
    rep.checks.push_back({"quotient square commutes", per * qf.project == vz});
    rep.checks.push_back({"periods respect W-2", image(per, image(qf.project, h.wm2)) == met.toradd});
    MotiveRanks rk = motive_ranks(met);
    rep.checks.push_back({"dim V(G^nat) = g + r", rep.natural.add.dim() == rk.g + rk.r});

    FHS1Object f0 = embed_vector(h.f0.dim());
    FHS1Object c = canonical_etale(h);
    FHS1Morphism i{f0, tn, MatrixK(0, 0), LatticeMap::zero(f0.het.lattice, tn.het.lattice), h.f0.basis()};
    FHS1Morphism p{tn, c, MatrixK(0, 0), LatticeMap::identity(h.lattice), qf.project};
    bool exact = false;
    try {
        exact = morphism_violations(i).empty() && morphism_violations(p).empty() &&
                check_exact(short_sequence(i, p)).exact();
    } catch (const Error&) {
        exact = false;
    }
    rep.checks.push_back({"0 -> F0 -> T(M^nat) -> c(T_Hodge(M)) -> 0 exact", exact});
    rep.extension = short_sequence(i, p);
    return rep;
}

IsoComparison compare_iso(const FHS1Object& x, const FHS1Object& y) {
    if (auto cert = non_iso_certificate(x, y)) return {cert, std::nullopt};
    if (y == x) return {std::nullopt, make_iso(identity(x), identity(x))};
    if (y == dual_fhs(dual_fhs(x))) return {std::nullopt, double_dual_iso(x)};
    FHSIso rt = roundtrip_fm(x);
    if (y == rt.forward.target) return {std::nullopt, std::move(rt)};
    return {};
}

}  // namespace fhodge
