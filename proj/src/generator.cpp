#include "fhodge/generator.hpp"

#include <map>

namespace fhodge {

namespace {

const std::map<std::string, Profile>& profile_table() {
    static const std::map<std::string, Profile> table = {
        {"etale", Profile::Etale},
        {"connected", Profile::Connected},
        {"special", Profile::Special},
        {"general", Profile::General},
        {"motive-etale", Profile::MotiveEtale},
        {"motive-connected", Profile::MotiveConnected},
        {"motive-special", Profile::MotiveSpecial},
        {"motive-general", Profile::MotiveGeneral},
        {"mhs-pure", Profile::MhsPure},
        {"mhs-general", Profile::MhsGeneral},
    };
    return table;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::vector<std::size_t> iota(std::size_t from, std::size_t to) {
    std::vector<std::size_t> v;
    for (std::size_t i = from; i < to; ++i) v.push_back(i);
    return v;
}

struct MotiveShape {
    std::size_t g, t, a, r, s;
    enum { Etale, Special, General } u0_kind;
};

struct Built {
    Motive motive;
    IntMatrix natural;  // abelian lattice vectors in H_Z coordinates
    IntMatrix q;        // the standard form on them
};

// Elliptic blocks (c, c tau) with Im tau > 0, a split torus and a vector
// group, glued by random tails and then mixed by a change of Lie G
// coordinates, of the lattice basis and of the logarithm.
Built build_motive(const MotiveShape& sh, Rng& rng) {
    static const Scalar taus[] = {Scalar::i(), Scalar(1, 1), Scalar(Rational(1, 2), 1), Scalar(0, 2),
                                  Scalar(-1, Rational(1, 2)), Scalar(Rational(-1, 2), 2)};
    const std::size_t g = sh.g, t = sh.t, a = sh.a, r = sh.r, s = sh.s;
    const std::size_t n = g + t + a, k = 2 * g + t;
    MatrixK lam(n, k);
    for (std::size_t j = 0; j < g; ++j) {
        Scalar c(rng.range(1, 2));
        Scalar tau = taus[rng.range(0, 5)];
        lam(j, 2 * j) = c;
        lam(j, 2 * j + 1) = c * tau;
        for (std::size_t row = g; row < n; ++row) {
            lam(row, 2 * j) = rng.scalar(2);
            lam(row, 2 * j + 1) = rng.scalar(2);
        }
    }
    for (std::size_t i = 0; i < t; ++i) {
        lam(g + i, 2 * g + i) = Scalar(rng.range(1, 2));
        for (std::size_t row = g + t; row < n; ++row) lam(row, 2 * g + i) = rng.scalar(2);
    }
    MatrixK ell = rng.matrix(n, r);
    MatrixK u0(n, s);
    if (sh.u0_kind == MotiveShape::General) u0 = rng.matrix(n, s);
    if (sh.u0_kind == MotiveShape::Special)
        for (std::size_t i = g + t; i < n; ++i)
            for (std::size_t j = 0; j < s; ++j) u0(i, j) = rng.scalar(3);

    MatrixK amix = rng.invertible(n);
    IntMatrix umix = rng.unimodular(k);
    IntMatrix fmix = rng.unimodular(r);
    IntMatrix shift = rng.int_matrix(k, r, 1);

    Motive m;
    m.s = s;
    m.r = r;
    m.n = n;
    m.add = image(amix, Subspace::coordinate(n, iota(g + t, n)));
    m.toradd = image(amix, Subspace::coordinate(n, iota(g, n)));
    m.lambda = amix * lam * to_k(umix);
    m.ell = (amix * ell + m.lambda * to_k(shift)) * to_k(fmix);
    m.u0 = amix * u0;

    IntMatrix uinv = *unimodular_inverse(umix);
    IntMatrix natural = vcat(uinv.block(0, 0, k, 2 * g), IntMatrix(r, 2 * g));
    IntMatrix q(2 * g, 2 * g);
    for (std::size_t j = 0; j < g; ++j) {
        q(2 * j, 2 * j + 1) = 1;
        q(2 * j + 1, 2 * j) = -1;
    }
    return {m, natural, q};
}

Motive finish_motive(Built b) {
    if (b.q.rows() > 0)
        b.motive.polarization = transport_polarization(t_hodge(etale_motive(b.motive)), b.natural, b.q);
    auto v = motive_violations(b.motive);
    if (!v.empty())
        throw Error(Errc::InternalError, "generator produced an invalid motive: " + std::string(errc_name(v.front().code)));
    return b.motive;
}

MotiveShape random_shape(Rng& rng, bool etale, decltype(MotiveShape::Etale) kind) {
    MotiveShape sh{};
    sh.g = static_cast<std::size_t>(rng.range(0, 2));
    sh.t = static_cast<std::size_t>(rng.range(0, std::min<long>(2, 4 - 2 * static_cast<long>(sh.g))));
    sh.a = etale ? 0 : static_cast<std::size_t>(rng.range(0, std::min<long>(2, 4 - static_cast<long>(sh.g + sh.t))));
    sh.r = static_cast<std::size_t>(rng.range(0, 2));
    sh.s = etale ? 0 : static_cast<std::size_t>(rng.range(0, 2));
    sh.u0_kind = kind;
    return sh;
}

}  // namespace

std::optional<Profile> parse_profile(const std::string& name) {
    auto it = profile_table().find(name);
    if (it == profile_table().end()) return std::nullopt;
    return it->second;
}

std::string profile_name(Profile p) {
    for (const auto& [name, q] : profile_table())
        if (q == p) return name;
    return "unknown";
}

ProfileKind profile_kind(Profile p) {
    switch (p) {
        case Profile::Etale:
        case Profile::Connected:
        case Profile::Special:
        case Profile::General:
            return ProfileKind::Fhs;
        case Profile::MotiveEtale:
        case Profile::MotiveConnected:
        case Profile::MotiveSpecial:
        case Profile::MotiveGeneral:
            return ProfileKind::Motive;
        default:
            return ProfileKind::Mhs;
    }
}

const std::vector<Profile>& all_profiles() {
    static const std::vector<Profile> v = {Profile::Etale,         Profile::Connected,       Profile::Special,
                                           Profile::General,       Profile::MotiveEtale,     Profile::MotiveConnected,
                                           Profile::MotiveSpecial, Profile::MotiveGeneral,   Profile::MhsPure,
                                           Profile::MhsGeneral};
    return v;
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

Rng::Rng(const std::string& stream, std::uint64_t seed) : engine_(seed * 0x9E3779B97F4A7C15ULL ^ fnv1a(stream)) {}

std::uint64_t Rng::next() { return engine_(); }

long Rng::range(long lo, long hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

bool Rng::coin() { return next() % 2 == 0; }

Scalar Rng::scalar(long bound) {
    Rational re(range(-bound, bound), range(1, 2));
    Rational im(0);
    if (coin()) im = Rational(range(-bound, bound), range(1, 2));
    re.canonicalize();
    im.canonicalize();
    return Scalar(re, im);
}

MatrixK Rng::matrix(std::size_t r, std::size_t c, long bound) {
    MatrixK m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = scalar(bound);
    return m;
}

IntMatrix Rng::int_matrix(std::size_t r, std::size_t c, long bound) {
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = range(-bound, bound);
    return m;
}

IntMatrix Rng::unimodular(std::size_t n) {
    IntMatrix u = IntMatrix::identity(n);
    if (n == 0) return u;
    for (std::size_t step = 0; step < n + 1; ++step) {
        std::size_t i = static_cast<std::size_t>(range(0, static_cast<long>(n) - 1));
        std::size_t j = static_cast<std::size_t>(range(0, static_cast<long>(n) - 1));
        if (i == j) {
            if (coin())
                for (std::size_t c = 0; c < n; ++c) u(i, c) = -u(i, c);
            continue;
        }
        if (coin()) {
            for (std::size_t c = 0; c < n; ++c) std::swap(u(i, c), u(j, c));
            continue;
        }
        Integer f = range(-2, 2);
        for (std::size_t c = 0; c < n; ++c) u(i, c) += f * u(j, c);
    }
    return u;
}

MatrixK Rng::invertible(std::size_t n) {
    MatrixK l = MatrixK::identity(n), up = MatrixK::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            l(i, j) = coin() ? scalar(1) : Scalar(0);
            up(j, i) = coin() ? scalar(1) : Scalar(0);
        }
    for (std::size_t i = 0; i < n; ++i) {
        Scalar d;
        do d = scalar(2);
        while (d.is_zero());
        up(i, i) = d;
    }
    return l * up;
}

IntMatrix transport_polarization(const MHS1& h, const IntMatrix& natural, const IntMatrix& q) {
    GradedLattice gl = graded_lattice(h);
    auto x = integer_solve(hcat(natural, gl.wm2), gl.grm1_lifts);
    if (!x) throw Error(Errc::InternalError, "polarization transport: abelian vectors do not generate gr-1");
    IntMatrix m = x->block(0, 0, natural.cols(), gl.grm1_lifts.cols());
    return m.transpose() * q * m;
}

FHS1Object scramble(const FHS1Object& x, Rng& rng) {
    const std::size_t h = x.het.rank();
    IntMatrix u = rng.unimodular(h);
    MatrixK uk = to_k(u), uinv = to_k(*unimodular_inverse(u));
    MatrixK a = rng.invertible(x.n), b = rng.invertible(x.s);
    FHS1Object y;
    y.s = x.s;
    y.het = {x.het.lattice, image(uinv, x.het.wm2), image(uinv, x.het.wm1), image(uinv, x.het.f0), x.het.tate_tag};
    y.n = x.n;
    y.v0 = image(a, x.v0);
    y.v1 = image(a, x.v1);
    y.v0_map = a * x.v0_map * b;
    y.vz_map = a * x.vz_map * uk;
    y = with_induced_sigma(std::move(y));
    auto v = fhs_violations(y);
    if (!v.empty()) throw Error(Errc::InternalError, "scramble broke " + std::string(errc_name(v.front().code)));
    return y;
}

Motive gen_motive(Profile p, std::uint64_t seed) {
    Rng rng("motive:" + profile_name(p), seed);
    switch (p) {
        case Profile::MotiveEtale:
            return finish_motive(build_motive(random_shape(rng, true, MotiveShape::Etale), rng));
        case Profile::MotiveSpecial:
            return finish_motive(build_motive(random_shape(rng, false, MotiveShape::Special), rng));
        case Profile::MotiveGeneral:
            return finish_motive(build_motive(random_shape(rng, false, MotiveShape::General), rng));
        case Profile::MotiveConnected: {
            std::size_t n = static_cast<std::size_t>(rng.range(0, 3)), s = static_cast<std::size_t>(rng.range(0, 3));
            return connected_motive(rng.matrix(n, s));
        }
        default:
            throw Error(Errc::Malformed, "gen_motive: not a motive profile: " + profile_name(p));
    }
}

FHS1Object gen_fhs(Profile p, std::uint64_t seed) {
    Rng rng("fhs:" + profile_name(p), seed);
    FHS1Object x;
    switch (p) {
        case Profile::Etale:
            x = t_formal(gen_motive(Profile::MotiveEtale, seed));
            break;
        case Profile::Connected: {
            std::size_t n = static_cast<std::size_t>(rng.range(0, 3)), s = static_cast<std::size_t>(rng.range(0, 3));
            x = linear_to_connected(rng.matrix(n, s));
            break;
        }
        case Profile::Special:
            x = t_formal(gen_motive(Profile::MotiveSpecial, seed));
            break;
        case Profile::General:
            x = t_formal(gen_motive(Profile::MotiveGeneral, seed));
            break;
        default:
            throw Error(Errc::Malformed, "gen_fhs: not a structure profile: " + profile_name(p));
    }
    return scramble(x, rng);
}

MHS1 gen_mhs(Profile p, std::uint64_t seed) {
    Rng rng("mhs:" + profile_name(p), seed);
    MotiveShape sh{};
    if (p == Profile::MhsPure) {
        sh.g = static_cast<std::size_t>(rng.range(1, 2));
        sh.u0_kind = MotiveShape::Etale;
    } else if (p == Profile::MhsGeneral) {
        sh = random_shape(rng, true, MotiveShape::Etale);
    } else {
        throw Error(Errc::Malformed, "gen_mhs: not an MHS profile: " + profile_name(p));
    }
    MHS1 h = t_hodge(finish_motive(build_motive(sh, rng)));
    IntMatrix u = rng.unimodular(h.rank());
    MatrixK uinv = to_k(*unimodular_inverse(u));
    return {h.lattice, image(uinv, h.wm2), image(uinv, h.wm1), image(uinv, h.f0), h.tate_tag};
}

std::optional<FHS1Morphism> gen_morphism(const FHS1Object& x, const FHS1Object& y, std::uint64_t seed) {
    HomSpace hs = hom_group(x, y);
    if (hs.is_zero()) return std::nullopt;
    Rng rng("morphism", seed);
    FHS1Morphism f = zero_morphism(x, y);
    IntMatrix fz = f.fz.matrix();
    for (const auto& b : hs.vector_basis) {
        Scalar c = rng.scalar(2);
        f.f0 = f.f0 + b.f0 * c;
        f.g = f.g + b.g * c;
    }
    for (const auto& b : hs.lattice_basis) {
        Integer c = rng.range(-2, 2);
        f.f0 = f.f0 + b.f0 * Scalar(Rational(c));
        f.g = f.g + b.g * Scalar(Rational(c));
        fz = fz + b.fz.matrix() * c;
    }
    f.fz = LatticeMap(x.het.lattice, y.het.lattice, fz);
    validate_morphism(f);
    return f;
}

std::optional<MotiveMorphism> gen_motive_morphism(const Motive& m, const Motive& n, std::uint64_t seed) {
    auto phi = gen_morphism(t_formal(m), t_formal(n), seed);
    if (!phi) return std::nullopt;
    MotiveMorphism a = arrow(*phi);
    MotiveMorphism f = compose(roundtrip_mf(n).backward, compose(a, roundtrip_mf(m).forward));
    validate_motive_morphism(f);
    return f;
}

}  // namespace fhodge
