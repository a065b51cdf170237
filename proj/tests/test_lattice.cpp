#include <random>
#include <set>

#include "doctest.h"
#include "fhodge/lattice.hpp"
#include "fhodge/linalg.hpp"

using namespace fhodge;

namespace {

IntMatrix random_int(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound = 3) {
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(rng() % (2 * bound + 1)) - bound;
    return m;
}

bool diagonal_chain(const IntMatrix& d) {
    Integer prev = 1;
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j) {
            if (i != j && d(i, j) != 0) return false;
        }
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) {
        if (d(i, i) < 0) return false;
        if (d(i, i) == 0) {
            prev = 0;
            continue;
        }
        if (prev == 0 || d(i, i) % prev != 0) return false;
        prev = d(i, i);
    }
    return true;
}

// Order of Z^2 / im(m) by enumerating residues: count the classes of the box
// [0, bound)^2 modulo the lattice, using membership tests on differences.
std::size_t brute_force_cokernel_order(const IntMatrix& m, long bound) {
    IntMatrix basis = lattice_basis(m);
    std::vector<IntMatrix> reps;
    for (long a = 0; a < bound; ++a)
        for (long b = 0; b < bound; ++b) {
            IntMatrix v(2, 1);
            v(0, 0) = a;
            v(1, 0) = b;
            bool seen = false;
            for (const auto& r : reps)
                if (lattice_contains(basis, v - r)) {
                    seen = true;
                    break;
                }
            if (!seen) reps.push_back(v);
        }
    return reps.size();
}

}  // namespace

TEST_CASE("smith normal form examples") {
    SmithForm id = smith_normal_form(IntMatrix::identity(3));
    CHECK(id.d == IntMatrix::identity(3));

    IntMatrix m{{2, 0}, {0, 3}};
    SmithForm s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(s.d == IntMatrix{{1, 0}, {0, 6}});
    CHECK(is_unimodular(s.u));
    CHECK(is_unimodular(s.v));

    SmithForm z = smith_normal_form(IntMatrix(2, 3));
    CHECK(z.d.is_zero());
    CHECK(z.rank == 0);
}

TEST_CASE("smith normal form on random matrices") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 300; ++k) {
        IntMatrix m = random_int(rng, 1 + rng() % 4, 1 + rng() % 4, 6);
        SmithForm s = smith_normal_form(m);
        CHECK(s.u * m * s.v == s.d);
        CHECK(is_unimodular(s.u));
        CHECK(is_unimodular(s.v));
        CHECK(diagonal_chain(s.d));
        CHECK(s.rank == rank(to_q(m)));
    }
}

TEST_CASE("hermite form is canonical") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 200; ++k) {
        IntMatrix g = random_int(rng, 3, 1 + rng() % 4);
        IntMatrix b = lattice_basis(g);
        // same lattice generated by a unimodular recombination
        IntMatrix u = IntMatrix::identity(g.cols());
        if (g.cols() > 1) u(0, 1) = static_cast<long>(rng() % 5) - 2;
        CHECK(lattice_basis(g * u) == b);
        CHECK(lattice_contains(b, g));
    }
}

TEST_CASE("kernel, image, cokernel examples") {
    FgAbGroup z1 = FgAbGroup::free(1), z2 = FgAbGroup::free(2);

    LatticeMap two(z1, z1, IntMatrix{{2}});
    CHECK(lattice_kernel(two).group.is_trivial());
    LatticeCokernel c2 = lattice_cokernel(two);
    CHECK(c2.group == FgAbGroup(0, {Integer(2)}));

    LatticeMap pr(z2, z1, IntMatrix{{1, 0}});
    LatticeKernel k = lattice_kernel(pr);
    CHECK(k.group == z1);
    CHECK(k.embedding.matrix() == IntMatrix{{0}, {1}});
    CHECK(lattice_cokernel(pr).group.is_trivial());

    IntMatrix m{{2, 1}, {0, 2}};
    LatticeCokernel c = lattice_cokernel(LatticeMap(z2, z2, m));
    CHECK(c.group == FgAbGroup(0, {Integer(4)}));
    CHECK(brute_force_cokernel_order(m, 4) == 4);
}

TEST_CASE("saturation") {
    FgAbGroup z1 = FgAbGroup::free(1), z2 = FgAbGroup::free(2);
    CHECK(saturate(LatticeMap(z1, z2, IntMatrix{{2}, {0}})).matrix() == IntMatrix{{1}, {0}});
    CHECK(saturate(LatticeMap(z1, z2, IntMatrix{{1}, {1}})).matrix() == IntMatrix{{1}, {1}});
    LatticeMap s = saturate(LatticeMap(z1, z2, IntMatrix{{2}, {4}}));
    CHECK(s.matrix() == IntMatrix{{1}, {2}});
    CHECK(lattice_cokernel(s).group.is_free());
    CHECK(saturate(s) == s);
    CHECK_THROWS_AS(saturate(LatticeMap(z2, z1, IntMatrix{{1, 1}})), Error);
}

TEST_CASE("rank identities, composites and factorization on random maps") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 200; ++t) {
        std::size_t a = 1 + rng() % 4, b = 1 + rng() % 4;
        FgAbGroup ga = FgAbGroup::free(a), gb = FgAbGroup::free(b);
        LatticeMap f(ga, gb, random_int(rng, b, a));
        LatticeKernel k = lattice_kernel(f);
        LatticeImage im = lattice_image(f);
        LatticeCokernel c = lattice_cokernel(f);
        CHECK(k.group.is_free());
        CHECK(a == k.group.rank() + im.group.rank());
        CHECK(c.group.rank() == b - im.group.rank());
        CHECK(compose(f, k.embedding).matrix().is_zero());
        CHECK(compose(c.projection, f).matrix().is_zero());
        CHECK(compose(im.embedding, im.corestriction) == f);
        CHECK(lattice_exact_at(k.embedding, f));
        CHECK(lattice_exact_at(f, c.projection));
        CHECK(lattice_injective(k.embedding));
        CHECK(lattice_surjective(c.projection));
        // kernel embedding is saturated
        CHECK(lattice_cokernel(k.embedding).group.is_free());

        // g with g . ker = 0 factors through the corestriction onto the image
        IntMatrix h = random_int(rng, 2, b);
        LatticeMap g(ga, FgAbGroup::free(2), h * f.matrix());
        CHECK(compose(g, k.embedding).matrix().is_zero());
        auto x = integer_solve(im.corestriction.matrix().transpose(), g.matrix().transpose());
        REQUIRE(x.has_value());
        CHECK(x->transpose() * im.corestriction.matrix() == g.matrix());
    }
}

TEST_CASE("torsion groups and well-definedness") {
    FgAbGroup z2t(0, {Integer(2)});
    CHECK_THROWS_AS(FgAbGroup(0, {Integer(3), Integer(4)}), Error);
    CHECK_THROWS_AS(LatticeMap(z2t, FgAbGroup::free(1), IntMatrix{{1}}), Error);
    LatticeMap ok(FgAbGroup(0, {Integer(4)}), z2t, IntMatrix{{3}});
    CHECK(ok.matrix() == IntMatrix{{1}});
}
