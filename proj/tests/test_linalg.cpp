#include <random>

#include "doctest.h"
#include "fhodge/linalg.hpp"
#include "fhodge/subspace.hpp"

using namespace fhodge;

namespace {

Scalar random_scalar(std::mt19937_64& rng) {
    auto small = [&] { return static_cast<long>(rng() % 9) - 4; };
    long d1 = 1 + static_cast<long>(rng() % 3), d2 = 1 + static_cast<long>(rng() % 3);
    return Scalar(Rational(small(), d1), Rational(small(), d2));
}

MatrixK random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    MatrixK m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = (rng() % 3 == 0) ? Scalar(0) : random_scalar(rng);
    return m;
}

}  // namespace

TEST_CASE("scalar arithmetic and printing") {
    Scalar a(Rational(1, 2), Rational(-3, 4));
    CHECK(a.str() == "1/2-3/4*i");
    CHECK(Scalar::parse("1/2-3/4*i") == a);
    CHECK(Scalar::parse("i") == Scalar::i());
    CHECK(Scalar::parse("-i") == -Scalar::i());
    CHECK(Scalar::parse("5") == Scalar(5));
    CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
    CHECK(a * a.inverse() == Scalar(1));
    CHECK_THROWS_AS(Scalar::parse("1/0"), Error);
    CHECK_THROWS_AS(Scalar::parse("abc"), Error);
}

TEST_CASE("conjugation is an involutive field automorphism") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 1000; ++k) {
        Scalar a = random_scalar(rng), b = random_scalar(rng);
        CHECK(a.conj().conj() == a);
        CHECK((a + b).conj() == a.conj() + b.conj());
        CHECK((a * b).conj() == a.conj() * b.conj());
    }
    CHECK(Scalar(Rational(3, 5)).conj() == Scalar(Rational(3, 5)));
}

TEST_CASE("kernel examples") {
    CHECK(kernel(MatrixK::identity(2)).is_zero());
    CHECK(kernel(MatrixK(2, 2)).dim() == 2);
    MatrixK m{{Scalar(1), Scalar::i()}};
    Subspace k = kernel(m);
    REQUIRE(k.dim() == 1);
    CHECK((m * k.basis()).is_zero());
    CHECK(k == Subspace::span(MatrixK{{-Scalar::i()}, {Scalar(1)}}));
}

TEST_CASE("subspace operations") {
    Subspace e1 = Subspace::coordinate(2, {0}), e2 = Subspace::coordinate(2, {1});
    CHECK(intersect(e1, e2).is_zero());
    CHECK(sum(e1, Subspace::span(MatrixK{{Scalar(1)}, {Scalar(1)}})).is_full());

    Subspace a = Subspace::span(MatrixK{{Scalar(1)}, {Scalar::i()}});
    Subspace c = complement(a);
    CHECK(c == e2);
    CHECK(sum(a, c).is_full());
    CHECK(intersect(a, c).is_zero());

    CHECK_THROWS_AS(sum(e1, Subspace::full(3)), Error);
    CHECK_THROWS_AS(complement_within(e1, e2), Error);
}

TEST_CASE("solve") {
    MatrixK y = MatrixK::column_vector({Scalar(2), Scalar::i()});
    CHECK(*solve(MatrixK::identity(2), y) == y);
    CHECK(!solve(MatrixK(2, 2), y).has_value());
    MatrixK m{{Scalar(1), Scalar(1)}};
    auto x = solve(m, MatrixK::column_vector({Scalar(3)}));
    REQUIRE(x.has_value());
    CHECK(m * *x == MatrixK::column_vector({Scalar(3)}));
    CHECK(*x == MatrixK::column_vector({Scalar(3), Scalar(0)}));
}

TEST_CASE("rank-nullity, complements and determinism on random matrices") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        MatrixK m = random_matrix(rng, r, c);
        Subspace ker = kernel(m);
        CHECK(ker.dim() + rank(m) == c);
        CHECK((m * ker.basis()).is_zero());
        CHECK(kernel(m) == ker);

        Subspace s = Subspace::span(random_matrix(rng, c, 1 + rng() % 3));
        Subspace comp = complement(s);
        CHECK(sum(s, comp).is_full());
        CHECK(intersect(s, comp).is_zero());
        Subspace rev = complement(s, PivotOrder::Reverse);
        CHECK(sum(s, rev).is_full());
        CHECK(intersect(s, rev).is_zero());

        QuotientMap q = quotient_map(s);
        CHECK((q.project * s.basis()).is_zero());
        CHECK(q.project * q.section == MatrixK::identity(q.dim()));
    }
}

TEST_CASE("preimage and annihilator") {
    MatrixK f{{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(0)}};
    Subspace pre = preimage(f, Subspace::zero(2));
    CHECK(pre == Subspace::coordinate(2, {1}));
    Subspace a = Subspace::span(MatrixK{{Scalar(1)}, {Scalar::i()}});
    Subspace ann = annihilator(a);
    CHECK(ann.dim() == 1);
    CHECK((ann.basis().transpose() * a.basis()).is_zero());
}
