#pragma once

#include <optional>
#include <vector>

#include "fhodge/fhs.hpp"

namespace fhodge {

/// Laumon 1-motive [F0 x F_et -> G] through its exponential presentation:
/// Lie F0 = K^s, F_et = Z^r, Lie G = K^n with V(G) = add ⊆ toradd =
/// Lie T + V(G), period lattice Λ (columns of lambda) and a logarithm ell of
/// u_et. u0 : Lie F0 -> Lie G.
struct Motive {
    std::size_t s = 0;
    std::size_t r = 0;
    std::size_t n = 0;
    Subspace add;
    Subspace toradd;
    MatrixK lambda;  // n x k
    MatrixK ell;     // n x r
    MatrixK u0;      // n x s
    std::optional<IntMatrix> polarization;

    std::size_t lattice_rank() const { return lambda.cols(); }

    friend bool operator==(const Motive& a, const Motive& b) {
        return a.s == b.s && a.r == b.r && a.n == b.n && a.add == b.add && a.toradd == b.toradd &&
               a.lambda == b.lambda && a.ell == b.ell && a.u0 == b.u0 && a.polarization == b.polarization;
    }
};

struct MotiveRanks {
    std::size_t s, r, n, add, t, g, k;
};

std::vector<Violation> motive_violations(const Motive& m);
const Motive& validate_motive(const Motive& m);
/// Dimensions of the pieces; assumes m is valid.
MotiveRanks motive_ranks(const Motive& m);

Motive zero_motive();

struct MotiveMorphism {
    Motive source;
    Motive target;
    MatrixK f0;    // s' x s
    IntMatrix fet; // r' x r
    MatrixK g;     // n' x n

    friend bool operator==(const MotiveMorphism& a, const MotiveMorphism& b) {
        return a.source == b.source && a.target == b.target && a.f0 == b.f0 && a.fet == b.fet && a.g == b.g;
    }
};

/// Integer witnesses: g Λ = Λ' lattice_map and g ell - ell' fet = Λ' shift.
struct MotiveWitness {
    IntMatrix lattice_map;  // k' x k
    IntMatrix shift;        // k' x r
};

std::vector<Violation> motive_morphism_violations(const MotiveMorphism& f);
const MotiveMorphism& validate_motive_morphism(const MotiveMorphism& f);
MotiveWitness motive_witness(const MotiveMorphism& f);

MotiveMorphism identity(const Motive& m);
MotiveMorphism zero_morphism(const Motive& a, const Motive& b);
MotiveMorphism compose(const MotiveMorphism& g, const MotiveMorphism& f);
MotiveMorphism inverse(const MotiveMorphism& f);

struct MotiveIso {
    MotiveMorphism forward;
    MotiveMorphism backward;
    std::vector<Check> transcript;
    bool verified() const;
};

MotiveIso make_iso(MotiveMorphism forward, MotiveMorphism backward);

bool is_etale(const Motive& m);
bool is_connected(const Motive& m);
bool is_special(const Motive& m);

/// [F_et -> G_x]: drop F0 and divide Lie G by V(G).
Motive etale_motive(const Motive& m);
MotiveMorphism etale_motive(const MotiveMorphism& f);
/// M0 = [F0 -> V(G)] of a special motive with its inclusion.
MotiveMorphism connected_part_inclusion(const Motive& m);
Motive connected_part(const Motive& m);
/// M / V(G) = [F0 x F_et -> G_x].
Motive quotient_by_additive(const Motive& m);
/// F0[1] = [F0 -> 0].
Motive formal_shift(std::size_t s);
/// [K^s -> K^n] given by u0.
Motive connected_motive(const MatrixK& u0);

/// 0 -> M0 -> M -> M_et -> 0, M special.
std::vector<MotiveMorphism> seq6(const Motive& m);
/// 0 -> M_et -> M/V(G) -> F0[1] -> 0.
std::vector<MotiveMorphism> seq7(const Motive& m);

/// ell -> ell + Λ p, with the identity-component isomorphism.
Motive shift_log(const Motive& m, const IntMatrix& p);
MotiveIso shift_iso(const Motive& m, const IntMatrix& p);

/// M_et^♮ of an etale motive: Lie G = H_K, Λ = W-1 lattice, V(G) = F0.
Motive universal_vector_extension(const Motive& met);

/// arrow(dual(T(M))).
Motive cartier_dual(const Motive& m);
/// M -> dual(dual(M)).
MotiveIso cartier_double_dual_iso(const Motive& m);

}  // namespace fhodge
