#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fhodge/realize.hpp"

namespace fhodge {

enum class Profile {
    Etale,
    Connected,
    Special,
    General,
    MotiveEtale,
    MotiveConnected,
    MotiveSpecial,
    MotiveGeneral,
    MhsPure,
    MhsGeneral,
};

enum class ProfileKind { Fhs, Motive, Mhs };

std::optional<Profile> parse_profile(const std::string& name);
std::string profile_name(Profile p);
ProfileKind profile_kind(Profile p);
const std::vector<Profile>& all_profiles();

/// Deterministic source: mt19937_64 with modulo reduction, so the stream is
/// identical on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    Rng(const std::string& stream, std::uint64_t seed);

    std::uint64_t next();
    /// Uniform-ish in [lo, hi].
    long range(long lo, long hi);
    bool coin();
    /// Gaussian rational with numerators in [-bound, bound] and denominators 1 or 2.
    Scalar scalar(long bound = 3);
    MatrixK matrix(std::size_t r, std::size_t c, long bound = 3);
    IntMatrix int_matrix(std::size_t r, std::size_t c, long bound = 2);
    IntMatrix unimodular(std::size_t n);
    MatrixK invertible(std::size_t n);

private:
    std::mt19937_64 engine_;
};

/// The polarization witness of a motive built from elliptic blocks, written on
/// the gr-1 basis of graded_lattice(T_Hodge(M_et)); natural holds the abelian
/// lattice vectors in H_Z coordinates and q the form on them.
IntMatrix transport_polarization(const MHS1& h, const IntMatrix& natural, const IntMatrix& q);

FHS1Object gen_fhs(Profile p, std::uint64_t seed);
Motive gen_motive(Profile p, std::uint64_t seed);
MHS1 gen_mhs(Profile p, std::uint64_t seed);

/// A morphism with small random coefficients on a basis of hom(X, Y); none when hom = 0.
std::optional<FHS1Morphism> gen_morphism(const FHS1Object& x, const FHS1Object& y, std::uint64_t seed);
/// Motive morphisms, obtained from hom(T(M), T(N)) through the round trips.
std::optional<MotiveMorphism> gen_motive_morphism(const Motive& m, const Motive& n, std::uint64_t seed);

/// Conjugates x by a unimodular change of H_Z and invertible changes of Lie H0 and V.
FHS1Object scramble(const FHS1Object& x, Rng& rng);

}  // namespace fhodge
