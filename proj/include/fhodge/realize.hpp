#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fhodge/motive.hpp"

namespace fhodge {

/// Hodge realization of an etale motive on H_Z = Λ ⊕ F_et.
MHS1 t_hodge(const Motive& met);
/// Formal Hodge realization: V = Lie G, V0 = V(G), V1 = toradd, vz = [Λ | ell].
FHS1Object t_formal(const Motive& m);
FHS1Morphism t_formal(const MotiveMorphism& f);

/// [H0 x gr0(H_Z) -> V / W-1(H_Z)] with the SNF-completed section of gr0.
Motive arrow(const FHS1Object& x);
MotiveMorphism arrow(const FHS1Morphism& f);
/// Basis of H_Z adapted to arrow: saturated W-1 basis followed by its completion.
IntMatrix arrow_basis(const FHS1Object& x);

/// X -> T(arrow(X)).
FHSIso roundtrip_fm(const FHS1Object& x);
/// M -> arrow(T(M)).
MotiveIso roundtrip_mf(const Motive& m);
/// c(T_Hodge(M)) -> T(M) for etale M.
FHSIso etale_comparison(const Motive& met);

/// Outcome of comparing two structures: a certificate of non-isomorphism, a
/// canonical isomorphism (identity, double dual, or round trip), or neither.
struct IsoComparison {
    std::optional<std::string> certificate;
    std::optional<FHSIso> iso;
};

IsoComparison compare_iso(const FHS1Object& x, const FHS1Object& y);

/// The naturality square of the round trip commutes for f.
bool naturality_check(const FHS1Morphism& f);
bool naturality_check(const MotiveMorphism& f);

/// Exactness of a motive sequence, decided after T.
ExactnessReport check_exact(const std::vector<MotiveMorphism>& seq);

struct PeriodsReport {
    Motive natural;              // M^♮
    std::vector<Check> checks;
    std::vector<FHS1Morphism> extension;  // 0 -> F0 -> T(M^♮) -> c(T_Hodge(M)) -> 0
    bool ok() const;
};

PeriodsReport periods_square(const Motive& met);

}  // namespace fhodge
