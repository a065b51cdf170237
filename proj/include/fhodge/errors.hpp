#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fhodge {

enum class Errc {
    // plumbing
    Malformed,
    DimensionMismatch,
    DivisionByZero,
    AmbientMismatch,
    NotContained,
    NotInjective,
    NotWellDefined,
    InternalError,
    // mixed Hodge structures
    WeightChainBroken,
    HodgeAxiomF0MeetsW2,
    HodgeAxiomF0PlusW1,
    HodgeAxiomGrNotSplit,
    NotRationalSubspace,
    TorsionInput,
    NotAlternating,
    NotMhsMorphism,
    InternalStrictnessViolation,
    // formal Hodge structures
    EtalePartInvalid,
    BadFiltration,
    SigmaNotIso,
    SigmaW2Mismatch,
    Square1Broken,
    DerivedF0NotInV0,
    Square2Broken,
    Square3Broken,
    NotFiltered,
    EtaleComponentNotMHS,
    NotComposable,
    NotComposedToZero,
    NotSpecial,
    NotConnected,
    NotEtale,
    NotFree,
    // motives
    LatticeMeetsAdditive,
    TorusRankMismatch,
    AbelianPartNotFull,
    BadSubspaceChain,
    LatticeNotPreserved,
    LogLiftMismatch,
    PolarizationInvalid,
};

std::string_view errc_name(Errc code);

/// Base exception of the library. `code` identifies the violated contract.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

struct Violation {
    Errc code;
    std::string detail;
};

/// Thrown by the validators; carries every violated axiom, not just the first.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const { return violations_; }
    bool has(Errc code) const;

private:
    std::vector<Violation> violations_;
};

}  // namespace fhodge
