#include "fhodge/errors.hpp"

#include <algorithm>

namespace fhodge {

std::string_view errc_name(Errc code) {
    switch (code) {
        case Errc::Malformed: return "Malformed";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::AmbientMismatch: return "AmbientMismatch";
        case Errc::NotContained: return "NotContained";
        case Errc::NotInjective: return "NotInjective";
        case Errc::NotWellDefined: return "NotWellDefined";
        case Errc::InternalError: return "InternalError";
        case Errc::WeightChainBroken: return "WeightChainBroken";
        case Errc::HodgeAxiomF0MeetsW2: return "HodgeAxiom(F0∩W-2≠0)";
        case Errc::HodgeAxiomF0PlusW1: return "HodgeAxiom(F0+W-1≠H)";
        case Errc::HodgeAxiomGrNotSplit: return "HodgeAxiom(gr-1 not split)";
        case Errc::NotRationalSubspace: return "NotRationalSubspace";
        case Errc::TorsionInput: return "TorsionInput";
        case Errc::NotAlternating: return "NotAlternating";
        case Errc::NotMhsMorphism: return "NotMhsMorphism";
        case Errc::InternalStrictnessViolation: return "InternalStrictnessViolation";
        case Errc::EtalePartInvalid: return "EtalePartInvalid";
        case Errc::BadFiltration: return "BadFiltration";
        case Errc::SigmaNotIso: return "SigmaNotIso";
        case Errc::SigmaW2Mismatch: return "SigmaW2Mismatch";
        case Errc::Square1Broken: return "Square1Broken";
        case Errc::DerivedF0NotInV0: return "DerivedF0NotInV0";
        case Errc::Square2Broken: return "Square2Broken";
        case Errc::Square3Broken: return "Square3Broken";
        case Errc::NotFiltered: return "NotFiltered";
        case Errc::EtaleComponentNotMHS: return "EtaleComponentNotMHS";
        case Errc::NotComposable: return "NotComposable";
        case Errc::NotComposedToZero: return "NotComposedToZero";
        case Errc::NotSpecial: return "NotSpecial";
        case Errc::NotConnected: return "NotConnected";
        case Errc::NotEtale: return "NotEtale";
        case Errc::NotFree: return "NotFree";
        case Errc::LatticeMeetsAdditive: return "LatticeMeetsAdditive";
        case Errc::TorusRankMismatch: return "TorusRankMismatch";
        case Errc::AbelianPartNotFull: return "AbelianPartNotFull";
        case Errc::BadSubspaceChain: return "BadSubspaceChain";
        case Errc::LatticeNotPreserved: return "LatticeNotPreserved";
        case Errc::LogLiftMismatch: return "LogLiftMismatch";
        case Errc::PolarizationInvalid: return "PolarizationInvalid";
    }
    return "Unknown";
}

namespace {

std::string summarize(const std::vector<Violation>& vs) {
    std::string out = "validation failed:";
    for (const auto& v : vs) {
        out += " [";
        out += errc_name(v.code);
        if (!v.detail.empty()) {
            out += ": ";
            out += v.detail;
        }
        out += "]";
    }
    return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(violations.empty() ? Errc::InternalError : violations.front().code, summarize(violations)),
      violations_(std::move(violations)) {}

bool ValidationError::has(Errc code) const {
    return std::any_of(violations_.begin(), violations_.end(), [&](const Violation& v) { return v.code == code; });
}

}  // namespace fhodge
