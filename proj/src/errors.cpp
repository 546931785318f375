#include "mwbound/errors.hpp"

namespace mwbound {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::NotSymmetric: return "NotSymmetric";
        case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::NotIsometry: return "NotIsometry";
        case Errc::NotUnimodular: return "NotUnimodular";
        case Errc::RankNotTwo: return "RankNotTwo";
        case Errc::NoConvergence: return "NoConvergence";
        case Errc::NotSelfAdjoint: return "NotSelfAdjoint";
        case Errc::SpectrumOutOfRange: return "SpectrumOutOfRange";
        case Errc::BadMeasure: return "BadMeasure";
        case Errc::UnknownLabel: return "UnknownLabel";
        case Errc::SupportIncludesIdentity: return "SupportIncludesIdentity";
        case Errc::NoNonIdentityAction: return "NoNonIdentityAction";
        case Errc::NotReduced: return "NotReduced";
        case Errc::InvalidComponent: return "InvalidComponent";
        case Errc::MxMismatch: return "MxMismatch";
        case Errc::EqualVectors: return "EqualVectors";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::GroupNotClosed: return "GroupNotClosed";
        case Errc::ParseError: return "ParseError";
        case Errc::SchemaError: return "SchemaError";
        case Errc::DimensionError: return "DimensionError";
        case Errc::IoError: return "IoError";
    }
    return "UnknownError";
}

} // namespace mwbound
