#include "polylab/error.hpp"

namespace polylab {

const char* to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::Domain: return "Domain";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::DecayMismatch: return "DecayMismatch";
    case ErrorKind::NonConvex: return "NonConvex";
    case ErrorKind::ZeroSpeed: return "ZeroSpeed";
    case ErrorKind::BadNormalization: return "BadNormalization";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::CornerExclusion: return "CornerExclusion";
    case ErrorKind::MissingDerivatives: return "MissingDerivatives";
    case ErrorKind::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::OutsideValidity: return "OutsideValidity";
    case ErrorKind::TooCloseToSource: return "TooCloseToSource";
    case ErrorKind::GrowthMismatch: return "GrowthMismatch";
    case ErrorKind::CornerProximity: return "CornerProximity";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::NonPositiveField: return "NonPositiveField";
    case ErrorKind::Parse: return "Parse";
    }
    return "Unknown";
}

bool is_input_error(ErrorKind k)
{
    switch (k) {
    case ErrorKind::NonConvex:
    case ErrorKind::ZeroSpeed:
    case ErrorKind::BadNormalization:
    case ErrorKind::ParamOutOfRange:
    case ErrorKind::BadParams:
    case ErrorKind::Parse:
    case ErrorKind::Domain:
        return true;
    default:
        return false;
    }
}

}  // namespace polylab
