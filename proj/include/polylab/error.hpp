#pragma once

#include <stdexcept>
#include <string>

namespace polylab {

enum class ErrorKind {
    Domain,
    Overflow,
    NonConvergence,
    DecayMismatch,
    NonConvex,
    ZeroSpeed,
    BadNormalization,
    SingularJacobian,
    CornerExclusion,
    MissingDerivatives,
    ParamOutOfRange,
    VerificationFailed,
    OutsideValidity,
    TooCloseToSource,
    GrowthMismatch,
    CornerProximity,
    BadParams,
    NonPositiveField,
    Parse,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, int index = -1)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what),
          kind_(kind), index_(index) {}

    ErrorKind kind() const { return kind_; }
    // offending edge/vertex/sample index, -1 when not applicable
    int index() const { return index_; }

private:
    ErrorKind kind_;
    int index_;
};

// Errors that describe bad user input rather than a failed computation.
bool is_input_error(ErrorKind k);

}  // namespace polylab
